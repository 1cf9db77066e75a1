// SPDX-License-Identifier: Apache-2.0
//
// uavicic: sensing-assisted interference coordination for cellular-connected UAVs
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------


#ifndef UAVICIC_METRICS_HPP
#define UAVICIC_METRICS_HPP

#include <vector>

#include "uavicic/allocation.hpp"
#include "uavicic/channel.hpp"
#include "uavicic/scenario.hpp"

namespace uavicic
{

struct RbMetrics
{
    RbIndex rb = 0;
    double rate_bps_hz = 0.0;
    // I_DL(n) for downlink entries; max_j p(n) G_j(n) for uplink entries.
    double interference_w = 0.0;
};

struct RunMetrics
{
    double r_dl_bps_hz = 0.0;
    double r_ul_bps_hz = 0.0;
    double i_ul_w = 0.0;
    std::vector<RbMetrics> per_rb;
};

// Sum over the allocation of log2(1 + P F_ju / (sigma^2 + I_DL)); I_DL is
// recomputed from the snapshot with every co-channel BS at interferer_power_w.
RunMetrics downlink_rate(const Allocation &alloc, const LinkGains &gains, double sigma2_w, const Scenario &scenario,
                         double interferer_power_w);

// Sum over the allocation of log2(1 + p G_ju / sigma^2). Also fills i_ul_w.
RunMetrics uplink_rate(const Allocation &alloc, const LinkGains &gains, double sigma2_w, const Scenario &scenario);

// max over assigned RBs n and j in J(n) of p(n) G_j(n); 0 when no assigned RB is occupied.
double uplink_worst_interference(const Allocation &alloc, const LinkGains &gains, const Scenario &scenario);

} // namespace uavicic

#endif
