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


#include "uavicic/metrics.hpp"

#include <algorithm>
#include <cmath>

#include "uavicic/error.hpp"

namespace uavicic
{

namespace
{

double rb_worst_interference(const Scenario &scenario, const LinkGains &gains, RbIndex rb, double power_w)
{
    double worst = 0.0;
    for (CellId j : scenario.occupants(rb))
        worst = std::max(worst, power_w * gains.g(j, rb));
    return worst;
}

} // namespace

RunMetrics downlink_rate(const Allocation &alloc, const LinkGains &gains, double sigma2_w, const Scenario &scenario,
                         double interferer_power_w)
{
    if (alloc.direction != Direction::downlink)
        throw Error(ErrorCode::invalid_parameter, "downlink_rate needs a downlink allocation");
    const CellId ju = scenario.serving_bs();
    RunMetrics m;
    for (std::size_t k = 0; k < alloc.rbs.size(); ++k)
    {
        const RbIndex n = alloc.rbs[k];
        const double interference = downlink_interference(scenario, gains, n, interferer_power_w);
        const double rate = std::log2(1.0 + alloc.power_w[k] * gains.f(ju, n) / (sigma2_w + interference));
        m.per_rb.push_back({n, rate, interference});
        m.r_dl_bps_hz += rate;
    }
    return m;
}

RunMetrics uplink_rate(const Allocation &alloc, const LinkGains &gains, double sigma2_w, const Scenario &scenario)
{
    if (alloc.direction != Direction::uplink)
        throw Error(ErrorCode::invalid_parameter, "uplink_rate needs an uplink allocation");
    const CellId ju = scenario.serving_bs();
    RunMetrics m;
    for (std::size_t k = 0; k < alloc.rbs.size(); ++k)
    {
        const RbIndex n = alloc.rbs[k];
        const double rate = std::log2(1.0 + alloc.power_w[k] * gains.g(ju, n) / sigma2_w);
        const double worst = rb_worst_interference(scenario, gains, n, alloc.power_w[k]);
        m.per_rb.push_back({n, rate, worst});
        m.r_ul_bps_hz += rate;
        m.i_ul_w = std::max(m.i_ul_w, worst);
    }
    return m;
}

double uplink_worst_interference(const Allocation &alloc, const LinkGains &gains, const Scenario &scenario)
{
    if (alloc.direction != Direction::uplink)
        throw Error(ErrorCode::invalid_parameter, "uplink_worst_interference needs an uplink allocation");
    double worst = 0.0;
    for (std::size_t k = 0; k < alloc.rbs.size(); ++k)
        worst = std::max(worst, rb_worst_interference(scenario, gains, alloc.rbs[k], alloc.power_w[k]));
    return worst;
}

} // namespace uavicic
