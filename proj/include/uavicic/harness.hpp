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


#ifndef UAVICIC_HARNESS_HPP
#define UAVICIC_HARNESS_HPP

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "uavicic/channel.hpp"
#include "uavicic/metrics.hpp"
#include "uavicic/scenario.hpp"

namespace uavicic
{

enum class SweepKind
{
    p_dl_dbm,    // downlink schemes, swept BS peak power
    gamma_u_dbm, // uplink schemes, swept interference threshold
};

// Recognised scheme names: "conventional", "sensing", "sensing_csi"
// (sensing RB choice with perfect-CSI power, uplink only) and "optimal".
struct ExperimentConfig
{
    ChannelParams channel;
    std::uint32_t tiers = 3;
    double cell_radius_m = 800.0;
    double bs_height_m = 25.0;
    double uav_altitude_m = 200.0;
    std::uint32_t n_rbs = 30;
    std::uint32_t n_ues = 60;
    std::uint32_t q = 1;
    std::uint32_t n_d = 1;
    std::uint32_t n_u = 10;
    std::vector<double> p_dl_dbm;
    double p_ul_dbm = 10.0;
    std::vector<double> gamma_u_dbm;
    std::vector<std::uint32_t> m_d{5, 10, 15};
    std::vector<std::uint32_t> m_u{12, 20};
    std::uint32_t realizations = 1000;
    std::uint64_t master_seed = 1;
    ChannelMode mode = ChannelMode::faded;
    std::vector<std::string> schemes{"conventional", "sensing", "optimal"};
    SweepKind sweep = SweepKind::p_dl_dbm;
    bool enforce_ue_icic = true;
    double sensing_noise_db = 0.0;
    std::uint32_t workers = 1;

    ExperimentConfig();
    void validate() const;
};

ExperimentConfig preset(std::string_view name);

// Keys are the ExperimentConfig field names (channel fields flattened).
// Missing keys keep the value from `base`; unknown keys are rejected.
ExperimentConfig config_from_json(std::string_view text, const ExperimentConfig &base = ExperimentConfig{});
std::string config_to_json(const ExperimentConfig &config);

std::string_view sweep_name(SweepKind kind);
const std::vector<double> &sweep_values(const ExperimentConfig &config);

// Output series in emission order, e.g. "conventional", "sensing_m12",
// "sensing_m12_csi", "optimal".
std::vector<std::string> series_labels(const ExperimentConfig &config);

// Metrics of every series at every sweep point, all on one snapshot.
struct RealizationResult
{
    std::uint64_t index = 0;
    std::vector<std::vector<RunMetrics>> metrics; // [series][sweep point]
};

Scenario realization_scenario(const ExperimentConfig &config, std::uint64_t index);

// Scenario plus channel draws for one realization, exactly as the harness sees them.
struct Snapshot
{
    Scenario scenario;
    LinkGains gains;
};

Snapshot realization_snapshot(const ExperimentConfig &config, std::uint64_t index);
RealizationResult run_realization(const ExperimentConfig &config, std::uint64_t index);

struct AggregateRow
{
    std::string scheme;
    std::string sweep_name;
    double sweep_value = 0.0;
    double mean_rate_bps_hz = 0.0;
    double mean_iul_dbm = 0.0; // dBm of the mean linear I_UL; NaN for downlink rows
    double max_iul_dbm = 0.0;
    std::uint64_t n_realizations = 0;
    double stderr_rate = 0.0;
};

// Runs all realizations (across config.workers threads) and reduces them in
// realization order. The result does not depend on the worker count.
std::vector<AggregateRow> run_experiment(const ExperimentConfig &config);

// Reduction step on its own, for callers that keep per-realization results.
std::vector<AggregateRow> aggregate(const ExperimentConfig &config, const std::vector<RealizationResult> &results);

std::string format_csv(const std::vector<AggregateRow> &rows);
std::vector<AggregateRow> parse_csv(std::string_view text);
void emit_csv(const std::vector<AggregateRow> &rows, const std::string &path);

} // namespace uavicic

#endif
