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


#ifndef UAVICIC_SCENARIO_HPP
#define UAVICIC_SCENARIO_HPP

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "uavicic/geometry.hpp"
#include "uavicic/random.hpp"

namespace uavicic
{

// Resource blocks are numbered 0 .. N-1.
using RbIndex = std::uint32_t;

struct TerrestrialUe
{
    CellId cell;
    RbIndex rb = 0;
    Position3D pos;
};

struct ScenarioOptions
{
    std::uint32_t n_rbs = 30;
    std::uint32_t n_ues = 60;
    std::uint32_t q = 1;
    double uav_altitude_m = 200.0;
    // Terrestrial reuse obeys the same q-tier rule as the UAV's serving BS.
    bool enforce_ue_icic = true;
    std::uint32_t retry_budget = 10000;
};

/**
 * One network snapshot: terrestrial UE placement, per-RB occupancy J(n),
 * UAV position and the UAV's serving BS. Immutable once generated.
 */
class Scenario
{
  public:
    Scenario(HexGrid grid, std::uint32_t n_rbs, std::uint32_t q, std::vector<TerrestrialUe> ues, Position3D uav_pos,
             double beta0_db, double alpha_los);

    const HexGrid &grid() const { return grid_; }
    std::uint32_t n_rbs() const { return n_rbs_; }
    std::uint32_t q() const { return q_; }
    const std::vector<TerrestrialUe> &ues() const { return ues_; }
    const Position3D &uav_pos() const { return uav_pos_; }
    CellId serving_bs() const { return serving_bs_; }

    // J(n), sorted by cell id.
    const std::vector<CellId> &occupants(RbIndex rb) const { return occupancy_.at(rb); }
    const std::vector<std::vector<CellId>> &occupancy() const { return occupancy_; }

    // Index into ues() of the UE using (cell, rb), or -1.
    std::ptrdiff_t ue_at(CellId cell, RbIndex rb) const;

    // Seed recorded for snapshot dumps; informational only.
    std::uint64_t seed = 0;
    std::uint64_t index = 0;

  private:
    HexGrid grid_;
    std::uint32_t n_rbs_;
    std::uint32_t q_;
    std::vector<TerrestrialUe> ues_;
    Position3D uav_pos_;
    CellId serving_bs_;
    std::vector<std::vector<CellId>> occupancy_;
    std::vector<std::ptrdiff_t> ue_lookup_;
};

// BS with the largest LoS path-loss gain towards `pos`; ties go to the lowest id.
CellId associate(const HexGrid &grid, const Position3D &pos, double beta0_db, double alpha_los);

Scenario generate_scenario(const HexGrid &grid, const ScenarioOptions &options, double beta0_db, double alpha_los,
                           RandomStream &rng);

// Omega = { n : N_j(q) and J(n) are disjoint }, ascending.
std::vector<RbIndex> available_rbs(const Scenario &scenario, CellId j);
std::vector<RbIndex> available_rbs(const Scenario &scenario, CellId j, std::uint32_t q);

// JSON snapshot: cells, UEs, occupancy, UAV, serving BS, seed.
std::string scenario_to_json(const Scenario &scenario);

} // namespace uavicic

#endif
