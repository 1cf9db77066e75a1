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


#include "uavicic/scenario.hpp"

#include <algorithm>
#include <string>

#include <json.hpp>

#include "uavicic/channel.hpp"
#include "uavicic/error.hpp"

namespace uavicic
{

Scenario::Scenario(HexGrid grid, std::uint32_t n_rbs, std::uint32_t q, std::vector<TerrestrialUe> ues,
                   Position3D uav_pos, double beta0_db, double alpha_los)
    : grid_(std::move(grid)), n_rbs_(n_rbs), q_(q), ues_(std::move(ues)), uav_pos_(uav_pos),
      occupancy_(n_rbs), ue_lookup_(grid_.cell_count() * n_rbs, -1)
{
    if (uav_pos_.z < 0.0)
        throw Error(ErrorCode::invalid_parameter, "UAV altitude must be non-negative");
    for (std::size_t k = 0; k < ues_.size(); ++k)
    {
        const TerrestrialUe &ue = ues_[k];
        if (!grid_.contains(ue.cell) || ue.rb >= n_rbs_)
            throw Error(ErrorCode::invalid_parameter, "UE assigned outside the grid or RB range");
        std::ptrdiff_t &slot = ue_lookup_[(ue.cell.value - 1) * n_rbs_ + ue.rb];
        if (slot >= 0)
            throw Error(ErrorCode::invalid_parameter, "two UEs share cell " + std::to_string(ue.cell.value) +
                                                          " on RB " + std::to_string(ue.rb));
        slot = static_cast<std::ptrdiff_t>(k);
        occupancy_[ue.rb].push_back(ue.cell);
    }
    for (auto &cells : occupancy_)
        std::sort(cells.begin(), cells.end());
    serving_bs_ = associate(grid_, uav_pos_, beta0_db, alpha_los);
}

std::ptrdiff_t Scenario::ue_at(CellId cell, RbIndex rb) const
{
    if (!grid_.contains(cell) || rb >= n_rbs_)
        return -1;
    return ue_lookup_[(cell.value - 1) * n_rbs_ + rb];
}

CellId associate(const HexGrid &grid, const Position3D &pos, double beta0_db, double alpha_los)
{
    CellId best{1};
    double best_gain = -1.0;
    for (std::uint32_t id = 1; id <= grid.cell_count(); ++id)
    {
        const double gain = pathloss_gain(distance(grid.bs_position(CellId{id}), pos), beta0_db, alpha_los);
        if (gain > best_gain)
        {
            best_gain = gain;
            best = CellId{id};
        }
    }
    return best;
}

Scenario generate_scenario(const HexGrid &grid, const ScenarioOptions &options, double beta0_db, double alpha_los,
                           RandomStream &rng)
{
    if (options.n_rbs < 1)
        throw Error(ErrorCode::invalid_parameter, "n_rbs must be at least 1");
    if (!(options.uav_altitude_m >= 0.0))
        throw Error(ErrorCode::invalid_parameter, "UAV altitude must be non-negative");

    const std::uint32_t cells = static_cast<std::uint32_t>(grid.cell_count());
    const NeighborTable neighbors(grid, options.q);
    std::vector<std::vector<CellId>> occupancy(options.n_rbs);
    std::vector<bool> used(static_cast<std::size_t>(cells) * options.n_rbs, false);
    std::uniform_int_distribution<std::uint32_t> pick_cell(1, cells);
    std::uniform_int_distribution<std::uint32_t> pick_rb(0, options.n_rbs - 1);

    std::vector<TerrestrialUe> ues;
    ues.reserve(options.n_ues);
    for (std::uint32_t u = 0; u < options.n_ues; ++u)
    {
        bool placed = false;
        for (std::uint32_t attempt = 0; attempt < options.retry_budget && !placed; ++attempt)
        {
            const CellId cell{pick_cell(rng)};
            const RbIndex rb = pick_rb(rng);
            if (used[(cell.value - 1) * options.n_rbs + rb])
                continue;
            if (options.enforce_ue_icic)
            {
                const auto &occ = occupancy[rb];
                if (std::any_of(occ.begin(), occ.end(), [&](CellId other) { return neighbors.within(other, cell); }))
                    continue;
            }
            used[(cell.value - 1) * options.n_rbs + rb] = true;
            occupancy[rb].push_back(cell);
            ues.push_back({cell, rb, Position3D{}});
            placed = true;
        }
        if (!placed)
            throw Error(ErrorCode::infeasible_occupancy,
                        "could not place UE " + std::to_string(u + 1) + " of " + std::to_string(options.n_ues) +
                            " under the " + std::to_string(options.q) + "-tier reuse constraint");
    }
    for (TerrestrialUe &ue : ues)
        ue.pos = sample_uniform_in_cell(grid, ue.cell, rng);

    Position3D uav = sample_uniform_in_cell(grid, CellId{1}, rng);
    uav.z = options.uav_altitude_m;
    return Scenario(grid, options.n_rbs, options.q, std::move(ues), uav, beta0_db, alpha_los);
}

std::vector<RbIndex> available_rbs(const Scenario &scenario, CellId j, std::uint32_t q)
{
    const std::vector<CellId> local = neighbor_set(scenario.grid(), j, q);
    std::vector<RbIndex> out;
    for (RbIndex n = 0; n < scenario.n_rbs(); ++n)
    {
        const auto &occ = scenario.occupants(n);
        const bool blocked = std::any_of(occ.begin(), occ.end(), [&](CellId c) {
            return std::binary_search(local.begin(), local.end(), c);
        });
        if (!blocked)
            out.push_back(n);
    }
    return out;
}

std::vector<RbIndex> available_rbs(const Scenario &scenario, CellId j)
{
    return available_rbs(scenario, j, scenario.q());
}

std::string scenario_to_json(const Scenario &scenario)
{
    using nlohmann::json;
    const HexGrid &grid = scenario.grid();
    json cells = json::array();
    for (std::uint32_t id = 1; id <= grid.cell_count(); ++id)
    {
        const Position2D &c = grid.center(CellId{id});
        cells.push_back({{"id", id}, {"tier", grid.tier_of(CellId{id})}, {"x", c.x}, {"y", c.y}});
    }
    json ues = json::array();
    for (const TerrestrialUe &ue : scenario.ues())
        ues.push_back({{"cell", ue.cell.value}, {"rb", ue.rb}, {"x", ue.pos.x}, {"y", ue.pos.y}, {"z", ue.pos.z}});
    json occupancy = json::array();
    for (RbIndex n = 0; n < scenario.n_rbs(); ++n)
    {
        json ids = json::array();
        for (CellId c : scenario.occupants(n))
            ids.push_back(c.value);
        occupancy.push_back({{"rb", n}, {"cells", ids}});
    }
    const Position3D &uav = scenario.uav_pos();
    json doc = {
        {"seed", scenario.seed},
        {"index", scenario.index},
        {"grid",
         {{"tiers", grid.tiers()},
          {"cell_radius_m", grid.cell_radius_m()},
          {"bs_height_m", grid.bs_height_m()},
          {"cells", cells}}},
        {"n_rbs", scenario.n_rbs()},
        {"q", scenario.q()},
        {"ues", ues},
        {"occupancy", occupancy},
        {"uav", {{"x", uav.x}, {"y", uav.y}, {"z", uav.z}}},
        {"serving_bs", scenario.serving_bs().value},
    };
    return doc.dump(2);
}

} // namespace uavicic
