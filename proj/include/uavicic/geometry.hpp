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


#ifndef UAVICIC_GEOMETRY_HPP
#define UAVICIC_GEOMETRY_HPP

#include <cstddef>
#include <cstdint>
#include <vector>

#include "uavicic/random.hpp"

namespace uavicic
{

// Cell identifier. The centre cell is 1; ids grow tier by tier.
struct CellId
{
    std::uint32_t value = 0;
    constexpr auto operator<=>(const CellId &) const = default;
};

struct Position2D
{
    double x = 0.0;
    double y = 0.0;
};

struct Position3D
{
    double x = 0.0;
    double y = 0.0;
    double z = 0.0;
};

double horizontal_distance(const Position3D &a, const Position3D &b);
double distance(const Position3D &a, const Position3D &b);

/**
 * Hexagonal multi-tier cell layout.
 *
 * `cell_radius_m` is the circumradius, so adjacent centres are sqrt(3) * R
 * apart. Cells are enumerated tier by tier, each tier counterclockwise
 * starting on the +x axis.
 */
class HexGrid
{
  public:
    HexGrid(std::uint32_t tiers, double cell_radius_m, double bs_height_m);

    std::uint32_t tiers() const { return tiers_; }
    double cell_radius_m() const { return cell_radius_m_; }
    double inradius_m() const;
    double inter_site_distance_m() const;
    double bs_height_m() const { return bs_height_m_; }
    std::size_t cell_count() const { return centers_.size(); }

    bool contains(CellId j) const { return j.value >= 1 && j.value <= centers_.size(); }
    const Position2D &center(CellId j) const;
    Position3D bs_position(CellId j) const;
    const std::vector<Position2D> &centers() const { return centers_; }

    // Tier (hex ring) a cell belongs to; 0 for the centre cell.
    std::uint32_t tier_of(CellId j) const;

    // Whether a horizontal point lies in the closed hexagon of cell j.
    bool in_cell(CellId j, double x, double y) const;

  private:
    std::uint32_t tiers_;
    double cell_radius_m_;
    double bs_height_m_;
    std::vector<Position2D> centers_;
    std::vector<std::uint32_t> tier_;
};

HexGrid build_grid(std::uint32_t tiers, double cell_radius_m, double bs_height_m);

// N_j(q): every cell whose centre lies within q inter-site distances of
// cell j's centre, j included. Sorted by id.
std::vector<CellId> neighbor_set(const HexGrid &grid, CellId j, std::uint32_t q);

// Dense J x J membership table for N_j(q), indexed by (id - 1).
class NeighborTable
{
  public:
    NeighborTable(const HexGrid &grid, std::uint32_t q);
    bool within(CellId i, CellId j) const { return table_[(i.value - 1) * n_ + (j.value - 1)]; }
    std::uint32_t q() const { return q_; }

  private:
    std::size_t n_;
    std::uint32_t q_;
    std::vector<bool> table_;
};

// Uniform over the closed hexagon of cell j, at ground level.
Position3D sample_uniform_in_cell(const HexGrid &grid, CellId j, RandomStream &rng);

struct RhoBound
{
    double rho = 0.0;
    double xi_m = 0.0;
};

/**
 * Worst-case lower bound on d/a, the ratio of UAV-BS distance to the
 * distance between the UAV and any ground UE served by that BS.
 *
 * A BS lies within `cell_radius_m` (horizontally) of each UE it serves. The
 * minimiser places the BS on the segment between the UE and the UAV's ground
 * projection; `xi_m` is the UE's horizontal distance from the UAV at the
 * minimum. Requires uav_height_m > bs_height_m >= 0.
 */
RhoBound worst_case_ratio(double uav_height_m, double bs_height_m, double cell_radius_m);

} // namespace uavicic

#endif
