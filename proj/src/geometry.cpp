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


#include "uavicic/geometry.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "uavicic/error.hpp"

namespace uavicic
{

namespace
{

constexpr double kSqrt3 = std::numbers::sqrt3;

Position2D unit_direction(int k)
{
    const double a = std::numbers::pi / 3.0 * static_cast<double>(k % 6);
    return {std::cos(a), std::sin(a)};
}

} // namespace

double horizontal_distance(const Position3D &a, const Position3D &b)
{
    return std::hypot(a.x - b.x, a.y - b.y);
}

double distance(const Position3D &a, const Position3D &b)
{
    return std::sqrt((a.x - b.x) * (a.x - b.x) + (a.y - b.y) * (a.y - b.y) + (a.z - b.z) * (a.z - b.z));
}

HexGrid::HexGrid(std::uint32_t tiers, double cell_radius_m, double bs_height_m)
    : tiers_(tiers), cell_radius_m_(cell_radius_m), bs_height_m_(bs_height_m)
{
    if (!(cell_radius_m > 0.0) || !std::isfinite(cell_radius_m))
        throw Error(ErrorCode::invalid_parameter, "cell radius must be positive, got " + std::to_string(cell_radius_m));
    if (!(bs_height_m >= 0.0) || !std::isfinite(bs_height_m))
        throw Error(ErrorCode::invalid_parameter, "BS height must be non-negative");

    const double isd = inter_site_distance_m();
    centers_.push_back({0.0, 0.0});
    tier_.push_back(0);
    // Ring t: walk the six sides starting at the corner on direction k and
    // stepping along direction k + 2.
    for (std::uint32_t t = 1; t <= tiers; ++t)
    {
        for (int k = 0; k < 6; ++k)
        {
            const Position2D corner = unit_direction(k);
            const Position2D step = unit_direction(k + 2);
            for (std::uint32_t s = 0; s < t; ++s)
            {
                centers_.push_back({isd * (t * corner.x + s * step.x), isd * (t * corner.y + s * step.y)});
                tier_.push_back(t);
            }
        }
    }
}

double HexGrid::inradius_m() const { return 0.5 * kSqrt3 * cell_radius_m_; }

double HexGrid::inter_site_distance_m() const { return kSqrt3 * cell_radius_m_; }

const Position2D &HexGrid::center(CellId j) const
{
    if (!contains(j))
        throw Error(ErrorCode::invalid_parameter, "invalid cell id " + std::to_string(j.value));
    return centers_[j.value - 1];
}

Position3D HexGrid::bs_position(CellId j) const
{
    const Position2D &c = center(j);
    return {c.x, c.y, bs_height_m_};
}

std::uint32_t HexGrid::tier_of(CellId j) const
{
    center(j);
    return tier_[j.value - 1];
}

bool HexGrid::in_cell(CellId j, double x, double y) const
{
    const Position2D &c = center(j);
    const double dx = x - c.x;
    const double dy = y - c.y;
    // Edges are perpendicular to the three neighbour axes at the inradius.
    const double h = inradius_m() * (1.0 + 1e-12);
    for (int k = 0; k < 3; ++k)
    {
        const Position2D e = unit_direction(k);
        if (std::abs(dx * e.x + dy * e.y) > h)
            return false;
    }
    return true;
}

HexGrid build_grid(std::uint32_t tiers, double cell_radius_m, double bs_height_m)
{
    return HexGrid(tiers, cell_radius_m, bs_height_m);
}

std::vector<CellId> neighbor_set(const HexGrid &grid, CellId j, std::uint32_t q)
{
    const Position2D &cj = grid.center(j);
    const double limit = q * grid.inter_site_distance_m() + 1e-6 * grid.cell_radius_m();
    std::vector<CellId> out;
    for (std::uint32_t i = 1; i <= grid.cell_count(); ++i)
    {
        const Position2D &ci = grid.centers()[i - 1];
        if (std::hypot(ci.x - cj.x, ci.y - cj.y) <= limit)
            out.push_back(CellId{i});
    }
    return out;
}

NeighborTable::NeighborTable(const HexGrid &grid, std::uint32_t q) : n_(grid.cell_count()), q_(q), table_(n_ * n_, false)
{
    for (std::uint32_t j = 1; j <= n_; ++j)
        for (CellId i : neighbor_set(grid, CellId{j}, q))
            table_[(i.value - 1) * n_ + (j - 1)] = true;
}

Position3D sample_uniform_in_cell(const HexGrid &grid, CellId j, RandomStream &rng)
{
    const Position2D &c = grid.center(j);
    const double h = grid.inradius_m();
    const double r = grid.cell_radius_m();
    std::uniform_real_distribution<double> ux(-h, h);
    std::uniform_real_distribution<double> uy(-r, r);
    // Bounding-box rejection; acceptance rate is 3/4.
    for (;;)
    {
        const double x = c.x + ux(rng);
        const double y = c.y + uy(rng);
        if (grid.in_cell(j, x, y))
            return {x, y, 0.0};
    }
}

RhoBound worst_case_ratio(double uav_height_m, double bs_height_m, double cell_radius_m)
{
    if (!(cell_radius_m > 0.0))
        throw Error(ErrorCode::domain, "cell radius must be positive");
    if (!(bs_height_m >= 0.0))
        throw Error(ErrorCode::domain, "BS height must be non-negative");
    if (!(uav_height_m > bs_height_m))
        throw Error(ErrorCode::domain, "UAV altitude must exceed the BS height");

    const double hu = uav_height_m;
    const double hb = bs_height_m;
    const double rc = cell_radius_m;
    const double c = rc * rc + hb * hb - 2.0 * hu * hb;
    const double disc = std::sqrt(c * c + 4.0 * rc * rc * hu * hu);
    // Positive root of rc*xi^2 - c*xi - rc*hu^2 = 0; the second form avoids
    // cancellation when c < 0.
    const double xi = c >= 0.0 ? (c + disc) / (2.0 * rc) : 2.0 * rc * hu * hu / (disc - c);
    const double num = (xi - rc) * (xi - rc) + (hu - hb) * (hu - hb);
    const double den = xi * xi + hu * hu;
    return {std::sqrt(num / den), xi};
}

} // namespace uavicic
