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


#ifndef UAVICIC_CHANNEL_HPP
#define UAVICIC_CHANNEL_HPP

#include <cstddef>
#include <cstdint>
#include <vector>

#include "uavicic/geometry.hpp"
#include "uavicic/random.hpp"

namespace uavicic
{

class Scenario;

struct ChannelParams
{
    double beta0_db = -34.0;
    double alpha_los = 2.2;
    double carrier_hz = 2e9;
    double rician_k_db = 20.0;
    double noise_density_dbm_hz = -164.0;
    double rb_bandwidth_hz = 180e3;
    std::uint32_t antenna_elements = 8;
    double downtilt_deg = 10.0;

    // Air-ground LoS override. At 1.0 every BS-UAV link is LoS; below that
    // each link is independently NLoS with the given exponent.
    double los_probability = 1.0;
    double nlos_exponent = 3.5;

    // Apply Rician fading to the UE->UAV sensing links as well (faded mode only).
    bool sensing_fading = false;

    void validate() const;
};

enum class ChannelMode
{
    pure_los,
    faded,
};

double db_to_linear(double db);
double linear_to_db(double linear);
double dbm_to_watts(double dbm);
double watts_to_dbm(double watts);

// Receiver noise power over one RB, in watts.
double noise_power(const ChannelParams &params);

// beta0 * d^-alpha_los.
double los_pathloss_gain(double d_m, const ChannelParams &params);
double pathloss_gain(double d_m, double beta0_db, double exponent);

/**
 * Vertical uniform linear array, half-wavelength spacing, electrically
 * steered to the downtilt angle. Elements are isotropic, so the pattern is
 * omnidirectional in azimuth. Normalised such that the peak equals the
 * element count.
 */
double antenna_gain(const Position3D &bs_pos, const Position3D &target_pos, const ChannelParams &params);

// Same pattern as a function of elevation (radians, positive below the horizon).
double array_gain(double elevation_rad, std::uint32_t elements, double downtilt_rad);

// |h|^2 for a unit-mean Rician channel. An infinite K returns exactly 1.
double rician_fading_sample(double k_db, RandomStream &rng);

// Per-cell, per-RB matrix stored row-major (cell id - 1, rb).
class GainMatrix
{
  public:
    GainMatrix() = default;
    GainMatrix(std::size_t cells, std::size_t rbs) : cells_(cells), rbs_(rbs), data_(cells * rbs, 0.0) {}

    double operator()(CellId j, std::size_t rb) const { return data_[(j.value - 1) * rbs_ + rb]; }
    double &operator()(CellId j, std::size_t rb) { return data_[(j.value - 1) * rbs_ + rb]; }
    std::size_t cells() const { return cells_; }
    std::size_t rbs() const { return rbs_; }

  private:
    std::size_t cells_ = 0;
    std::size_t rbs_ = 0;
    std::vector<double> data_;
};

struct LinkGains
{
    GainMatrix f; // BS j -> UAV, downlink
    GainMatrix g; // UAV -> BS j, uplink
    GainMatrix s; // UE of (cell j, rb) -> UAV; zero where the pair is unoccupied
};

LinkGains compute_link_gains(const Scenario &scenario, const ChannelParams &params, ChannelMode mode,
                             RandomStream &fading_rng, RandomStream &los_rng);

// Convenience overload deriving both streams from one generator.
LinkGains compute_link_gains(const Scenario &scenario, const ChannelParams &params, ChannelMode mode,
                             RandomStream &rng);

} // namespace uavicic

#endif
