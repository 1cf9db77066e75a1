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


#ifndef UAVICIC_ALLOCATION_HPP
#define UAVICIC_ALLOCATION_HPP

#include <cstdint>
#include <span>
#include <vector>

#include "uavicic/channel.hpp"
#include "uavicic/geometry.hpp"
#include "uavicic/random.hpp"
#include "uavicic/scenario.hpp"

namespace uavicic
{

enum class Direction
{
    downlink,
    uplink,
};

enum class Scheme
{
    conventional,
    sensing,
    optimal,
};

struct Allocation
{
    Direction direction = Direction::downlink;
    Scheme scheme = Scheme::conventional;
    std::vector<RbIndex> rbs;    // ascending
    std::vector<double> power_w; // parallel to rbs
    // Sensing schemes: number of candidates actually sensed, and whether the
    // requested count had to be clamped to |Omega|.
    std::uint32_t candidates = 0;
    bool candidates_clamped = false;
};

struct SensingReport
{
    std::vector<RbIndex> candidate_rbs;
    std::vector<double> measured_w; // parallel to candidate_rbs, linear watts
};

// Optional multiplicative log-normal error on sensed powers. Off by default.
struct MeasurementNoise
{
    double sigma_db = 0.0;
    RandomStream *rng = nullptr;
};

// I_DL(n) with every co-channel BS transmitting at `interferer_power_w`.
double downlink_interference(const Scenario &scenario, const LinkGains &gains, RbIndex rb, double interferer_power_w);

// E_UL(n) with every co-channel UE transmitting at `ue_power_w`.
double uplink_activity(const Scenario &scenario, const LinkGains &gains, RbIndex rb, double ue_power_w);

SensingReport measure_downlink_interference(const Scenario &scenario, const LinkGains &gains,
                                            std::span<const RbIndex> rbs, double p_dl_w,
                                            const MeasurementNoise &noise = {});

SensingReport measure_uplink_activity(const Scenario &scenario, const LinkGains &gains, std::span<const RbIndex> rbs,
                                      double p_ul_w, const MeasurementNoise &noise = {});

// Positions in `report` of the `count` smallest measurements, ties by lowest RB.
std::vector<std::size_t> lowest_measurements(const SensingReport &report, std::size_t count);

// Uniform without replacement from `omega`; prefix-stable in `count` for a
// given generator state.
std::vector<RbIndex> draw_candidates(std::span<const RbIndex> omega, std::size_t count, RandomStream &rng);

// Peak power on randomly drawn available RBs.
Allocation conventional_downlink(const Scenario &scenario, std::uint32_t n_d, double p_dl_w, RandomStream &rng);
Allocation conventional_uplink(const Scenario &scenario, std::uint32_t n_u, double p_ul_w, RandomStream &rng);

// Sense M_d random candidates, keep the N_d quietest, transmit at peak.
Allocation sensing_downlink(const Scenario &scenario, const LinkGains &gains, std::uint32_t m_d, std::uint32_t n_d,
                            double p_dl_w, RandomStream &rng, const MeasurementNoise &noise = {});

// min{1, gamma * rho^alpha / E} * P_UL, with E = 0 giving P_UL.
double robust_uplink_power(double sensed_w, double p_ul_w, double gamma_u_w, const RhoBound &rho, double alpha_los);

/**
 * Sense M_u random candidates, keep the N_u with the lowest sensed uplink
 * power, and cap each RB's power with the worst-case channel bound derived
 * from the sensed power. In pure-LoS conditions p * G_j(n) <= gamma_u for
 * every co-channel BS j.
 */
Allocation sensing_uplink(const Scenario &scenario, const LinkGains &gains, std::uint32_t m_u, std::uint32_t n_u,
                          double p_ul_w, double gamma_u_w, const RhoBound &rho, double alpha_los, RandomStream &rng,
                          const MeasurementNoise &noise = {});

// Top N_d of F_ju(n) / (sigma^2 + I_DL(n)) over all of Omega_d.
Allocation optimal_downlink(const Scenario &scenario, const LinkGains &gains, std::uint32_t n_d, double p_dl_w,
                            double sigma2_w);

// p*(n) = min{ min_j gamma / G_j(n), P_UL }; P_UL when J(n) is empty.
double perfect_csi_uplink_power(const Scenario &scenario, const LinkGains &gains, RbIndex rb, double p_ul_w,
                                double gamma_u_w);

// Top N_u of p*(n) * G_ju(n) over all of Omega_u.
Allocation optimal_uplink(const Scenario &scenario, const LinkGains &gains, std::uint32_t n_u, double p_ul_w,
                          double gamma_u_w);

// Same RBs, powers replaced by the perfect-CSI policy.
Allocation with_perfect_csi_power(const Allocation &alloc, const Scenario &scenario, const LinkGains &gains,
                                  double p_ul_w, double gamma_u_w);

} // namespace uavicic

#endif
