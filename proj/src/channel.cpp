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


#include "uavicic/channel.hpp"

#include <cmath>
#include <complex>
#include <numbers>

#include "uavicic/error.hpp"
#include "uavicic/scenario.hpp"

namespace uavicic
{

void ChannelParams::validate() const
{
    if (!(alpha_los > 0.0))
        throw Error(ErrorCode::invalid_parameter, "alpha_los must be positive");
    if (!(rb_bandwidth_hz > 0.0))
        throw Error(ErrorCode::invalid_parameter, "rb_bandwidth_hz must be positive");
    if (!(carrier_hz > 0.0))
        throw Error(ErrorCode::invalid_parameter, "carrier_hz must be positive");
    if (antenna_elements < 1)
        throw Error(ErrorCode::invalid_parameter, "antenna_elements must be at least 1");
    if (!std::isfinite(beta0_db) || !std::isfinite(noise_density_dbm_hz) || !std::isfinite(downtilt_deg))
        throw Error(ErrorCode::invalid_parameter, "channel parameters must be finite");
    if (!(los_probability >= 0.0 && los_probability <= 1.0))
        throw Error(ErrorCode::invalid_parameter, "los_probability must lie in [0, 1]");
    if (!(nlos_exponent > 0.0))
        throw Error(ErrorCode::invalid_parameter, "nlos_exponent must be positive");
    if (std::isnan(rician_k_db))
        throw Error(ErrorCode::invalid_parameter, "rician_k_db is NaN");
}

double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }
double linear_to_db(double linear) { return 10.0 * std::log10(linear); }
double dbm_to_watts(double dbm) { return std::pow(10.0, (dbm - 30.0) / 10.0); }
double watts_to_dbm(double watts) { return 10.0 * std::log10(watts) + 30.0; }

double noise_power(const ChannelParams &params)
{
    return dbm_to_watts(params.noise_density_dbm_hz + linear_to_db(params.rb_bandwidth_hz));
}

double pathloss_gain(double d_m, double beta0_db, double exponent)
{
    if (!(d_m > 0.0))
        throw Error(ErrorCode::domain, "path-loss distance must be positive");
    return db_to_linear(beta0_db) * std::pow(d_m, -exponent);
}

double los_pathloss_gain(double d_m, const ChannelParams &params)
{
    return pathloss_gain(d_m, params.beta0_db, params.alpha_los);
}

double array_gain(double elevation_rad, std::uint32_t elements, double downtilt_rad)
{
    if (elements <= 1)
        return 1.0;
    // Progressive phase pi * (sin(theta) - sin(theta_t)) per element.
    const double psi = std::numbers::pi * (std::sin(elevation_rad) - std::sin(downtilt_rad));
    std::complex<double> sum{0.0, 0.0};
    for (std::uint32_t m = 0; m < elements; ++m)
        sum += std::polar(1.0, psi * static_cast<double>(m));
    return std::norm(sum) / static_cast<double>(elements);
}

double antenna_gain(const Position3D &bs_pos, const Position3D &target_pos, const ChannelParams &params)
{
    const double h = horizontal_distance(bs_pos, target_pos);
    const double dz = bs_pos.z - target_pos.z;
    if (h == 0.0 && dz == 0.0)
        throw Error(ErrorCode::domain, "antenna gain undefined for coincident positions");
    const double elevation = std::atan2(dz, h);
    return array_gain(elevation, params.antenna_elements, params.downtilt_deg * std::numbers::pi / 180.0);
}

double rician_fading_sample(double k_db, RandomStream &rng)
{
    if (std::isinf(k_db) && k_db > 0.0)
        return 1.0;
    const double k = db_to_linear(k_db);
    const double los = std::sqrt(k / (k + 1.0));
    const double scatter = std::sqrt(1.0 / (k + 1.0));
    // Unit-variance circularly-symmetric complex normal: each part has variance 1/2.
    std::normal_distribution<double> normal(0.0, std::numbers::sqrt2 / 2.0);
    const double re = los + scatter * normal(rng);
    const double im = scatter * normal(rng);
    return re * re + im * im;
}

LinkGains compute_link_gains(const Scenario &scenario, const ChannelParams &params, ChannelMode mode,
                             RandomStream &fading_rng, RandomStream &los_rng)
{
    const HexGrid &grid = scenario.grid();
    const std::size_t cells = grid.cell_count();
    const std::size_t rbs = scenario.n_rbs();
    const Position3D &uav = scenario.uav_pos();
    const bool faded = mode == ChannelMode::faded;

    LinkGains gains{GainMatrix(cells, rbs), GainMatrix(cells, rbs), GainMatrix(cells, rbs)};
    std::bernoulli_distribution los_draw(params.los_probability);
    for (std::uint32_t id = 1; id <= cells; ++id)
    {
        const CellId j{id};
        const Position3D bs = grid.bs_position(j);
        const double d = distance(bs, uav);
        double exponent = params.alpha_los;
        if (params.los_probability < 1.0 && !los_draw(los_rng))
            exponent = params.nlos_exponent;
        const double large_scale = pathloss_gain(d, params.beta0_db, exponent) * antenna_gain(bs, uav, params);
        for (std::size_t n = 0; n < rbs; ++n)
        {
            const double fading = faded ? rician_fading_sample(params.rician_k_db, fading_rng) : 1.0;
            gains.f(j, n) = large_scale * fading;
            gains.g(j, n) = gains.f(j, n);
        }
    }

    for (const TerrestrialUe &ue : scenario.ues())
    {
        double s = los_pathloss_gain(distance(ue.pos, uav), params);
        if (faded && params.sensing_fading)
            s *= rician_fading_sample(params.rician_k_db, fading_rng);
        gains.s(ue.cell, ue.rb) = s;
    }
    return gains;
}

LinkGains compute_link_gains(const Scenario &scenario, const ChannelParams &params, ChannelMode mode,
                             RandomStream &rng)
{
    return compute_link_gains(scenario, params, mode, rng, rng);
}

} // namespace uavicic
