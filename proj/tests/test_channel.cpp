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


#include <doctest.h>

#include <cmath>
#include <limits>
#include <numbers>

#include "uavicic/channel.hpp"
#include "uavicic/error.hpp"
#include "uavicic/scenario.hpp"

using namespace uavicic;

TEST_CASE("noise_power over one RB")
{
    ChannelParams p;
    CHECK(watts_to_dbm(noise_power(p)) == doctest::Approx(-111.447).epsilon(1e-5));
    CHECK(std::abs(watts_to_dbm(noise_power(p)) - (-111.45)) < 0.01);

    ChannelParams doubled = p;
    doubled.rb_bandwidth_hz *= 2.0;
    CHECK(watts_to_dbm(noise_power(doubled)) - watts_to_dbm(noise_power(p)) == doctest::Approx(3.0103).epsilon(1e-4));

    ChannelParams one_hz = p;
    one_hz.rb_bandwidth_hz = 1.0;
    CHECK(watts_to_dbm(noise_power(one_hz)) == doctest::Approx(-164.0));
}

TEST_CASE("los_pathloss_gain power law")
{
    ChannelParams p;
    CHECK(linear_to_db(los_pathloss_gain(1.0, p)) == doctest::Approx(-34.0));
    CHECK(linear_to_db(los_pathloss_gain(100.0, p)) == doctest::Approx(-78.0));
    double prev = los_pathloss_gain(0.5, p);
    for (double d = 1.0; d < 1e5; d *= 1.7)
    {
        const double g = los_pathloss_gain(d, p);
        CHECK(g < prev);
        prev = g;
    }
    CHECK_THROWS_AS(los_pathloss_gain(0.0, p), Error);
    CHECK_THROWS_AS(los_pathloss_gain(-3.0, p), Error);
}

TEST_CASE("antenna_gain peak, single element and first null")
{
    ChannelParams p;
    p.antenna_elements = 8;
    const double tilt = 10.0 * std::numbers::pi / 180.0;
    CHECK(array_gain(tilt, 8, tilt) == doctest::Approx(8.0).epsilon(1e-12));
    CHECK(linear_to_db(array_gain(tilt, 8, tilt)) == doctest::Approx(9.03).epsilon(1e-3));

    for (double th = -1.5; th <= 1.5; th += 0.1)
        CHECK(array_gain(th, 1, tilt) == 1.0);

    const double null_el = std::asin(std::sin(tilt) + 2.0 / 8.0);
    CHECK(std::abs(array_gain(null_el, 8, tilt)) < 1e-12);

    // Geometry: a target 10 degrees below the BS boresight gets the peak.
    const Position3D bs{0.0, 0.0, 25.0};
    const double h = 25.0 / std::tan(tilt);
    CHECK(antenna_gain(bs, Position3D{h, 0.0, 0.0}, p) == doctest::Approx(8.0).epsilon(1e-9));
    CHECK_THROWS_AS(antenna_gain(bs, bs, p), Error);
}

TEST_CASE("antenna pattern conserves radiated power")
{
    // (1/2) * integral of gain(theta) cos(theta) over [-pi/2, pi/2].
    const double tilt = 10.0 * std::numbers::pi / 180.0;
    for (std::uint32_t a : {1u, 4u, 8u, 16u})
    {
        const int steps = 20000;
        const double h = std::numbers::pi / steps;
        double sum = 0.0;
        for (int k = 0; k <= steps; ++k)
        {
            const double th = -std::numbers::pi / 2.0 + k * h;
            const double w = (k == 0 || k == steps) ? 1.0 : (k % 2 ? 4.0 : 2.0);
            sum += w * array_gain(th, a, tilt) * std::cos(th);
        }
        CHECK(0.5 * sum * h / 3.0 == doctest::Approx(1.0).epsilon(0.01));
    }
}

TEST_CASE("rician_fading_sample moments")
{
    RandomStream rng(11);
    CHECK(rician_fading_sample(std::numeric_limits<double>::infinity(), rng) == 1.0);

    const int n = 1000000;
    double sum = 0.0;
    for (int k = 0; k < n; ++k)
        sum += rician_fading_sample(20.0, rng);
    CHECK(std::abs(sum / n - 1.0) < 0.005);

    // Var(|h|^2) = (2K + 1) / (K + 1)^2: 3/4 at K = 1 (0 dB), 1 for Rayleigh.
    auto variance = [&](double k_db) {
        double s = 0.0;
        double s2 = 0.0;
        for (int k = 0; k < n; ++k)
        {
            const double v = rician_fading_sample(k_db, rng);
            s += v;
            s2 += v * v;
        }
        const double mean = s / n;
        return s2 / n - mean * mean;
    };
    const double var_k1 = variance(0.0);
    const double var_rayleigh = variance(-300.0);
    CHECK(var_k1 == doctest::Approx(0.75).epsilon(0.02));
    CHECK(var_rayleigh == doctest::Approx(1.0).epsilon(0.02));
    CHECK(var_k1 / var_rayleigh == doctest::Approx(0.75).epsilon(0.03));
}

namespace
{

Scenario uav_above_center(std::vector<TerrestrialUe> ues = {})
{
    return Scenario(build_grid(3, 800.0, 25.0), 4, 1, std::move(ues), Position3D{0.0, 0.0, 200.0}, -34.0, 2.2);
}

} // namespace

TEST_CASE("compute_link_gains in pure-LoS mode")
{
    ChannelParams p;
    const Scenario s = uav_above_center({{CellId{9}, 2, Position3D{2400.0, 0.0, 0.0}}});
    RandomStream rng(1);
    const LinkGains gains = compute_link_gains(s, p, ChannelMode::pure_los, rng);

    for (std::uint32_t id = 1; id <= 37; ++id)
    {
        for (std::size_t n = 0; n < 4; ++n)
        {
            CHECK(gains.f(CellId{id}, n) == gains.f(CellId{id}, 0));
            CHECK(gains.g(CellId{id}, n) == gains.f(CellId{id}, n));
            CHECK(gains.f(CellId{id}, n) > 0.0);
            CHECK(std::isfinite(gains.f(CellId{id}, n)));
        }
    }

    // UAV 175 m straight above BS 1, seen at theta = -90 deg.
    const double psi = std::numbers::pi * (std::sin(-std::numbers::pi / 2.0) - std::sin(10.0 * std::numbers::pi / 180.0));
    const double af = std::pow(std::sin(8.0 * psi / 2.0) / std::sin(psi / 2.0), 2.0) / 8.0;
    const double expected = std::pow(10.0, -3.4) * std::pow(175.0, -2.2) * af;
    CHECK(gains.f(CellId{1}, 0) == doctest::Approx(expected).epsilon(1e-12));

    // Sensing gain of the single UE, plain LoS path loss; zero elsewhere.
    const double a = std::sqrt(2400.0 * 2400.0 + 200.0 * 200.0);
    CHECK(gains.s(CellId{9}, 2) == doctest::Approx(std::pow(10.0, -3.4) * std::pow(a, -2.2)).epsilon(1e-12));
    CHECK(gains.s(CellId{9}, 1) == 0.0);
}

TEST_CASE("compute_link_gains in faded mode")
{
    ChannelParams p;
    const Scenario s = uav_above_center();
    RandomStream rng(5);
    const LinkGains faded = compute_link_gains(s, p, ChannelMode::faded, rng);
    RandomStream rng2(5);
    const LinkGains los = compute_link_gains(s, p, ChannelMode::pure_los, rng2);
    bool varies = false;
    for (std::size_t n = 1; n < 4; ++n)
        varies = varies || faded.f(CellId{3}, n) != faded.f(CellId{3}, 0);
    CHECK(varies);
    CHECK(faded.g(CellId{3}, 2) == faded.f(CellId{3}, 2));
    // Fading of 20 dB K stays within a few dB of the LoS value.
    CHECK(std::abs(linear_to_db(faded.f(CellId{3}, 2) / los.f(CellId{3}, 2))) < 6.0);
}

TEST_CASE("los_probability hook switches exponents")
{
    ChannelParams p;
    p.los_probability = 0.0;
    p.nlos_exponent = 3.5;
    const Scenario s = uav_above_center();
    RandomStream rng(2);
    const LinkGains nlos = compute_link_gains(s, p, ChannelMode::pure_los, rng);
    const Position3D uav = s.uav_pos();
    const Position3D bs = s.grid().bs_position(CellId{5});
    const double expected = pathloss_gain(distance(bs, uav), -34.0, 3.5) * antenna_gain(bs, uav, p);
    CHECK(nlos.f(CellId{5}, 0) == doctest::Approx(expected).epsilon(1e-12));

    ChannelParams bad;
    bad.los_probability = 1.5;
    CHECK_THROWS_AS(bad.validate(), Error);
}
