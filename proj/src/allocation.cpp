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


#include "uavicic/allocation.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "uavicic/error.hpp"

namespace uavicic
{

namespace
{

void require_rbs(std::size_t available, std::uint32_t requested, Direction direction)
{
    if (available < requested)
        throw Error(ErrorCode::insufficient_rbs,
                    std::string(direction == Direction::downlink ? "downlink" : "uplink") + ": requested " +
                        std::to_string(requested) + " RBs but only " + std::to_string(available) + " available");
}

void check_rb_range(const Scenario &scenario, std::span<const RbIndex> rbs)
{
    for (RbIndex n : rbs)
        if (n >= scenario.n_rbs())
            throw Error(ErrorCode::invalid_parameter, "RB index " + std::to_string(n) + " out of range");
}

double perturb(double value, const MeasurementNoise &noise)
{
    if (noise.sigma_db <= 0.0 || noise.rng == nullptr || value == 0.0)
        return value;
    std::normal_distribution<double> err(0.0, noise.sigma_db);
    return value * db_to_linear(err(*noise.rng));
}

// Indices of the `count` largest scores, ties by lowest RB.
std::vector<std::size_t> top_scores(std::span<const RbIndex> rbs, std::span<const double> score, std::size_t count)
{
    std::vector<std::size_t> order(rbs.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        if (score[a] != score[b])
            return score[a] > score[b];
        return rbs[a] < rbs[b];
    });
    order.resize(std::min(count, order.size()));
    return order;
}

// Builds an allocation from chosen (rb, power) pairs, sorted by RB.
Allocation make_allocation(Direction direction, Scheme scheme, std::vector<std::pair<RbIndex, double>> chosen)
{
    std::sort(chosen.begin(), chosen.end());
    Allocation alloc;
    alloc.direction = direction;
    alloc.scheme = scheme;
    for (const auto &[rb, p] : chosen)
    {
        alloc.rbs.push_back(rb);
        alloc.power_w.push_back(p);
    }
    return alloc;
}

Allocation conventional(const Scenario &scenario, Direction direction, std::uint32_t count, double power_w,
                        RandomStream &rng)
{
    const std::vector<RbIndex> omega = available_rbs(scenario, scenario.serving_bs());
    require_rbs(omega.size(), count, direction);
    std::vector<std::pair<RbIndex, double>> chosen;
    for (RbIndex n : draw_candidates(omega, count, rng))
        chosen.emplace_back(n, power_w);
    return make_allocation(direction, Scheme::conventional, std::move(chosen));
}

// Shared front half of both sensing schemes: candidate count checks and draw.
std::vector<RbIndex> sensing_candidates(const std::vector<RbIndex> &omega, std::uint32_t m, std::uint32_t n,
                                        Direction direction, RandomStream &rng, bool &clamped)
{
    require_rbs(omega.size(), n, direction);
    if (m < n)
        throw Error(ErrorCode::invalid_parameter, "candidate count " + std::to_string(m) +
                                                      " is smaller than the requested RB count " + std::to_string(n));
    clamped = m > omega.size();
    return draw_candidates(omega, std::min<std::size_t>(m, omega.size()), rng);
}

} // namespace

double downlink_interference(const Scenario &scenario, const LinkGains &gains, RbIndex rb, double interferer_power_w)
{
    double sum = 0.0;
    for (CellId i : scenario.occupants(rb))
        sum += interferer_power_w * gains.f(i, rb);
    return sum;
}

double uplink_activity(const Scenario &scenario, const LinkGains &gains, RbIndex rb, double ue_power_w)
{
    double sum = 0.0;
    for (CellId j : scenario.occupants(rb))
        sum += ue_power_w * gains.s(j, rb);
    return sum;
}

SensingReport measure_downlink_interference(const Scenario &scenario, const LinkGains &gains,
                                            std::span<const RbIndex> rbs, double p_dl_w, const MeasurementNoise &noise)
{
    check_rb_range(scenario, rbs);
    SensingReport report;
    report.candidate_rbs.assign(rbs.begin(), rbs.end());
    for (RbIndex n : rbs)
        report.measured_w.push_back(perturb(downlink_interference(scenario, gains, n, p_dl_w), noise));
    return report;
}

SensingReport measure_uplink_activity(const Scenario &scenario, const LinkGains &gains, std::span<const RbIndex> rbs,
                                      double p_ul_w, const MeasurementNoise &noise)
{
    check_rb_range(scenario, rbs);
    SensingReport report;
    report.candidate_rbs.assign(rbs.begin(), rbs.end());
    for (RbIndex n : rbs)
        report.measured_w.push_back(perturb(uplink_activity(scenario, gains, n, p_ul_w), noise));
    return report;
}

std::vector<std::size_t> lowest_measurements(const SensingReport &report, std::size_t count)
{
    std::vector<double> negated(report.measured_w.size());
    std::transform(report.measured_w.begin(), report.measured_w.end(), negated.begin(), [](double v) { return -v; });
    return top_scores(report.candidate_rbs, negated, count);
}

std::vector<RbIndex> draw_candidates(std::span<const RbIndex> omega, std::size_t count, RandomStream &rng)
{
    std::vector<RbIndex> pool(omega.begin(), omega.end());
    count = std::min(count, pool.size());
    // Partial Fisher-Yates: the first `count` slots are a uniform sample.
    for (std::size_t i = 0; i < count; ++i)
    {
        std::uniform_int_distribution<std::size_t> pick(i, pool.size() - 1);
        std::swap(pool[i], pool[pick(rng)]);
    }
    pool.resize(count);
    return pool;
}

Allocation conventional_downlink(const Scenario &scenario, std::uint32_t n_d, double p_dl_w, RandomStream &rng)
{
    return conventional(scenario, Direction::downlink, n_d, p_dl_w, rng);
}

Allocation conventional_uplink(const Scenario &scenario, std::uint32_t n_u, double p_ul_w, RandomStream &rng)
{
    return conventional(scenario, Direction::uplink, n_u, p_ul_w, rng);
}

Allocation sensing_downlink(const Scenario &scenario, const LinkGains &gains, std::uint32_t m_d, std::uint32_t n_d,
                            double p_dl_w, RandomStream &rng, const MeasurementNoise &noise)
{
    const std::vector<RbIndex> omega = available_rbs(scenario, scenario.serving_bs());
    bool clamped = false;
    const std::vector<RbIndex> phi = sensing_candidates(omega, m_d, n_d, Direction::downlink, rng, clamped);
    const SensingReport report = measure_downlink_interference(scenario, gains, phi, p_dl_w, noise);

    std::vector<std::pair<RbIndex, double>> chosen;
    for (std::size_t k : lowest_measurements(report, n_d))
        chosen.emplace_back(report.candidate_rbs[k], p_dl_w);
    Allocation alloc = make_allocation(Direction::downlink, Scheme::sensing, std::move(chosen));
    alloc.candidates = static_cast<std::uint32_t>(phi.size());
    alloc.candidates_clamped = clamped;
    return alloc;
}

double robust_uplink_power(double sensed_w, double p_ul_w, double gamma_u_w, const RhoBound &rho, double alpha_los)
{
    if (sensed_w <= 0.0)
        return p_ul_w;
    return std::min(1.0, gamma_u_w * std::pow(rho.rho, alpha_los) / sensed_w) * p_ul_w;
}

Allocation sensing_uplink(const Scenario &scenario, const LinkGains &gains, std::uint32_t m_u, std::uint32_t n_u,
                          double p_ul_w, double gamma_u_w, const RhoBound &rho, double alpha_los, RandomStream &rng,
                          const MeasurementNoise &noise)
{
    const std::vector<RbIndex> omega = available_rbs(scenario, scenario.serving_bs());
    bool clamped = false;
    const std::vector<RbIndex> phi = sensing_candidates(omega, m_u, n_u, Direction::uplink, rng, clamped);
    const SensingReport report = measure_uplink_activity(scenario, gains, phi, p_ul_w, noise);

    std::vector<std::pair<RbIndex, double>> chosen;
    for (std::size_t k : lowest_measurements(report, n_u))
        chosen.emplace_back(report.candidate_rbs[k],
                            robust_uplink_power(report.measured_w[k], p_ul_w, gamma_u_w, rho, alpha_los));
    Allocation alloc = make_allocation(Direction::uplink, Scheme::sensing, std::move(chosen));
    alloc.candidates = static_cast<std::uint32_t>(phi.size());
    alloc.candidates_clamped = clamped;
    return alloc;
}

Allocation optimal_downlink(const Scenario &scenario, const LinkGains &gains, std::uint32_t n_d, double p_dl_w,
                            double sigma2_w)
{
    const CellId ju = scenario.serving_bs();
    const std::vector<RbIndex> omega = available_rbs(scenario, ju);
    require_rbs(omega.size(), n_d, Direction::downlink);
    std::vector<double> score;
    score.reserve(omega.size());
    for (RbIndex n : omega)
        score.push_back(gains.f(ju, n) / (sigma2_w + downlink_interference(scenario, gains, n, p_dl_w)));

    std::vector<std::pair<RbIndex, double>> chosen;
    for (std::size_t k : top_scores(omega, score, n_d))
        chosen.emplace_back(omega[k], p_dl_w);
    return make_allocation(Direction::downlink, Scheme::optimal, std::move(chosen));
}

double perfect_csi_uplink_power(const Scenario &scenario, const LinkGains &gains, RbIndex rb, double p_ul_w,
                                double gamma_u_w)
{
    double cap = std::numeric_limits<double>::infinity();
    for (CellId j : scenario.occupants(rb))
        cap = std::min(cap, gamma_u_w / gains.g(j, rb));
    return std::min(cap, p_ul_w);
}

Allocation optimal_uplink(const Scenario &scenario, const LinkGains &gains, std::uint32_t n_u, double p_ul_w,
                          double gamma_u_w)
{
    const CellId ju = scenario.serving_bs();
    const std::vector<RbIndex> omega = available_rbs(scenario, ju);
    require_rbs(omega.size(), n_u, Direction::uplink);
    std::vector<double> power;
    std::vector<double> score;
    for (RbIndex n : omega)
    {
        power.push_back(perfect_csi_uplink_power(scenario, gains, n, p_ul_w, gamma_u_w));
        score.push_back(power.back() * gains.g(ju, n));
    }

    std::vector<std::pair<RbIndex, double>> chosen;
    for (std::size_t k : top_scores(omega, score, n_u))
        chosen.emplace_back(omega[k], power[k]);
    return make_allocation(Direction::uplink, Scheme::optimal, std::move(chosen));
}

Allocation with_perfect_csi_power(const Allocation &alloc, const Scenario &scenario, const LinkGains &gains,
                                  double p_ul_w, double gamma_u_w)
{
    if (alloc.direction != Direction::uplink)
        throw Error(ErrorCode::invalid_parameter, "perfect-CSI power control applies to uplink allocations");
    Allocation out = alloc;
    for (std::size_t k = 0; k < out.rbs.size(); ++k)
        out.power_w[k] = perfect_csi_uplink_power(scenario, gains, out.rbs[k], p_ul_w, gamma_u_w);
    return out;
}

} // namespace uavicic
