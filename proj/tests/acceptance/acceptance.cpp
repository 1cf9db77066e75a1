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


// Acceptance suite. Prints one PASS/FAIL line per criterion and exits
// nonzero if any criterion fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <random>
#include <string>
#include <thread>
#include <vector>

#include "oracles.hpp"
#include "uavicic/allocation.hpp"
#include "uavicic/harness.hpp"
#include "uavicic/metrics.hpp"
#include "uavicic/random.hpp"

using namespace uavicic;

namespace
{

int g_failures = 0;

void report(int id, const char *name, bool ok, const std::string &detail)
{
    std::printf("%s [%d] %s: %s\n", ok ? "PASS" : "FAIL", id, name, detail.c_str());
    std::fflush(stdout);
    if (!ok)
        ++g_failures;
}

void info(const char *name, const std::string &detail)
{
    std::printf("INFO     %s: %s\n", name, detail.c_str());
    std::fflush(stdout);
}

std::string fmt(const char *f, auto... args)
{
    char buf[512];
    std::snprintf(buf, sizeof buf, f, args...);
    return buf;
}

std::uint32_t workers()
{
    return std::max(1u, std::thread::hardware_concurrency());
}

double seconds_since(std::chrono::steady_clock::time_point t0)
{
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

const AggregateRow &row_of(const std::vector<AggregateRow> &rows, const std::string &scheme, double value)
{
    for (const AggregateRow &r : rows)
        if (r.scheme == scheme && r.sweep_value == value)
            return r;
    throw std::runtime_error("missing row " + scheme);
}

void distance_ratio_bound()
{
    const double hu = 200.0;
    const double hb = 25.0;
    const double rc = 800.0;
    const auto t0 = std::chrono::steady_clock::now();
    const RhoBound b = worst_case_ratio(hu, hb, rc);

    std::mt19937_64 gen(20240601);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    const double two_pi = 2.0 * std::acos(-1.0);
    const double region = 20.0 * rc;
    std::uint64_t violations = 0;
    double min_random = INFINITY;
    for (int i = 0; i < 1000000; ++i)
    {
        const double ur = region * std::sqrt(u(gen));
        const double ut = two_pi * u(gen);
        const double ux = ur * std::cos(ut);
        const double uy = ur * std::sin(ut);
        const double br = rc * std::sqrt(u(gen));
        const double bt = two_pi * u(gen);
        const double ratio = oracle::distance_ratio(hu, hb, ux, uy, ux + br * std::cos(bt), uy + br * std::sin(bt));
        min_random = std::min(min_random, ratio);
        if (ratio < b.rho)
            ++violations;
    }

    std::normal_distribution<double> jitter(0.0, 1.0);
    double min_near = INFINITY;
    for (int i = 0; i < 100000; ++i)
    {
        const double x = b.xi_m * (1.0 + 0.05 * jitter(gen));
        const double ut = two_pi * u(gen);
        const double ux = x * std::cos(ut);
        const double uy = x * std::sin(ut);
        const double br = rc * std::sqrt(1.0 - 0.02 * u(gen));
        const double bt = ut + std::acos(-1.0) + 0.05 * jitter(gen);
        const double ratio = oracle::distance_ratio(hu, hb, ux, uy, ux + br * std::cos(bt), uy + br * std::sin(bt));
        min_near = std::min(min_near, ratio);
        if (ratio < b.rho)
            ++violations;
    }
    const double elapsed = seconds_since(t0);
    const bool ok = violations == 0 && min_near <= 1.05 * b.rho && elapsed < 60.0;
    report(1, "distance-ratio bound", ok,
           fmt("rho=%.6f, violations=%llu, min uniform=%.6f, min near xi=%.6f (%.3f%% above rho), %.2f s", b.rho,
               static_cast<unsigned long long>(violations), min_random, min_near, 100.0 * (min_near / b.rho - 1.0),
               elapsed));
}

void xi_closed_form()
{
    std::mt19937_64 gen(7);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    double worst = 0.0;
    for (int i = 0; i < 100; ++i)
    {
        const double hb = 5.0 + 60.0 * u(gen);
        const double hu = hb + 1.0 + 600.0 * u(gen);
        const double rc = 50.0 + 2500.0 * u(gen);
        const double closed = worst_case_ratio(hu, hb, rc).xi_m;
        const double numeric = oracle::xi_by_bisection(hu, hb, rc);
        worst = std::max(worst, std::abs(closed - numeric) / numeric);
    }
    report(2, "xi closed form", worst <= 1e-9, fmt("max relative error %.3e over 100 triples", worst));
}

void uplink_safety()
{
    ExperimentConfig c = preset("fig3b");
    c.mode = ChannelMode::pure_los;
    c.realizations = 1000;
    const RhoBound rho = worst_case_ratio(c.uav_altitude_m, c.bs_height_m, c.cell_radius_m);
    const double p_ul = dbm_to_watts(c.p_ul_dbm);
    const std::uint32_t m_u = c.m_u.front();

    std::uint64_t checks = 0;
    std::uint64_t violations = 0;
    std::uint64_t limited = 0;
    std::uint64_t gap = 0;
    for (std::uint64_t i = 0; i < c.realizations; ++i)
    {
        const Snapshot snap = realization_snapshot(c, i);
        const Scenario &s = snap.scenario;
        const LinkGains &g = snap.gains;
        for (double gamma_dbm : c.gamma_u_dbm)
        {
            const double gamma = dbm_to_watts(gamma_dbm);
            RandomStream rng = derive_stream(c.master_seed, i, StreamId::sensing_uplink);
            const Allocation robust = sensing_uplink(s, g, m_u, c.n_u, p_ul, gamma, rho, c.channel.alpha_los, rng);
            const Allocation csi = with_perfect_csi_power(robust, s, g, p_ul, gamma);

            double robust_i = 0.0;
            double csi_i = 0.0;
            bool interference_limited = false;
            for (std::size_t k = 0; k < robust.rbs.size(); ++k)
            {
                const RbIndex n = robust.rbs[k];
                for (std::uint32_t id = 1; id <= s.grid().cell_count(); ++id)
                {
                    if (s.ue_at(CellId{id}, n) < 0)
                        continue;
                    const double gj = g.g(CellId{id}, n);
                    ++checks;
                    if (robust.power_w[k] * gj > gamma)
                        ++violations;
                    robust_i = std::max(robust_i, robust.power_w[k] * gj);
                    csi_i = std::max(csi_i, csi.power_w[k] * gj);
                    if (p_ul * gj > gamma)
                        interference_limited = true;
                }
            }
            if (interference_limited)
            {
                ++limited;
                if (robust_i < csi_i)
                    ++gap;
            }
        }
    }
    const double share = limited ? static_cast<double>(gap) / static_cast<double>(limited) : 0.0;
    const bool ok = violations == 0 && limited > 0 && share >= 0.99;
    report(3, "uplink safety", ok,
           fmt("%llu (realization, RB, victim, threshold) checks, %llu violations; robust below perfect-CSI in "
               "%llu/%llu interference-limited cases (%.2f%%)",
               static_cast<unsigned long long>(checks), static_cast<unsigned long long>(violations),
               static_cast<unsigned long long>(gap), static_cast<unsigned long long>(limited), 100.0 * share));
}

void downlink_ordering()
{
    ExperimentConfig c = preset("fig3a");
    c.realizations = 1000;
    c.workers = workers();
    const auto rows = run_experiment(c);
    bool ordered = true;
    double worst_gap = 0.0;
    for (double p : c.p_dl_dbm)
    {
        const double opt = row_of(rows, "optimal", p).mean_rate_bps_hz;
        const double m15 = row_of(rows, "sensing_m15", p).mean_rate_bps_hz;
        const double m5 = row_of(rows, "sensing_m5", p).mean_rate_bps_hz;
        const double conv = row_of(rows, "conventional", p).mean_rate_bps_hz;
        ordered = ordered && opt >= m15 && m15 >= m5 && m5 >= conv;
        worst_gap = std::max(worst_gap, (opt - m15) / opt);
    }
    const double p0 = c.p_dl_dbm.front();
    report(4, "downlink ordering", ordered && worst_gap <= 0.05,
           fmt("ordering %s at all %zu points; max optimal vs M=15 gap %.2f%%; at %g dBm: %.3f >= %.3f >= %.3f >= %.3f",
               ordered ? "holds" : "broken", c.p_dl_dbm.size(), 100.0 * worst_gap, p0,
               row_of(rows, "optimal", p0).mean_rate_bps_hz, row_of(rows, "sensing_m15", p0).mean_rate_bps_hz,
               row_of(rows, "sensing_m5", p0).mean_rate_bps_hz, row_of(rows, "conventional", p0).mean_rate_bps_hz));
}

void downlink_dominance()
{
    ExperimentConfig c;
    c.mode = ChannelMode::pure_los;
    c.master_seed = 0xD0517A7E;
    const double sigma2 = noise_power(c.channel);
    std::mt19937_64 gen(11);
    std::uniform_real_distribution<double> u(0.0, 1.0);

    std::uint64_t trials = 0;
    std::uint64_t dominance = 0;
    std::uint64_t nesting = 0;
    std::uint64_t full = 0;
    for (std::uint64_t i = 0; trials < 10000; ++i)
    {
        const Snapshot snap = realization_snapshot(c, i);
        const Scenario &s = snap.scenario;
        const LinkGains &g = snap.gains;
        const auto omega = available_rbs(s, s.serving_bs());
        if (omega.size() < 2)
            continue;
        ++trials;
        const std::uint32_t n_d = 1 + static_cast<std::uint32_t>(u(gen) * std::min<std::size_t>(3, omega.size() - 1));
        const std::uint32_t m_small = n_d + static_cast<std::uint32_t>(u(gen) * (omega.size() - n_d));
        const std::uint32_t m_large = m_small + static_cast<std::uint32_t>(u(gen) * (omega.size() - m_small + 1));
        const double p_dl = dbm_to_watts(30.0 + 16.0 * u(gen));

        const Allocation opt = optimal_downlink(s, g, n_d, p_dl, sigma2);
        const double r_opt = downlink_rate(opt, g, sigma2, s, p_dl).r_dl_bps_hz;

        RandomStream a = derive_stream(c.master_seed, i, StreamId::sensing_downlink);
        RandomStream b = a;
        const Allocation small = sensing_downlink(s, g, m_small, n_d, p_dl, a);
        const Allocation large = sensing_downlink(s, g, m_large, n_d, p_dl, b);
        RandomStream pa = derive_stream(c.master_seed, i, StreamId::sensing_downlink);
        RandomStream pb = pa;
        const auto phi_small = draw_candidates(omega, m_small, pa);
        const auto phi_large = draw_candidates(omega, m_large, pb);
        const bool nested = std::equal(phi_small.begin(), phi_small.end(), phi_large.begin());
        const double r_small = downlink_rate(small, g, sigma2, s, p_dl).r_dl_bps_hz;
        const double r_large = downlink_rate(large, g, sigma2, s, p_dl).r_dl_bps_hz;
        if (r_opt < r_small || r_opt < r_large)
            ++dominance;
        if (!nested || r_large < r_small)
            ++nesting;

        RandomStream all_rng = derive_stream(c.master_seed, i, StreamId::sensing_downlink);
        const Allocation everything = sensing_downlink(s, g, static_cast<std::uint32_t>(omega.size()), n_d, p_dl, all_rng);
        if (everything.rbs != opt.rbs)
            ++full;
    }
    report(5, "per-realization dominance", dominance + nesting + full == 0,
           fmt("%llu trials: optimal<sensing %llu, nested-candidate regressions %llu, full-candidate mismatches %llu",
               static_cast<unsigned long long>(trials), static_cast<unsigned long long>(dominance),
               static_cast<unsigned long long>(nesting), static_cast<unsigned long long>(full)));
}

struct Curve
{
    std::vector<double> iul_dbm;
    std::vector<double> rate;
};

Curve curve(const std::vector<AggregateRow> &rows, const std::string &scheme)
{
    Curve out;
    for (const AggregateRow &r : rows)
        if (r.scheme == scheme)
        {
            out.iul_dbm.push_back(r.mean_iul_dbm);
            out.rate.push_back(r.mean_rate_bps_hz);
        }
    return out;
}

// Rate of `c` at achieved interference x, by linear interpolation in dBm.
bool interpolate(const Curve &c, double x, double &rate)
{
    for (std::size_t k = 1; k < c.iul_dbm.size(); ++k)
    {
        const double x0 = c.iul_dbm[k - 1];
        const double x1 = c.iul_dbm[k];
        if (x >= x0 && x <= x1 && x1 > x0)
        {
            rate = c.rate[k - 1] + (c.rate[k] - c.rate[k - 1]) * (x - x0) / (x1 - x0);
            return true;
        }
    }
    return false;
}

struct TradeoffResult
{
    double worst_spread = 0.0;
    double worst_gamma = 0.0;
    std::size_t matched = 0;
    std::size_t matched_fail = 0;
    double min_margin = INFINITY;
};

TradeoffResult tradeoff(ChannelMode mode)
{
    ExperimentConfig c = preset("fig3c");
    c.realizations = 1000;
    c.mode = mode;
    c.workers = workers();
    const auto rows = run_experiment(c);

    TradeoffResult out;
    for (double gamma : c.gamma_u_dbm)
    {
        if (gamma < -60.0)
            continue;
        const double conv = row_of(rows, "conventional", gamma).mean_rate_bps_hz;
        const double sens = row_of(rows, "sensing_m12", gamma).mean_rate_bps_hz;
        const double opt = row_of(rows, "optimal", gamma).mean_rate_bps_hz;
        const double hi = std::max({conv, sens, opt});
        const double lo = std::min({conv, sens, opt});
        const double spread = (hi - lo) / hi;
        if (spread >= out.worst_spread)
        {
            out.worst_spread = spread;
            out.worst_gamma = gamma;
        }
    }

    const Curve m12 = curve(rows, "sensing_m12");
    const Curve m20 = curve(rows, "sensing_m20");
    const double saturated = m12.rate.back();
    for (std::size_t k = 0; k < m12.rate.size(); ++k)
    {
        if (m12.rate[k] >= 0.99 * saturated)
            continue;
        double r20 = 0.0;
        if (!interpolate(m20, m12.iul_dbm[k], r20))
            continue;
        ++out.matched;
        out.min_margin = std::min(out.min_margin, r20 - m12.rate[k]);
        if (r20 < m12.rate[k])
            ++out.matched_fail;
    }
    return out;
}

void uplink_tradeoff()
{
    const TradeoffResult faded = tradeoff(ChannelMode::faded);
    const bool converge = faded.worst_spread <= 0.02;
    const bool matched = faded.matched > 0 && faded.matched_fail == 0;
    report(6, "uplink tradeoff", converge && matched,
           fmt("faded: worst rate spread for threshold >= -60 dBm %.2f%% at %g dBm (limit 2%%); M=20 vs M=12 at "
               "matched interference: %zu points, %zu below, min margin %.4f bps/Hz",
               100.0 * faded.worst_spread, faded.worst_gamma, faded.matched, faded.matched_fail, faded.min_margin));

    const TradeoffResult los = tradeoff(ChannelMode::pure_los);
    info("uplink tradeoff (pure-LoS)",
         fmt("worst rate spread %.2f%% at %g dBm; matched points %zu, %zu below", 100.0 * los.worst_spread,
             los.worst_gamma, los.matched, los.matched_fail));
}

void power_ordering()
{
    ExperimentConfig c;
    c.mode = ChannelMode::pure_los;
    c.master_seed = 0x5EED0007;
    const RhoBound rho = worst_case_ratio(c.uav_altitude_m, c.bs_height_m, c.cell_radius_m);
    const double p_ul = dbm_to_watts(c.p_ul_dbm);
    std::mt19937_64 gen(3);
    std::uniform_real_distribution<double> u(0.0, 1.0);

    std::uint64_t trials = 0;
    std::uint64_t checked = 0;
    std::uint64_t violations = 0;
    for (std::uint64_t i = 0; trials < 10000; ++i)
    {
        const Snapshot snap = realization_snapshot(c, i);
        const Scenario &s = snap.scenario;
        const auto omega = available_rbs(s, s.serving_bs());
        if (omega.size() < 2)
            continue;
        ++trials;
        const std::uint32_t n_u = 1 + static_cast<std::uint32_t>(u(gen) * std::min<std::size_t>(10, omega.size() - 1));
        const std::uint32_t m_u = n_u + 1 + static_cast<std::uint32_t>(u(gen) * (omega.size() - n_u));
        const double gamma = dbm_to_watts(-130.0 + 80.0 * u(gen));
        RandomStream rng = derive_stream(c.master_seed, i, StreamId::sensing_uplink);
        const Allocation a = sensing_uplink(s, snap.gains, m_u, n_u, p_ul, gamma, rho, c.channel.alpha_los, rng);
        for (std::size_t k = 0; k < a.rbs.size(); ++k)
        {
            if (s.occupants(a.rbs[k]).empty())
                continue;
            ++checked;
            if (a.power_w[k] > perfect_csi_uplink_power(s, snap.gains, a.rbs[k], p_ul, gamma))
                ++violations;
        }
    }
    report(7, "robust power below perfect-CSI power", violations == 0 && checked > 0,
           fmt("%llu trials, %llu occupied RBs checked, %llu violations", static_cast<unsigned long long>(trials),
               static_cast<unsigned long long>(checked), static_cast<unsigned long long>(violations)));
}

void determinism()
{
    bool ok = true;
    std::string detail;
    for (const char *name : {"fig3a", "fig3b", "fig3c"})
    {
        ExperimentConfig c = preset(name);
        c.workers = 1;
        const std::string serial = format_csv(run_experiment(c));
        const std::string again = format_csv(run_experiment(c));
        c.workers = 4;
        const std::string parallel = format_csv(run_experiment(c));
        const bool same = serial == again && serial == parallel;
        ok = ok && same;
        detail += fmt("%s %s (%zu bytes); ", name, same ? "identical" : "DIFFERS", serial.size());
    }
    report(8, "determinism", ok, detail + "workers 1, 1, 4");
}

void micro_oracles()
{
    const double noise_dbm = watts_to_dbm(noise_power(ChannelParams{}));
    const double expected_noise_dbm = -164.0 + 10.0 * std::log10(180e3);
    const bool noise_ok = std::abs(noise_dbm - (-111.45)) <= 0.01 && std::abs(noise_dbm - expected_noise_dbm) < 1e-9;

    const HexGrid grid = build_grid(3, 800.0, 25.0);
    const Scenario empty(grid, 2, 1, {}, Position3D{0.0, 0.0, 200.0}, -34.0, 2.2);
    LinkGains unit{GainMatrix(37, 2), GainMatrix(37, 2), GainMatrix(37, 2)};
    for (std::uint32_t id = 1; id <= 37; ++id)
        for (std::size_t n = 0; n < 2; ++n)
            unit.f(CellId{id}, n) = unit.g(CellId{id}, n) = 1.0;
    Allocation dl;
    dl.direction = Direction::downlink;
    dl.rbs = {0, 1};
    dl.power_w = {1.0, 3.0};
    Allocation ul = dl;
    ul.direction = Direction::uplink;
    const RunMetrics rd = downlink_rate(dl, unit, 1.0, empty, 1.0);
    const RunMetrics ru = uplink_rate(ul, unit, 1.0, empty);
    const bool spot_ok = rd.per_rb[0].rate_bps_hz == 1.0 && rd.per_rb[1].rate_bps_hz == 2.0 &&
                         ru.per_rb[0].rate_bps_hz == 1.0 && ru.per_rb[1].rate_bps_hz == 2.0;

    ExperimentConfig c;
    c.master_seed = 0xE05;
    std::mt19937_64 gen(5);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    std::uint64_t mismatches = 0;
    for (std::uint64_t i = 0; i < 1000; ++i)
    {
        const Snapshot snap = realization_snapshot(c, i);
        const Scenario &s = snap.scenario;
        Allocation a;
        a.direction = Direction::uplink;
        for (RbIndex n = 0; n < s.n_rbs(); ++n)
            if (u(gen) < 0.4)
            {
                a.rbs.push_back(n);
                a.power_w.push_back(0.01 * u(gen));
            }
        double brute = 0.0;
        for (std::size_t k = 0; k < a.rbs.size(); ++k)
            for (const TerrestrialUe &ue : s.ues())
                if (ue.rb == a.rbs[k])
                    brute = std::max(brute, a.power_w[k] * snap.gains.g(ue.cell, ue.rb));
        if (uplink_worst_interference(a, snap.gains, s) != brute)
            ++mismatches;
    }
    report(9, "micro-oracles", noise_ok && spot_ok && mismatches == 0,
           fmt("noise %.4f dBm; spot rates %s; worst-case interference vs double loop: %llu/1000 mismatches",
               noise_dbm, spot_ok ? "exact" : "WRONG", static_cast<unsigned long long>(mismatches)));
}

} // namespace

int main()
{
    const auto t0 = std::chrono::steady_clock::now();
    distance_ratio_bound();
    xi_closed_form();
    uplink_safety();
    downlink_ordering();
    downlink_dominance();
    uplink_tradeoff();
    power_ordering();
    determinism();
    micro_oracles();
    std::printf("%d of 9 criteria failed (%.1f s)\n", g_failures, seconds_since(t0));
    return g_failures == 0 ? 0 : 1;
}
