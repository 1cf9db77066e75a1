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


#include "uavicic/harness.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <mutex>
#include <optional>
#include <set>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "uavicic/allocation.hpp"
#include "uavicic/error.hpp"
#include "uavicic/geometry.hpp"
#include "uavicic/random.hpp"

namespace uavicic
{

namespace
{

std::vector<double> arange(double first, double last, double step)
{
    std::vector<double> out;
    for (int k = 0;; ++k)
    {
        const double v = first + k * step;
        if (v > last + 1e-9)
            break;
        out.push_back(v);
    }
    return out;
}

const std::set<std::string> kSchemes{"conventional", "sensing", "sensing_csi", "optimal"};

bool has_scheme(const ExperimentConfig &config, std::string_view name)
{
    return std::find(config.schemes.begin(), config.schemes.end(), name) != config.schemes.end();
}

std::string_view mode_name(ChannelMode mode) { return mode == ChannelMode::pure_los ? "pure-los" : "faded"; }

ChannelMode parse_mode(const std::string &text)
{
    if (text == "pure-los")
        return ChannelMode::pure_los;
    if (text == "faded")
        return ChannelMode::faded;
    throw Error(ErrorCode::parse, "unknown mode '" + text + "' (expected pure-los or faded)");
}

SweepKind parse_sweep(const std::string &text)
{
    if (text == "p_dl_dbm")
        return SweepKind::p_dl_dbm;
    if (text == "gamma_u_dbm")
        return SweepKind::gamma_u_dbm;
    throw Error(ErrorCode::parse, "unknown sweep '" + text + "' (expected p_dl_dbm or gamma_u_dbm)");
}

// One series of the output: which scheme, and for sensing the candidate count.
struct Series
{
    std::string label;
    Scheme scheme;
    std::uint32_t candidates = 0;
    bool perfect_csi = false;
};

std::vector<Series> build_series(const ExperimentConfig &config)
{
    const bool downlink = config.sweep == SweepKind::p_dl_dbm;
    const auto &ms = downlink ? config.m_d : config.m_u;
    std::vector<Series> out;
    if (has_scheme(config, "conventional"))
        out.push_back({"conventional", Scheme::conventional});
    if (has_scheme(config, "sensing"))
        for (std::uint32_t m : ms)
            out.push_back({"sensing_m" + std::to_string(m), Scheme::sensing, m});
    if (!downlink && has_scheme(config, "sensing_csi"))
        for (std::uint32_t m : ms)
            out.push_back({"sensing_m" + std::to_string(m) + "_csi", Scheme::sensing, m, true});
    if (has_scheme(config, "optimal"))
        out.push_back({"optimal", Scheme::optimal});
    return out;
}

std::string format_number(double v)
{
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

double parse_number(const std::string &field)
{
    const char *begin = field.c_str();
    char *end = nullptr;
    const double v = std::strtod(begin, &end);
    if (end == begin || *end != '\0')
        throw Error(ErrorCode::parse, "malformed numeric CSV field '" + field + "'");
    return v;
}

const char *const kCsvHeader =
    "scheme,sweep_name,sweep_value,mean_rate_bps_hz,mean_iul_dbm,max_iul_dbm,n_realizations,stderr";

} // namespace

ExperimentConfig::ExperimentConfig() : p_dl_dbm(arange(30.0, 46.0, 2.0)), gamma_u_dbm(arange(-120.0, -70.0, 5.0)) {}

void ExperimentConfig::validate() const
{
    channel.validate();
    auto fail = [](const std::string &msg) { throw Error(ErrorCode::invalid_parameter, msg); };
    if (!(cell_radius_m > 0.0))
        fail("cell_radius_m must be positive");
    if (!(bs_height_m >= 0.0))
        fail("bs_height_m must be non-negative");
    if (!(uav_altitude_m > bs_height_m))
        fail("uav_altitude_m must exceed bs_height_m");
    if (n_rbs < 1)
        fail("n_rbs must be at least 1");
    if (realizations < 1)
        fail("realizations must be at least 1");
    if (workers < 1)
        fail("workers must be at least 1");
    if (schemes.empty())
        fail("schemes must not be empty");
    for (const std::string &s : schemes)
        if (!kSchemes.contains(s))
            fail("unknown scheme '" + s + "'");
    if (!(sensing_noise_db >= 0.0))
        fail("sensing_noise_db must be non-negative");
    if (!std::isfinite(p_ul_dbm))
        fail("p_ul_dbm must be finite");

    const bool downlink = sweep == SweepKind::p_dl_dbm;
    if (downlink && has_scheme(*this, "sensing_csi"))
        fail("sensing_csi is an uplink scheme; use sweep gamma_u_dbm");
    const auto &points = downlink ? p_dl_dbm : gamma_u_dbm;
    if (points.empty())
        fail(std::string(sweep_name(sweep)) + " sweep must not be empty");
    for (double v : points)
        if (!std::isfinite(v))
            fail("sweep values must be finite");

    const std::uint32_t requested = downlink ? n_d : n_u;
    if (requested < 1 || requested > n_rbs)
        fail(std::string(downlink ? "n_d" : "n_u") + " must lie in [1, n_rbs]");
    const auto &ms = downlink ? m_d : m_u;
    const bool sensing = has_scheme(*this, "sensing") || has_scheme(*this, "sensing_csi");
    if (sensing && ms.empty())
        fail(std::string(downlink ? "m_d" : "m_u") + " must not be empty when sensing schemes run");
    for (std::uint32_t m : ms)
        if (m <= requested)
            fail("candidate counts must exceed the requested RB count");
}

ExperimentConfig preset(std::string_view name)
{
    ExperimentConfig c;
    if (name == "fig3a")
    {
        c.sweep = SweepKind::p_dl_dbm;
        c.schemes = {"conventional", "sensing", "optimal"};
        c.m_d = {5, 10, 15};
    }
    else if (name == "fig3b")
    {
        c.sweep = SweepKind::gamma_u_dbm;
        c.schemes = {"sensing", "sensing_csi"};
        c.m_u = {12};
    }
    else if (name == "fig3c")
    {
        c.sweep = SweepKind::gamma_u_dbm;
        c.schemes = {"conventional", "sensing", "optimal"};
        c.m_u = {12, 20};
        // Extends past the saturation point so the high-threshold regime is covered.
        c.gamma_u_dbm = arange(-120.0, -40.0, 5.0);
    }
    else
    {
        throw Error(ErrorCode::invalid_parameter, "unknown preset '" + std::string(name) + "'");
    }
    return c;
}

ExperimentConfig config_from_json(std::string_view text, const ExperimentConfig &base)
{
    using nlohmann::json;
    json doc;
    try
    {
        doc = json::parse(text);
    }
    catch (const json::exception &e)
    {
        throw Error(ErrorCode::parse, std::string("config is not valid JSON: ") + e.what());
    }
    if (!doc.is_object())
        throw Error(ErrorCode::parse, "config must be a JSON object");

    ExperimentConfig c = base;
    try
    {
        for (const auto &[key, value] : doc.items())
        {
            if (key == "beta0_db") c.channel.beta0_db = value.get<double>();
            else if (key == "alpha_los") c.channel.alpha_los = value.get<double>();
            else if (key == "carrier_hz") c.channel.carrier_hz = value.get<double>();
            else if (key == "rician_k_db") c.channel.rician_k_db = value.get<double>();
            else if (key == "noise_density_dbm_hz") c.channel.noise_density_dbm_hz = value.get<double>();
            else if (key == "rb_bandwidth_hz") c.channel.rb_bandwidth_hz = value.get<double>();
            else if (key == "antenna_elements") c.channel.antenna_elements = value.get<std::uint32_t>();
            else if (key == "downtilt_deg") c.channel.downtilt_deg = value.get<double>();
            else if (key == "los_probability") c.channel.los_probability = value.get<double>();
            else if (key == "nlos_exponent") c.channel.nlos_exponent = value.get<double>();
            else if (key == "sensing_fading") c.channel.sensing_fading = value.get<bool>();
            else if (key == "tiers") c.tiers = value.get<std::uint32_t>();
            else if (key == "cell_radius_m") c.cell_radius_m = value.get<double>();
            else if (key == "bs_height_m") c.bs_height_m = value.get<double>();
            else if (key == "uav_altitude_m") c.uav_altitude_m = value.get<double>();
            else if (key == "n_rbs") c.n_rbs = value.get<std::uint32_t>();
            else if (key == "n_ues") c.n_ues = value.get<std::uint32_t>();
            else if (key == "q") c.q = value.get<std::uint32_t>();
            else if (key == "n_d") c.n_d = value.get<std::uint32_t>();
            else if (key == "n_u") c.n_u = value.get<std::uint32_t>();
            else if (key == "p_dl_dbm") c.p_dl_dbm = value.get<std::vector<double>>();
            else if (key == "p_ul_dbm") c.p_ul_dbm = value.get<double>();
            else if (key == "gamma_u_dbm") c.gamma_u_dbm = value.get<std::vector<double>>();
            else if (key == "m_d") c.m_d = value.get<std::vector<std::uint32_t>>();
            else if (key == "m_u") c.m_u = value.get<std::vector<std::uint32_t>>();
            else if (key == "realizations") c.realizations = value.get<std::uint32_t>();
            else if (key == "master_seed") c.master_seed = value.get<std::uint64_t>();
            else if (key == "mode") c.mode = parse_mode(value.get<std::string>());
            else if (key == "schemes") c.schemes = value.get<std::vector<std::string>>();
            else if (key == "sweep") c.sweep = parse_sweep(value.get<std::string>());
            else if (key == "enforce_ue_icic") c.enforce_ue_icic = value.get<bool>();
            else if (key == "sensing_noise_db") c.sensing_noise_db = value.get<double>();
            else if (key == "workers") c.workers = value.get<std::uint32_t>();
            else throw Error(ErrorCode::parse, "unknown config key '" + key + "'");
        }
    }
    catch (const json::exception &e)
    {
        throw Error(ErrorCode::parse, std::string("config value has the wrong type: ") + e.what());
    }
    return c;
}

std::string config_to_json(const ExperimentConfig &c)
{
    nlohmann::ordered_json doc = {
        {"beta0_db", c.channel.beta0_db},
        {"alpha_los", c.channel.alpha_los},
        {"carrier_hz", c.channel.carrier_hz},
        {"rician_k_db", c.channel.rician_k_db},
        {"noise_density_dbm_hz", c.channel.noise_density_dbm_hz},
        {"rb_bandwidth_hz", c.channel.rb_bandwidth_hz},
        {"antenna_elements", c.channel.antenna_elements},
        {"downtilt_deg", c.channel.downtilt_deg},
        {"los_probability", c.channel.los_probability},
        {"nlos_exponent", c.channel.nlos_exponent},
        {"sensing_fading", c.channel.sensing_fading},
        {"tiers", c.tiers},
        {"cell_radius_m", c.cell_radius_m},
        {"bs_height_m", c.bs_height_m},
        {"uav_altitude_m", c.uav_altitude_m},
        {"n_rbs", c.n_rbs},
        {"n_ues", c.n_ues},
        {"q", c.q},
        {"n_d", c.n_d},
        {"n_u", c.n_u},
        {"p_dl_dbm", c.p_dl_dbm},
        {"p_ul_dbm", c.p_ul_dbm},
        {"gamma_u_dbm", c.gamma_u_dbm},
        {"m_d", c.m_d},
        {"m_u", c.m_u},
        {"realizations", c.realizations},
        {"master_seed", c.master_seed},
        {"mode", mode_name(c.mode)},
        {"schemes", c.schemes},
        {"sweep", sweep_name(c.sweep)},
        {"enforce_ue_icic", c.enforce_ue_icic},
        {"sensing_noise_db", c.sensing_noise_db},
        {"workers", c.workers},
    };
    return doc.dump(2);
}

std::string_view sweep_name(SweepKind kind) { return kind == SweepKind::p_dl_dbm ? "p_dl_dbm" : "gamma_u_dbm"; }

const std::vector<double> &sweep_values(const ExperimentConfig &config)
{
    return config.sweep == SweepKind::p_dl_dbm ? config.p_dl_dbm : config.gamma_u_dbm;
}

std::vector<std::string> series_labels(const ExperimentConfig &config)
{
    std::vector<std::string> out;
    for (const Series &s : build_series(config))
        out.push_back(s.label);
    return out;
}

Scenario realization_scenario(const ExperimentConfig &config, std::uint64_t index)
{
    const HexGrid grid = build_grid(config.tiers, config.cell_radius_m, config.bs_height_m);
    ScenarioOptions options;
    options.n_rbs = config.n_rbs;
    options.n_ues = config.n_ues;
    options.q = config.q;
    options.uav_altitude_m = config.uav_altitude_m;
    options.enforce_ue_icic = config.enforce_ue_icic;
    RandomStream rng = derive_stream(config.master_seed, index, StreamId::scenario);
    Scenario scenario = generate_scenario(grid, options, config.channel.beta0_db, config.channel.alpha_los, rng);
    scenario.seed = config.master_seed;
    scenario.index = index;
    return scenario;
}

Snapshot realization_snapshot(const ExperimentConfig &config, std::uint64_t index)
{
    Scenario scenario = realization_scenario(config, index);
    RandomStream fading_rng = derive_stream(config.master_seed, index, StreamId::fading);
    RandomStream los_rng = derive_stream(config.master_seed, index, StreamId::los_state);
    LinkGains gains = compute_link_gains(scenario, config.channel, config.mode, fading_rng, los_rng);
    return {std::move(scenario), std::move(gains)};
}

RealizationResult run_realization(const ExperimentConfig &config, std::uint64_t index)
{
    try
    {
        const Snapshot snap = realization_snapshot(config, index);
        const Scenario &scenario = snap.scenario;
        const LinkGains &gains = snap.gains;
        const double sigma2 = noise_power(config.channel);
        const std::vector<Series> series = build_series(config);
        const std::vector<double> &points = sweep_values(config);
        const double p_ul = dbm_to_watts(config.p_ul_dbm);

        // Every call gets a fresh copy of its scheme's substream, so random
        // choices are shared across sweep points and candidate counts.
        auto stream = [&](StreamId id) { return derive_stream(config.master_seed, index, id); };
        RandomStream noise_rng = stream(StreamId::measurement_noise);
        MeasurementNoise noise{config.sensing_noise_db, &noise_rng};

        RealizationResult result;
        result.index = index;
        result.metrics.assign(series.size(), std::vector<RunMetrics>(points.size()));
        if (config.sweep == SweepKind::p_dl_dbm)
        {
            for (std::size_t k = 0; k < points.size(); ++k)
            {
                const double p_dl = dbm_to_watts(points[k]);
                for (std::size_t s = 0; s < series.size(); ++s)
                {
                    Allocation alloc;
                    noise_rng = stream(StreamId::measurement_noise);
                    if (series[s].scheme == Scheme::conventional)
                    {
                        RandomStream rng = stream(StreamId::conventional_downlink);
                        alloc = conventional_downlink(scenario, config.n_d, p_dl, rng);
                    }
                    else if (series[s].scheme == Scheme::sensing)
                    {
                        RandomStream rng = stream(StreamId::sensing_downlink);
                        alloc = sensing_downlink(scenario, gains, series[s].candidates, config.n_d, p_dl, rng, noise);
                    }
                    else
                    {
                        alloc = optimal_downlink(scenario, gains, config.n_d, p_dl, sigma2);
                    }
                    result.metrics[s][k] = downlink_rate(alloc, gains, sigma2, scenario, p_dl);
                }
            }
        }
        else
        {
            const RhoBound rho = worst_case_ratio(config.uav_altitude_m, config.bs_height_m, config.cell_radius_m);
            for (std::size_t k = 0; k < points.size(); ++k)
            {
                const double gamma = dbm_to_watts(points[k]);
                for (std::size_t s = 0; s < series.size(); ++s)
                {
                    Allocation alloc;
                    noise_rng = stream(StreamId::measurement_noise);
                    if (series[s].scheme == Scheme::conventional)
                    {
                        RandomStream rng = stream(StreamId::conventional_uplink);
                        alloc = conventional_uplink(scenario, config.n_u, p_ul, rng);
                    }
                    else if (series[s].scheme == Scheme::sensing)
                    {
                        RandomStream rng = stream(StreamId::sensing_uplink);
                        alloc = sensing_uplink(scenario, gains, series[s].candidates, config.n_u, p_ul, gamma, rho,
                                               config.channel.alpha_los, rng, noise);
                        if (series[s].perfect_csi)
                            alloc = with_perfect_csi_power(alloc, scenario, gains, p_ul, gamma);
                    }
                    else
                    {
                        alloc = optimal_uplink(scenario, gains, config.n_u, p_ul, gamma);
                    }
                    result.metrics[s][k] = uplink_rate(alloc, gains, sigma2, scenario);
                }
            }
        }
        return result;
    }
    catch (const Error &e)
    {
        throw Error(e.code(), "realization " + std::to_string(index) + ": " + e.what());
    }
}

std::vector<AggregateRow> aggregate(const ExperimentConfig &config, const std::vector<RealizationResult> &results)
{
    const std::vector<std::string> labels = series_labels(config);
    const std::vector<double> &points = sweep_values(config);
    const bool downlink = config.sweep == SweepKind::p_dl_dbm;
    const double n = static_cast<double>(results.size());

    std::vector<AggregateRow> rows;
    for (std::size_t s = 0; s < labels.size(); ++s)
    {
        for (std::size_t k = 0; k < points.size(); ++k)
        {
            double sum_rate = 0.0;
            double sum_iul = 0.0;
            double max_iul = 0.0;
            for (const RealizationResult &r : results)
            {
                const RunMetrics &m = r.metrics[s][k];
                sum_rate += downlink ? m.r_dl_bps_hz : m.r_ul_bps_hz;
                sum_iul += m.i_ul_w;
                max_iul = std::max(max_iul, m.i_ul_w);
            }
            const double mean_rate = sum_rate / n;
            double ss = 0.0;
            for (const RealizationResult &r : results)
            {
                const RunMetrics &m = r.metrics[s][k];
                const double d = (downlink ? m.r_dl_bps_hz : m.r_ul_bps_hz) - mean_rate;
                ss += d * d;
            }
            AggregateRow row;
            row.scheme = labels[s];
            row.sweep_name = std::string(sweep_name(config.sweep));
            row.sweep_value = points[k];
            row.mean_rate_bps_hz = mean_rate;
            const double nan = std::numeric_limits<double>::quiet_NaN();
            row.mean_iul_dbm = downlink ? nan : watts_to_dbm(sum_iul / n);
            row.max_iul_dbm = downlink ? nan : watts_to_dbm(max_iul);
            row.n_realizations = results.size();
            row.stderr_rate = results.size() > 1 ? std::sqrt(ss / (n - 1.0)) / std::sqrt(n) : 0.0;
            rows.push_back(std::move(row));
        }
    }
    return rows;
}

std::vector<AggregateRow> run_experiment(const ExperimentConfig &config)
{
    config.validate();
    const std::uint32_t total = config.realizations;
    const std::uint32_t workers = std::min(config.workers, total);
    std::vector<RealizationResult> results(total);
    std::atomic<bool> failed{false};
    std::mutex error_mutex;
    std::optional<std::pair<std::uint64_t, Error>> first_error;

    auto work = [&](std::uint32_t worker) {
        for (std::uint32_t i = worker; i < total && !failed.load(); i += workers)
        {
            try
            {
                RealizationResult r = run_realization(config, i);
                for (auto &per_series : r.metrics)
                    for (RunMetrics &m : per_series)
                        m.per_rb.clear();
                results[i] = std::move(r);
            }
            catch (const Error &e)
            {
                std::lock_guard lock(error_mutex);
                if (!first_error || first_error->first > i)
                    first_error.emplace(i, e);
                failed.store(true);
            }
        }
    };

    if (workers == 1)
    {
        work(0);
    }
    else
    {
        std::vector<std::thread> pool;
        for (std::uint32_t w = 0; w < workers; ++w)
            pool.emplace_back(work, w);
        for (std::thread &t : pool)
            t.join();
    }
    if (first_error)
        throw first_error->second;
    return aggregate(config, results);
}

std::string format_csv(const std::vector<AggregateRow> &rows)
{
    if (rows.empty())
        throw Error(ErrorCode::invalid_parameter, "no rows to emit");
    std::ostringstream out;
    out << kCsvHeader << '\n';
    for (const AggregateRow &r : rows)
    {
        out << r.scheme << ',' << r.sweep_name << ',' << format_number(r.sweep_value) << ','
            << format_number(r.mean_rate_bps_hz) << ',' << format_number(r.mean_iul_dbm) << ','
            << format_number(r.max_iul_dbm) << ',' << r.n_realizations << ',' << format_number(r.stderr_rate) << '\n';
    }
    return out.str();
}

std::vector<AggregateRow> parse_csv(std::string_view text)
{
    std::istringstream in{std::string(text)};
    std::string line;
    if (!std::getline(in, line) || line != kCsvHeader)
        throw Error(ErrorCode::parse, "CSV header mismatch");
    std::vector<AggregateRow> rows;
    while (std::getline(in, line))
    {
        if (line.empty())
            continue;
        std::vector<std::string> fields;
        std::stringstream ls(line);
        std::string field;
        while (std::getline(ls, field, ','))
            fields.push_back(field);
        if (fields.size() != 8)
            throw Error(ErrorCode::parse, "CSV row has " + std::to_string(fields.size()) + " fields, expected 8");
        AggregateRow r;
        r.scheme = fields[0];
        r.sweep_name = fields[1];
        r.sweep_value = parse_number(fields[2]);
        r.mean_rate_bps_hz = parse_number(fields[3]);
        r.mean_iul_dbm = parse_number(fields[4]);
        r.max_iul_dbm = parse_number(fields[5]);
        r.n_realizations = static_cast<std::uint64_t>(parse_number(fields[6]));
        r.stderr_rate = parse_number(fields[7]);
        rows.push_back(std::move(r));
    }
    return rows;
}

void emit_csv(const std::vector<AggregateRow> &rows, const std::string &path)
{
    const std::string text = format_csv(rows);
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out)
        throw Error(ErrorCode::io, "cannot open '" + path + "' for writing");
    out << text;
    out.flush();
    if (!out)
        throw Error(ErrorCode::io, "failed writing '" + path + "'");
}

} // namespace uavicic
