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


#include "uavicic/uavicic.h"

#include <cstdlib>
#include <cstring>
#include <fstream>
#include <new>
#include <sstream>
#include <string>

#include "uavicic/channel.hpp"
#include "uavicic/error.hpp"
#include "uavicic/geometry.hpp"
#include "uavicic/harness.hpp"
#include "uavicic/scenario.hpp"

struct uavicic_config
{
    uavicic::ExperimentConfig config;
};

struct uavicic_result
{
    std::vector<uavicic::AggregateRow> rows;
};

namespace
{

thread_local std::string g_last_error;

uavicic_status to_status(uavicic::ErrorCode code)
{
    switch (code)
    {
    case uavicic::ErrorCode::invalid_parameter: return UAVICIC_ERR_INVALID_ARGUMENT;
    case uavicic::ErrorCode::domain: return UAVICIC_ERR_DOMAIN;
    case uavicic::ErrorCode::infeasible_occupancy: return UAVICIC_ERR_INFEASIBLE_OCCUPANCY;
    case uavicic::ErrorCode::insufficient_rbs: return UAVICIC_ERR_INSUFFICIENT_RBS;
    case uavicic::ErrorCode::io: return UAVICIC_ERR_IO;
    case uavicic::ErrorCode::parse: return UAVICIC_ERR_PARSE;
    }
    return UAVICIC_ERR_INTERNAL;
}

uavicic_status fail(uavicic_status status, std::string message)
{
    g_last_error = std::move(message);
    return status;
}

// Runs `fn`, translating exceptions into status codes.
template <class Fn>
uavicic_status guarded(Fn &&fn)
{
    try
    {
        fn();
        return UAVICIC_OK;
    }
    catch (const uavicic::Error &e)
    {
        return fail(to_status(e.code()), e.what());
    }
    catch (const std::bad_alloc &)
    {
        return fail(UAVICIC_ERR_INTERNAL, "out of memory");
    }
    catch (const std::exception &e)
    {
        return fail(UAVICIC_ERR_INTERNAL, e.what());
    }
    catch (...)
    {
        return fail(UAVICIC_ERR_INTERNAL, "unknown error");
    }
}

char *copy_string(const std::string &s)
{
    char *out = static_cast<char *>(std::malloc(s.size() + 1));
    if (out == nullptr)
        throw std::bad_alloc();
    std::memcpy(out, s.c_str(), s.size() + 1);
    return out;
}

#define UAVICIC_REQUIRE(cond, what)                                                                                    \
    do                                                                                                                 \
    {                                                                                                                  \
        if (!(cond))                                                                                                   \
            return fail(UAVICIC_ERR_INVALID_ARGUMENT, what);                                                           \
    } while (0)

} // namespace

extern "C" {

const char *uavicic_version(void) { return "1.0.0"; }

const char *uavicic_last_error(void) { return g_last_error.c_str(); }

void uavicic_string_free(char *s) { std::free(s); }

uavicic_status uavicic_config_create_default(uavicic_config **out)
{
    UAVICIC_REQUIRE(out != nullptr, "out is NULL");
    return guarded([&] { *out = new uavicic_config{}; });
}

uavicic_status uavicic_config_create_preset(const char *name, uavicic_config **out)
{
    UAVICIC_REQUIRE(out != nullptr && name != nullptr, "NULL argument");
    return guarded([&] { *out = new uavicic_config{uavicic::preset(name)}; });
}

uavicic_status uavicic_config_merge_json(uavicic_config *cfg, const char *json)
{
    UAVICIC_REQUIRE(cfg != nullptr && json != nullptr, "NULL argument");
    return guarded([&] { cfg->config = uavicic::config_from_json(json, cfg->config); });
}

uavicic_status uavicic_config_merge_file(uavicic_config *cfg, const char *path)
{
    UAVICIC_REQUIRE(cfg != nullptr && path != nullptr, "NULL argument");
    return guarded([&] {
        std::ifstream in(path, std::ios::binary);
        if (!in)
            throw uavicic::Error(uavicic::ErrorCode::io, std::string("cannot open config file '") + path + "'");
        std::ostringstream text;
        text << in.rdbuf();
        cfg->config = uavicic::config_from_json(text.str(), cfg->config);
    });
}

uavicic_status uavicic_config_set_seed(uavicic_config *cfg, uint64_t seed)
{
    UAVICIC_REQUIRE(cfg != nullptr, "cfg is NULL");
    cfg->config.master_seed = seed;
    return UAVICIC_OK;
}

uavicic_status uavicic_config_set_realizations(uavicic_config *cfg, uint32_t realizations)
{
    UAVICIC_REQUIRE(cfg != nullptr, "cfg is NULL");
    UAVICIC_REQUIRE(realizations >= 1, "realizations must be at least 1");
    cfg->config.realizations = realizations;
    return UAVICIC_OK;
}

uavicic_status uavicic_config_set_mode(uavicic_config *cfg, const char *mode)
{
    UAVICIC_REQUIRE(cfg != nullptr && mode != nullptr, "NULL argument");
    const std::string m = mode;
    if (m == "pure-los")
        cfg->config.mode = uavicic::ChannelMode::pure_los;
    else if (m == "faded")
        cfg->config.mode = uavicic::ChannelMode::faded;
    else
        return fail(UAVICIC_ERR_INVALID_ARGUMENT, "unknown mode '" + m + "'");
    return UAVICIC_OK;
}

uavicic_status uavicic_config_set_workers(uavicic_config *cfg, uint32_t workers)
{
    UAVICIC_REQUIRE(cfg != nullptr, "cfg is NULL");
    UAVICIC_REQUIRE(workers >= 1, "workers must be at least 1");
    cfg->config.workers = workers;
    return UAVICIC_OK;
}

uavicic_status uavicic_config_validate(const uavicic_config *cfg)
{
    UAVICIC_REQUIRE(cfg != nullptr, "cfg is NULL");
    return guarded([&] { cfg->config.validate(); });
}

uavicic_status uavicic_config_to_json(const uavicic_config *cfg, char **json_out)
{
    UAVICIC_REQUIRE(cfg != nullptr && json_out != nullptr, "NULL argument");
    return guarded([&] { *json_out = copy_string(uavicic::config_to_json(cfg->config)); });
}

void uavicic_config_destroy(uavicic_config *cfg) { delete cfg; }

uavicic_status uavicic_run_experiment(const uavicic_config *cfg, uavicic_result **out)
{
    UAVICIC_REQUIRE(cfg != nullptr && out != nullptr, "NULL argument");
    return guarded([&] { *out = new uavicic_result{uavicic::run_experiment(cfg->config)}; });
}

size_t uavicic_result_row_count(const uavicic_result *res) { return res == nullptr ? 0 : res->rows.size(); }

uavicic_status uavicic_result_row(const uavicic_result *res, size_t row, const char **scheme, double *sweep_value,
                                  double *mean_rate_bps_hz, double *mean_iul_dbm, double *max_iul_dbm,
                                  uint64_t *n_realizations, double *stderr_rate)
{
    UAVICIC_REQUIRE(res != nullptr, "res is NULL");
    UAVICIC_REQUIRE(row < res->rows.size(), "row index out of range");
    const uavicic::AggregateRow &r = res->rows[row];
    if (scheme) *scheme = r.scheme.c_str();
    if (sweep_value) *sweep_value = r.sweep_value;
    if (mean_rate_bps_hz) *mean_rate_bps_hz = r.mean_rate_bps_hz;
    if (mean_iul_dbm) *mean_iul_dbm = r.mean_iul_dbm;
    if (max_iul_dbm) *max_iul_dbm = r.max_iul_dbm;
    if (n_realizations) *n_realizations = r.n_realizations;
    if (stderr_rate) *stderr_rate = r.stderr_rate;
    return UAVICIC_OK;
}

uavicic_status uavicic_result_to_csv(const uavicic_result *res, char **csv_out)
{
    UAVICIC_REQUIRE(res != nullptr && csv_out != nullptr, "NULL argument");
    return guarded([&] { *csv_out = copy_string(uavicic::format_csv(res->rows)); });
}

uavicic_status uavicic_result_write_csv(const uavicic_result *res, const char *path)
{
    UAVICIC_REQUIRE(res != nullptr && path != nullptr, "NULL argument");
    return guarded([&] { uavicic::emit_csv(res->rows, path); });
}

void uavicic_result_destroy(uavicic_result *res) { delete res; }

uavicic_status uavicic_dump_scenario(const uavicic_config *cfg, uint64_t index, char **json_out)
{
    UAVICIC_REQUIRE(cfg != nullptr && json_out != nullptr, "NULL argument");
    return guarded([&] {
        *json_out = copy_string(uavicic::scenario_to_json(uavicic::realization_scenario(cfg->config, index)));
    });
}

uavicic_status uavicic_worst_case_ratio(double uav_height_m, double bs_height_m, double cell_radius_m, double *rho,
                                        double *xi_m)
{
    return guarded([&] {
        const uavicic::RhoBound b = uavicic::worst_case_ratio(uav_height_m, bs_height_m, cell_radius_m);
        if (rho) *rho = b.rho;
        if (xi_m) *xi_m = b.xi_m;
    });
}

uavicic_status uavicic_noise_power_dbm(double density_dbm_hz, double bandwidth_hz, double *out_dbm)
{
    UAVICIC_REQUIRE(out_dbm != nullptr, "out_dbm is NULL");
    return guarded([&] {
        uavicic::ChannelParams p;
        p.noise_density_dbm_hz = density_dbm_hz;
        p.rb_bandwidth_hz = bandwidth_hz;
        p.validate();
        *out_dbm = uavicic::watts_to_dbm(uavicic::noise_power(p));
    });
}

} // extern "C"
