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


// Command-line front end. Talks to the simulator only through the C API.

#include <cstdint>
#include <cstdio>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "uavicic/uavicic.h"

namespace
{

struct ConfigHandle
{
    uavicic_config *ptr = nullptr;
    ~ConfigHandle() { uavicic_config_destroy(ptr); }
};

struct ResultHandle
{
    uavicic_result *ptr = nullptr;
    ~ResultHandle() { uavicic_result_destroy(ptr); }
};

bool check(uavicic_status status)
{
    if (status == UAVICIC_OK)
        return true;
    std::cerr << "uavicic: error: " << uavicic_last_error() << " (status " << static_cast<int>(status) << ")\n";
    return false;
}

// Preset first, then config file keys on top.
bool load_config(ConfigHandle &cfg, const std::string &preset, const std::string &config_path)
{
    if (!preset.empty())
    {
        if (!check(uavicic_config_create_preset(preset.c_str(), &cfg.ptr)))
            return false;
    }
    else if (!check(uavicic_config_create_default(&cfg.ptr)))
    {
        return false;
    }
    if (!config_path.empty() && !check(uavicic_config_merge_file(cfg.ptr, config_path.c_str())))
        return false;
    return true;
}

} // namespace

int main(int argc, char **argv)
{
    CLI::App app{"Monte Carlo simulator for sensing-assisted interference coordination of a cellular-connected UAV"};
    app.require_subcommand(1);
    app.set_version_flag("--version", std::string(uavicic_version()));

    std::string config_path;
    std::string preset;
    std::optional<std::uint64_t> seed;
    std::optional<std::uint32_t> realizations;
    std::optional<std::uint32_t> workers;
    std::string mode;
    std::string out_path;
    std::uint64_t index = 0;

    CLI::App *run = app.add_subcommand("run", "Run an experiment and write aggregate CSV");
    run->add_option("--config", config_path, "JSON config file")->check(CLI::ExistingFile);
    run->add_option("--preset", preset, "Experiment preset")->check(CLI::IsMember({"fig3a", "fig3b", "fig3c"}));
    run->add_option("--seed", seed, "Master seed");
    run->add_option("--realizations", realizations, "Number of Monte Carlo realizations")->check(CLI::PositiveNumber);
    run->add_option("--workers", workers, "Worker threads")->check(CLI::PositiveNumber);
    run->add_option("--mode", mode, "Channel mode")->check(CLI::IsMember({"pure-los", "faded"}));
    run->add_option("--out", out_path, "Output CSV path (stdout when omitted)");

    CLI::App *validate = app.add_subcommand("validate-config", "Check a config file and print the resolved config");
    validate->add_option("--config", config_path, "JSON config file")->required()->check(CLI::ExistingFile);
    validate->add_option("--preset", preset, "Preset to use as the base")
        ->check(CLI::IsMember({"fig3a", "fig3b", "fig3c"}));

    CLI::App *dump = app.add_subcommand("dump-scenario", "Print the JSON snapshot of one realization");
    dump->add_option("--seed", seed, "Master seed");
    dump->add_option("--index", index, "Realization index");
    dump->add_option("--config", config_path, "JSON config file")->check(CLI::ExistingFile);
    dump->add_option("--preset", preset, "Experiment preset")->check(CLI::IsMember({"fig3a", "fig3b", "fig3c"}));

    CLI11_PARSE(app, argc, argv);

    ConfigHandle cfg;
    if (!load_config(cfg, preset, config_path))
        return 1;
    if (seed && !check(uavicic_config_set_seed(cfg.ptr, *seed)))
        return 1;

    if (*run)
    {
        if (realizations && !check(uavicic_config_set_realizations(cfg.ptr, *realizations)))
            return 1;
        if (workers && !check(uavicic_config_set_workers(cfg.ptr, *workers)))
            return 1;
        if (!mode.empty() && !check(uavicic_config_set_mode(cfg.ptr, mode.c_str())))
            return 1;
        ResultHandle res;
        if (!check(uavicic_run_experiment(cfg.ptr, &res.ptr)))
            return 1;
        if (!out_path.empty())
            return check(uavicic_result_write_csv(res.ptr, out_path.c_str())) ? 0 : 1;
        char *csv = nullptr;
        if (!check(uavicic_result_to_csv(res.ptr, &csv)))
            return 1;
        std::fputs(csv, stdout);
        uavicic_string_free(csv);
        return 0;
    }

    if (*validate)
    {
        if (!check(uavicic_config_validate(cfg.ptr)))
            return 1;
        char *json = nullptr;
        if (!check(uavicic_config_to_json(cfg.ptr, &json)))
            return 1;
        std::cout << json << '\n';
        uavicic_string_free(json);
        return 0;
    }

    char *json = nullptr;
    if (!check(uavicic_dump_scenario(cfg.ptr, index, &json)))
        return 1;
    std::cout << json << '\n';
    uavicic_string_free(json);
    return 0;
}
