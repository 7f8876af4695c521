// SPDX-License-Identifier: Apache-2.0
//
// pcrpa - pattern synthesis for polarization-coding reconfigurable phased arrays
// Copyright (C) 2026 The pcrpa authors
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

// Command-line front end: pcrpa_cli <command> [--config FILE] [--set key=value]... [--seed N] [--out DIR]

#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "pcrpa/cli.hpp"
#include "pcrpa/error.hpp"

int main(int argc, char **argv)
{
    CLI::App app{"Polarization-coded reconfigurable phased array synthesis"};
    app.require_subcommand(1);

    std::string config_file;
    std::vector<std::string> overrides;
    std::uint64_t seed = 0;
    std::string out;
    double grid_step = 0.0;

    for (const auto &name : pcrpa::cli::command_names())
    {
        CLI::App *sub = app.add_subcommand(name);
        sub->add_option("--config", config_file, "key = value configuration file")->check(CLI::ExistingFile);
        sub->add_option("--set", overrides, "override one key (key=value), repeatable");
        sub->add_option("--seed", seed, "master seed");
        sub->add_option("--out", out, "output directory");
        sub->add_option("--grid-step", grid_step, "angular grid step in degrees");
    }

    try
    {
        app.parse(argc, argv);
    }
    catch (const CLI::ParseError &e)
    {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    const CLI::App *sub = app.get_subcommands().front();
    pcrpa::cli::RunConfig config;
    try
    {
        if (!config_file.empty())
            config.load_file(config_file);
        for (const auto &kv : overrides)
        {
            const auto eq = kv.find('=');
            if (eq == std::string::npos)
                pcrpa::fail(pcrpa::ErrorKind::config_error, "--set expects key=value, got '" + kv + "'");
            config.set(kv.substr(0, eq), kv.substr(eq + 1));
        }
        if (sub->count("--seed"))
            config.seed = seed;
        if (sub->count("--out"))
            config.out = out;
        if (sub->count("--grid-step"))
            config.grid_step_deg = grid_step;
    }
    catch (const pcrpa::Error &e)
    {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return pcrpa::cli::run_command(sub->get_name(), config, std::cerr);
}
