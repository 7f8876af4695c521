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

#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "pcrpa/io.hpp"
#include "pcrpa/synth.hpp"

namespace pcrpa::cli
{

/*!MD
# RunConfig
Resolved settings of one experiment run

Read from a flat `key = value` file (`#` starts a comment), then overridden by `--set key=value`
and the dedicated flags. Angles are given in degrees. `resolved()` lists every key in a fixed
order; it is embedded in all output files.
MD!*/
struct RunConfig
{
    std::size_t rows = 16;
    std::size_t cols = 16;
    double spacing_wavelengths = 0.5;

    std::string aep_file; // empty selects the synthetic element model
    SyntheticElementSpec element;
    double grid_step_deg = 1.0;

    double beam_theta_deg = 120.0;
    double beam_phi_deg = 15.0;
    double gamma_deg = 90.0;
    double eta_deg = 0.0;

    double psl_threshold_db = -12.5;
    double xpl_threshold_db = -40.0;
    std::size_t max_generations = 200;
    std::size_t max_adjustments = 10;
    std::string method = "random"; // synth-arb: random | bga

    GaConfig ga;
    double mainlobe_factor = 2.0;
    double fitness_step_deg = 2.0;
    bool calibrate = true;

    std::size_t n_samples = 2000;
    std::string mc_mode = "both"; // arbitrary | dual | both

    std::string sweep_parameter = "gamma";
    std::vector<double> sweep_values{0.0, 15.0, 30.0, 45.0, 60.0, 75.0, 90.0};
    bool include_dual = false;

    std::string aep_output = "aep.bin";
    std::uint64_t seed = 1;
    std::string out = "out";

    // Sets one key from its text form; config_error for unknown keys or malformed values.
    void set(const std::string &key, const std::string &value);

    void load_file(const std::filesystem::path &path);

    void validate() const;

    io::Metadata resolved() const;
};

std::vector<std::string> command_names();

// Runs one subcommand. Returns the process exit code: 0 on success, 1 when a synthesis finishes
// without meeting its thresholds, 2 on configuration, input or geometry errors. Diagnostics go to
// `log`.
int run_command(const std::string &command, const RunConfig &config, std::ostream &log);

} // namespace pcrpa::cli
