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
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "pcrpa/synth.hpp"

namespace pcrpa::io
{

using Json = nlohmann::ordered_json;

// Ordered key/value pairs written as "# key=value" CSV header lines and as a JSON object
using Metadata = std::vector<std::pair<std::string, std::string>>;

std::string format_double(double v); // %.17g

Json to_json(const Metadata &meta);
Json to_json(const MetricsReport &m);
Json to_json(const DecompositionResult &d);
Json to_json(const CalibrationMatrix &c);
Json to_json(const SynthesisResult &r);
Json to_json(const McSummary &s, bool include_samples = true);
Json to_json(const SweepRow &row);

// Writes through a temporary file and renames it into place.
void write_text(const std::filesystem::path &path, const std::string &text);
void write_json(const std::filesystem::path &path, const Json &j);

// theta_deg, phi_deg, re_fh, im_fh, re_fv, im_fv
void write_pattern_csv(const std::filesystem::path &path, const FieldPattern &f, const Metadata &meta);

// theta_deg, phi_deg, re_fco, im_fco, re_fcr, im_fcr
void write_copol_csv(const std::filesystem::path &path, const FieldPattern &f, const Metadata &meta);

// One row per swept value
void write_sweep_csv(const std::filesystem::path &path, const std::string &parameter,
                     const std::vector<SweepRow> &rows, const Metadata &meta);

// sample, psl_db
void write_samples_csv(const std::filesystem::path &path, const McSummary &s, const Metadata &meta);

// lower_db, upper_db, count
void write_histogram_csv(const std::filesystem::path &path, const Histogram &h, const Metadata &meta);

} // namespace pcrpa::io
