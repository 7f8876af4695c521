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

#include <stdexcept>
#include <string>
#include <string_view>

namespace pcrpa
{

enum class ErrorKind
{
    invalid_argument,
    unsupported_geometry,
    degenerate_basis,
    out_of_domain,
    format_error,
    io_error,
    calibration_failure,
    invalid_region,
    undefined_metric,
    infeasible_counts,
    config_error,
};

std::string_view to_string(ErrorKind kind);

// Every failure raised by the library carries a kind so callers (and the CLI)
// can map it to a diagnostic without parsing the message.
class Error : public std::runtime_error
{
public:
    Error(ErrorKind kind, const std::string &message);

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

[[noreturn]] void fail(ErrorKind kind, const std::string &message);

inline void require(bool condition, ErrorKind kind, const char *message)
{
    if (!condition)
        fail(kind, message);
}

} // namespace pcrpa
