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

#include "pcrpa/error.hpp"

namespace pcrpa
{

std::string_view to_string(ErrorKind kind)
{
    switch (kind)
    {
    case ErrorKind::invalid_argument:
        return "invalid argument";
    case ErrorKind::unsupported_geometry:
        return "unsupported geometry";
    case ErrorKind::degenerate_basis:
        return "degenerate basis";
    case ErrorKind::out_of_domain:
        return "out of domain";
    case ErrorKind::format_error:
        return "format error";
    case ErrorKind::io_error:
        return "io error";
    case ErrorKind::calibration_failure:
        return "calibration failure";
    case ErrorKind::invalid_region:
        return "invalid region";
    case ErrorKind::undefined_metric:
        return "undefined metric";
    case ErrorKind::infeasible_counts:
        return "infeasible counts";
    case ErrorKind::config_error:
        return "config error";
    }
    return "error";
}

Error::Error(ErrorKind kind, const std::string &message)
    : std::runtime_error(std::string(to_string(kind)) + ": " + message), kind_(kind)
{
}

void fail(ErrorKind kind, const std::string &message)
{
    throw Error(kind, message);
}

} // namespace pcrpa
