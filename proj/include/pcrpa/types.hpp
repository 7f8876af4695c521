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

#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <vector>

#include <Eigen/Dense>

namespace pcrpa
{

using cplx = std::complex<double>;

// Binary code vector; every entry is 0 or 1.
using BitVector = std::vector<std::uint8_t>;

constexpr double pi = std::numbers::pi;
constexpr double deg = pi / 180.0;

// All dB outputs are clamped here so reports stay finite.
constexpr double db_floor = -120.0;

inline double to_rad(double degrees) { return degrees * deg; }
inline double to_deg(double radians) { return radians / deg; }

inline double amplitude_db(double ratio)
{
    if (!(ratio > 0.0))
        return db_floor;
    const double v = 20.0 * std::log10(ratio);
    return v < db_floor ? db_floor : v;
}

inline double power_db(double ratio)
{
    if (!(ratio > 0.0))
        return db_floor;
    const double v = 10.0 * std::log10(ratio);
    return v < db_floor ? db_floor : v;
}

// Direction in the array frame; angles are stored in radians.
struct Direction
{
    double theta = pi / 2.0;
    double phi = 0.0;

    static Direction from_degrees(double theta_deg, double phi_deg)
    {
        return {to_rad(theta_deg), to_rad(phi_deg)};
    }
    double theta_deg() const { return to_deg(theta); }
    double phi_deg() const { return to_deg(phi); }

    Eigen::Vector3d unit_vector() const
    {
        return {std::sin(theta) * std::cos(phi), std::sin(theta) * std::sin(phi), std::cos(theta)};
    }
};

// Great-circle angle between two directions [rad].
inline double angular_distance(const Direction &a, const Direction &b)
{
    const double c = a.unit_vector().dot(b.unit_vector());
    return std::acos(c > 1.0 ? 1.0 : (c < -1.0 ? -1.0 : c));
}

inline std::size_t count_ones(const BitVector &x)
{
    std::size_t n = 0;
    for (auto b : x)
        n += b;
    return n;
}

} // namespace pcrpa
