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

// Shared helpers for the test binaries.

#pragma once

#include <cmath>
#include <complex>
#include <vector>

#include "pcrpa/elements.hpp"
#include "pcrpa/field.hpp"
#include "pcrpa/geom.hpp"
#include "pcrpa/rng.hpp"

namespace pcrpa::test
{

inline BitVector random_bits(std::size_t n, Rng &rng)
{
    BitVector x(n);
    for (auto &b : x)
        b = std::uint8_t(rng.bits() & 1u);
    return x;
}

inline BitVector ones(std::size_t n) { return BitVector(n, 1); }
inline BitVector zeros(std::size_t n) { return BitVector(n, 0); }

// Brute-force array factor sum_i x_i w_i exp(-j k p_i . r) for isotropic elements.
inline cplx brute_af(const ArrayGeometry &g, const BitVector &x, const WeightSet &w, const Direction &d)
{
    const Eigen::Vector3d r = d.unit_vector();
    cplx s = 0.0;
    for (std::size_t i = 0; i < g.size(); ++i)
        if (x[i])
            s += w.w_h[Eigen::Index(i)] * std::exp(cplx(0.0, -g.wavenumber() * g.position(i).dot(r)));
    return s;
}

// Single-theta grid in the xy-plane: all phi at theta = 90 deg, the natural cut for a row of elements.
inline AngularGrid horizon_cut(double step_deg)
{
    return AngularGrid::phi_cut(90.0, -180.0, step_deg, std::uint32_t(std::lround(360.0 / step_deg)));
}

} // namespace pcrpa::test
