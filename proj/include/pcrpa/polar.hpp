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

#include <span>
#include <utility>
#include <vector>

#include "pcrpa/types.hpp"

namespace pcrpa
{

class AepSet;
class ArrayGeometry;

// Fully polarized wave state: auxiliary angle gamma in [0, pi/2], phase eta in [-pi, pi).
struct PolarizationState
{
    double gamma = 0.0;
    double eta = 0.0;

    PolarizationState() = default;
    PolarizationState(double gamma_rad, double eta_rad);

    static PolarizationState from_degrees(double gamma_deg, double eta_deg);
    static PolarizationState horizontal() { return {}; }
    static PolarizationState vertical() { return {pi / 2.0, 0.0}; }

    double gamma_deg() const { return to_deg(gamma); }
    double eta_deg() const { return to_deg(eta); }
};

struct JonesBasis
{
    Eigen::Vector2cd co;
    Eigen::Vector2cd cr;
};

// e_co = [cos g, sin g e^{j eta}], e_cr = [-sin g e^{-j eta}, cos g]
JonesBasis jones_basis(const PolarizationState &state);

struct CoCr
{
    cplx co;
    cplx cr;
};

// Solves [e_co, e_cr] [f_co; f_cr] = [f_h; f_v] at one point.
CoCr hv_to_copol(cplx f_h, cplx f_v, const JonesBasis &basis);

// Inverse of hv_to_copol; returns (f_h, f_v).
std::pair<cplx, cplx> copol_to_hv(cplx f_co, cplx f_cr, const JonesBasis &basis);

void hv_to_copol(std::span<const cplx> f_h, std::span<const cplx> f_v, const PolarizationState &state,
                 std::vector<cplx> &f_co, std::vector<cplx> &f_cr);

// Decomposition against the ideal H/V basis: (cos g, sin g e^{j eta}).
std::pair<cplx, cplx> decompose_identity(const PolarizationState &state);

struct DecompositionResult
{
    cplx u_h;
    cplx u_v;
    Eigen::Vector2cd basis_h; // normalized H-port Jones vector of the reference element
    Eigen::Vector2cd basis_v; // normalized V-port Jones vector of the reference element
    std::size_t n_h = 0;
    std::size_t n_v = 0;
    double beta = 0.0; // V-channel compensation phase [rad]
};

// Element counts from the port contributions: n_h = ceil(|u_h| / (|u_h| + |u_v|) n).
std::size_t h_element_count(cplx u_h, cplx u_v, std::size_t n);

// Decomposes e_co on the Jones vectors radiated by the center element's two ports at the beam.
DecompositionResult decompose_aep(const PolarizationState &state, const AepSet &aep, const ArrayGeometry &geometry,
                                  const Direction &beam);

// Decomposition on an explicit port basis (columns are the un-normalized port Jones vectors).
DecompositionResult decompose_on_basis(const PolarizationState &state, const Eigen::Vector2cd &g_h,
                                       const Eigen::Vector2cd &g_v, std::size_t n);

// Realized polarization angle for integer counts, arctan(n_v / n_h) [rad].
double quantized_gamma(std::size_t n_h, std::size_t n_v);

} // namespace pcrpa
