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

#include "pcrpa/polar.hpp"

#include <algorithm>
#include <string>

#include "pcrpa/elements.hpp"
#include "pcrpa/error.hpp"
#include "pcrpa/geom.hpp"

namespace pcrpa
{

namespace
{
constexpr double angle_slack = 1e-12;

// cos/sin of gamma with the pure H and pure V endpoints exact
std::pair<double, double> cos_sin(double gamma)
{
    if (gamma == 0.0)
        return {1.0, 0.0};
    if (gamma == pi / 2.0)
        return {0.0, 1.0};
    return {std::cos(gamma), std::sin(gamma)};
}
} // namespace

PolarizationState::PolarizationState(double gamma_rad, double eta_rad)
{
    require(std::isfinite(gamma_rad) && std::isfinite(eta_rad), ErrorKind::invalid_argument,
            "polarization angles must be finite");
    if (gamma_rad < -angle_slack || gamma_rad > pi / 2.0 + angle_slack)
        fail(ErrorKind::invalid_argument, "gamma must lie in [0, 90] deg, got " + std::to_string(to_deg(gamma_rad)));
    if (eta_rad < -pi - angle_slack || eta_rad > pi + angle_slack)
        fail(ErrorKind::invalid_argument, "eta must lie in [-180, 180) deg, got " + std::to_string(to_deg(eta_rad)));

    gamma = std::clamp(gamma_rad, 0.0, pi / 2.0);
    // +180 deg names the same state as -180 deg
    eta = eta_rad >= pi - angle_slack ? -pi : std::max(eta_rad, -pi);
}

PolarizationState PolarizationState::from_degrees(double gamma_deg, double eta_deg)
{
    return PolarizationState(to_rad(gamma_deg), to_rad(eta_deg));
}

JonesBasis jones_basis(const PolarizationState &state)
{
    const auto [c, s] = cos_sin(state.gamma);
    JonesBasis b;
    b.co << cplx(c, 0.0), s * std::polar(1.0, state.eta);
    b.cr << -s * std::polar(1.0, -state.eta), cplx(c, 0.0);
    return b;
}

// The basis is unitary, so the solve reduces to projections on the conjugated basis vectors.
CoCr hv_to_copol(cplx f_h, cplx f_v, const JonesBasis &basis)
{
    return {std::conj(basis.co(0)) * f_h + std::conj(basis.co(1)) * f_v,
            std::conj(basis.cr(0)) * f_h + std::conj(basis.cr(1)) * f_v};
}

std::pair<cplx, cplx> copol_to_hv(cplx f_co, cplx f_cr, const JonesBasis &basis)
{
    return {basis.co(0) * f_co + basis.cr(0) * f_cr, basis.co(1) * f_co + basis.cr(1) * f_cr};
}

void hv_to_copol(std::span<const cplx> f_h, std::span<const cplx> f_v, const PolarizationState &state,
                 std::vector<cplx> &f_co, std::vector<cplx> &f_cr)
{
    require(f_h.size() == f_v.size(), ErrorKind::invalid_argument, "H and V grids differ in size");
    const JonesBasis b = jones_basis(state);
    f_co.resize(f_h.size());
    f_cr.resize(f_h.size());
    for (std::size_t k = 0; k < f_h.size(); ++k)
    {
        const CoCr c = hv_to_copol(f_h[k], f_v[k], b);
        f_co[k] = c.co;
        f_cr[k] = c.cr;
    }
}

std::pair<cplx, cplx> decompose_identity(const PolarizationState &state)
{
    const auto [c, s] = cos_sin(state.gamma);
    return {cplx(c, 0.0), s * std::polar(1.0, state.eta)};
}

std::size_t h_element_count(cplx u_h, cplx u_v, std::size_t n)
{
    const double a = std::abs(u_h), b = std::abs(u_v);
    require(a + b > 0.0, ErrorKind::degenerate_basis, "both decomposition coefficients vanish");
    if (a <= 1e-14 * (a + b))
        return 0;
    // Absorb rounding noise so exact ratios (e.g. 0.5 * 256) do not step up by one.
    const double x = a / (a + b) * double(n);
    const double c = std::ceil(x - 1e-9);
    return c < 0.0 ? 0 : (c > double(n) ? n : std::size_t(c));
}

DecompositionResult decompose_on_basis(const PolarizationState &state, const Eigen::Vector2cd &g_h,
                                       const Eigen::Vector2cd &g_v, std::size_t n)
{
    require(n >= 1, ErrorKind::invalid_argument, "the array must have at least one element");
    const double nh = g_h.norm(), nv = g_v.norm();
    if (!(nh > 0.0) || !(nv > 0.0))
        fail(ErrorKind::degenerate_basis, "a port radiates no field at the beam direction");

    DecompositionResult r;
    r.basis_h = g_h / nh;
    r.basis_v = g_v / nv;

    Eigen::Matrix2cd basis;
    basis << r.basis_h, r.basis_v;
    const Eigen::JacobiSVD<Eigen::Matrix2cd> svd(basis);
    const auto sv = svd.singularValues();
    if (!(sv(1) > 0.0) || sv(0) / sv(1) > 1e12)
        fail(ErrorKind::degenerate_basis, "port Jones vectors are parallel at the beam direction");

    const Eigen::Vector2cd u = basis.partialPivLu().solve(jones_basis(state).co);
    r.u_h = u(0);
    r.u_v = u(1);
    r.n_h = h_element_count(r.u_h, r.u_v, n);
    r.n_v = n - r.n_h;
    r.beta = (r.n_h == 0 || std::abs(r.u_v) == 0.0) ? 0.0 : std::arg(r.u_v / r.u_h);
    return r;
}

DecompositionResult decompose_aep(const PolarizationState &state, const AepSet &aep, const ArrayGeometry &geometry,
                                  const Direction &beam)
{
    require(aep.elements() == geometry.size(), ErrorKind::invalid_argument,
            "AEP set and geometry disagree on the element count");
    const Eigen::Matrix2cd j = aep.jones_at(geometry.center_element(), beam);
    return decompose_on_basis(state, j.col(0), j.col(1), geometry.size());
}

double quantized_gamma(std::size_t n_h, std::size_t n_v)
{
    require(n_h + n_v >= 1, ErrorKind::invalid_argument, "at least one element is required");
    return std::atan2(double(n_v), double(n_h));
}

} // namespace pcrpa
