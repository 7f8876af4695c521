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

#include "pcrpa/field.hpp"

#include "pcrpa/error.hpp"
#include "pcrpa/parallel.hpp"

namespace pcrpa
{

WeightSet steering_weights(const ArrayGeometry &geometry, const Direction &beam)
{
    const Eigen::Vector3d r0 = beam.unit_vector();
    const double k = geometry.wavenumber();
    WeightSet w;
    w.w_h.resize(Eigen::Index(geometry.size()));
    for (std::size_t i = 0; i < geometry.size(); ++i)
        w.w_h(Eigen::Index(i)) = std::polar(1.0, k * geometry.position(i).dot(r0));
    w.w_v = w.w_h;
    return w;
}

WeightSet apply_compensation(const WeightSet &weights, double beta)
{
    WeightSet w = weights;
    w.w_v *= std::polar(1.0, beta);
    return w;
}

Excitation make_excitation(const WeightSet &weights, const BitVector &x_h, const BitVector &x_v)
{
    const auto n = std::size_t(weights.w_h.size());
    require(std::size_t(weights.w_v.size()) == n && x_h.size() == n && x_v.size() == n,
            ErrorKind::invalid_argument, "weights and codes differ in length");
    Excitation e;
    e.h = Eigen::VectorXcd::Zero(Eigen::Index(n));
    e.v = Eigen::VectorXcd::Zero(Eigen::Index(n));
    for (std::size_t i = 0; i < n; ++i)
    {
        require(x_h[i] <= 1 && x_v[i] <= 1, ErrorKind::invalid_argument, "coding vectors must be binary");
        if (x_h[i])
            e.h(Eigen::Index(i)) = weights.w_h(Eigen::Index(i));
        if (x_v[i])
            e.v(Eigen::Index(i)) = weights.w_v(Eigen::Index(i));
    }
    return e;
}

Excitation scale_ports(const Excitation &e, cplx p_h, cplx p_v)
{
    return {e.h * p_h, e.v * p_v};
}

void FieldPattern::set_polarization(const PolarizationState &state)
{
    polarization = state;
    hv_to_copol(f_h, f_v, state, f_co, f_cr);
    const CoCr c = hv_to_copol(beam_h, beam_v, jones_basis(state));
    beam_co = c.co;
    beam_cr = c.cr;
}

FieldPattern combine(const FieldPattern &a, cplx ca, const FieldPattern &b, cplx cb)
{
    require(a.grid == b.grid && a.f_h.size() == b.f_h.size(), ErrorKind::invalid_argument,
            "patterns are not on the same grid");
    FieldPattern out;
    out.grid = a.grid;
    out.beam = a.beam;
    out.f_h.resize(a.f_h.size());
    out.f_v.resize(a.f_v.size());
    for (std::size_t k = 0; k < a.f_h.size(); ++k)
    {
        out.f_h[k] = ca * a.f_h[k] + cb * b.f_h[k];
        out.f_v[k] = ca * a.f_v[k] + cb * b.f_v[k];
    }
    out.beam_h = ca * a.beam_h + cb * b.beam_h;
    out.beam_v = ca * a.beam_v + cb * b.beam_v;
    if (a.polarization)
        out.set_polarization(*a.polarization);
    return out;
}

PatternEngine::PatternEngine(const ArrayGeometry &geometry, const AepSet &aep) : geometry_(geometry), aep_(aep)
{
    require(aep.elements() == geometry.size(), ErrorKind::invalid_argument,
            "AEP set and geometry disagree on the element count");
}

namespace
{
void check_excitation(const Excitation &e, std::size_t n)
{
    require(std::size_t(e.h.size()) == n && std::size_t(e.v.size()) == n, ErrorKind::invalid_argument,
            "excitation length does not match the array size");
}
} // namespace

FieldPattern PatternEngine::evaluate(const Excitation &excitation, const Direction &beam) const
{
    const std::size_t n = geometry_.size();
    check_excitation(excitation, n);

    const AngularGrid &grid = aep_.grid();
    const std::size_t rows = geometry_.rows(), cols = geometry_.cols();
    const bool embedded = aep_.phase_reference() == PhaseReference::embedded;
    const double k = geometry_.wavenumber();

    FieldPattern out;
    out.grid = grid;
    out.beam = beam;
    out.f_h.assign(grid.size(), cplx(0.0));
    out.f_v.assign(grid.size(), cplx(0.0));

    if (aep_.is_separable())
    {
        // Per-element coefficients fold into the excitation; the shared components multiply the
        // array factors of the two port groups.
        std::vector<cplx> ah(n), av(n);
        for (std::size_t i = 0; i < n; ++i)
        {
            ah[i] = aep_.coefficients()[i] * excitation.h(Eigen::Index(i));
            av[i] = aep_.coefficients()[i] * excitation.v(Eigen::Index(i));
        }
        const auto &g_hh = aep_.shared(Component::hh), &g_hv = aep_.shared(Component::hv);
        const auto &g_vh = aep_.shared(Component::vh), &g_vv = aep_.shared(Component::vv);

        parallel_for(0, grid.n_theta, [&](std::size_t it) {
            const double th = to_rad(grid.theta_deg(it));
            const double st = std::sin(th), ct = std::cos(th);
            // Column sums over rows for this theta: t[c] = sum_r a[r, c] exp(-j k z_r cos(theta))
            std::vector<cplx> th_h(cols, cplx(0.0)), th_v(cols, cplx(0.0)), ey(cols);
            for (std::size_t r = 0; r < rows; ++r)
            {
                const cplx ez = embedded ? cplx(1.0) : std::polar(1.0, -k * geometry_.z_of_row(r) * ct);
                for (std::size_t c = 0; c < cols; ++c)
                {
                    th_h[c] += ez * ah[geometry_.index(r, c)];
                    th_v[c] += ez * av[geometry_.index(r, c)];
                }
            }
            for (std::size_t ip = 0; ip < grid.n_phi; ++ip)
            {
                const double uy = st * std::sin(to_rad(grid.phi_deg(ip)));
                cplx sh(0.0), sv(0.0);
                for (std::size_t c = 0; c < cols; ++c)
                {
                    const cplx e = embedded ? cplx(1.0) : std::polar(1.0, -k * geometry_.y_of_col(c) * uy);
                    sh += e * th_h[c];
                    sv += e * th_v[c];
                }
                const std::size_t p = grid.point(it, ip);
                out.f_h[p] = g_hh[p] * sh + g_hv[p] * sv;
                out.f_v[p] = g_vh[p] * sh + g_vv[p] * sv;
            }
        });
    }
    else
    {
        parallel_for(0, grid.n_theta, [&](std::size_t it) {
            std::vector<cplx> s(n, cplx(1.0));
            for (std::size_t ip = 0; ip < grid.n_phi; ++ip)
            {
                const std::size_t p = grid.point(it, ip);
                if (!embedded)
                    geometry_.geometric_phases(grid.direction(p).unit_vector(), s.data());
                cplx fh(0.0), fv(0.0);
                for (std::size_t i = 0; i < n; ++i)
                {
                    const cplx h = excitation.h(Eigen::Index(i)) * s[i];
                    const cplx v = excitation.v(Eigen::Index(i)) * s[i];
                    fh += aep_.value(Component::hh, i, p) * h + aep_.value(Component::hv, i, p) * v;
                    fv += aep_.value(Component::vh, i, p) * h + aep_.value(Component::vv, i, p) * v;
                }
                out.f_h[p] = fh;
                out.f_v[p] = fv;
            }
        });
    }

    std::tie(out.beam_h, out.beam_v) = evaluate_at(excitation, beam);
    return out;
}

std::pair<cplx, cplx> PatternEngine::evaluate_at(const Excitation &excitation, const Direction &d) const
{
    const std::size_t n = geometry_.size();
    check_excitation(excitation, n);
    const GridStencil st = grid_stencil(aep_.grid(), d);

    std::vector<cplx> s(n, cplx(1.0));
    if (aep_.phase_reference() == PhaseReference::common)
        geometry_.geometric_phases(d.unit_vector(), s.data());

    cplx fh(0.0), fv(0.0);
    for (std::size_t i = 0; i < n; ++i)
    {
        const cplx h = excitation.h(Eigen::Index(i)) * s[i];
        const cplx v = excitation.v(Eigen::Index(i)) * s[i];
        if (h == 0.0 && v == 0.0)
            continue;
        for (int q = 0; q < st.count; ++q)
        {
            const std::size_t p = st.point[std::size_t(q)];
            const double w = st.weight[std::size_t(q)];
            fh += w * (aep_.value(Component::hh, i, p) * h + aep_.value(Component::hv, i, p) * v);
            fv += w * (aep_.value(Component::vh, i, p) * h + aep_.value(Component::vv, i, p) * v);
        }
    }
    return {fh, fv};
}

Eigen::Matrix2cd PatternEngine::element_response(std::size_t i, const Direction &d) const
{
    Eigen::Matrix2cd j = aep_.jones_at(i, d);
    if (aep_.phase_reference() == PhaseReference::common)
        j *= std::polar(1.0, -geometry_.wavenumber() * geometry_.position(i).dot(d.unit_vector()));
    return j;
}

FieldPattern evaluate_pattern(const PatternEngine &engine, const WeightSet &weights, const BitVector &x_h,
                              const BitVector &x_v, const Direction &beam)
{
    return engine.evaluate(make_excitation(weights, x_h, x_v), beam);
}

std::pair<FieldPattern, FieldPattern> evaluate_beam_pair(const PatternEngine &engine, const WeightSet &weights,
                                                         const BitVector &x_1h, const BitVector &x_2v,
                                                         const Direction &beam)
{
    require(x_1h.size() == x_2v.size(), ErrorKind::invalid_argument, "beam codes differ in length");
    for (std::size_t i = 0; i < x_1h.size(); ++i)
        if (x_1h[i] && x_2v[i])
            fail(ErrorKind::invalid_argument, "element " + std::to_string(i) + " is assigned to both beams");
    const BitVector none(x_1h.size(), 0);
    FieldPattern b1 = evaluate_pattern(engine, weights, x_1h, none, beam);
    FieldPattern b2 = evaluate_pattern(engine, weights, none, x_2v, beam);
    b1.set_polarization(PolarizationState::horizontal());
    b2.set_polarization(PolarizationState::vertical());
    return {std::move(b1), std::move(b2)};
}

CalibrationMatrix CalibrationMatrix::from_coupling(const Eigen::Matrix2cd &raw)
{
    if (!(std::abs(raw(0, 0)) > 0.0) || !raw.allFinite())
        fail(ErrorKind::calibration_failure, "reference channel radiates no co-polar field at the beam");
    CalibrationMatrix c;
    c.m = raw / raw(0, 0);
    const Eigen::JacobiSVD<Eigen::Matrix2cd> svd(c.m);
    const auto sv = svd.singularValues();
    c.condition = sv(1) > 0.0 ? sv(0) / sv(1) : std::numeric_limits<double>::infinity();
    if (!(c.condition < 1e6))
        fail(ErrorKind::calibration_failure,
             "coupling matrix is ill-conditioned (condition " + std::to_string(c.condition) + ")");
    c.m_inv = c.m.inverse();
    return c;
}

CalibrationMatrix estimate_calibration(const PatternEngine &engine, const Direction &beam)
{
    const WeightSet w = steering_weights(engine.geometry(), beam);
    const Eigen::VectorXcd zero = Eigen::VectorXcd::Zero(w.w_h.size());
    const auto [hh, vh] = engine.evaluate_at({w.w_h, zero}, beam);
    const auto [hv, vv] = engine.evaluate_at({zero, w.w_v}, beam);
    Eigen::Matrix2cd raw;
    raw << hh, hv, vh, vv;
    return CalibrationMatrix::from_coupling(raw);
}

CalibrationMatrix estimate_calibration(const FieldPattern &channel_1, const FieldPattern &channel_2)
{
    Eigen::Matrix2cd raw;
    raw << channel_1.beam_h, channel_2.beam_h, channel_1.beam_v, channel_2.beam_v;
    return CalibrationMatrix::from_coupling(raw);
}

Eigen::Vector2cd apply_calibration(const CalibrationMatrix &cal, const Eigen::Vector2cd &desired)
{
    return cal.m_inv * desired;
}

std::pair<FieldPattern, FieldPattern> calibrate_pair(const CalibrationMatrix &cal, const FieldPattern &channel_1,
                                                     const FieldPattern &channel_2)
{
    FieldPattern a = combine(channel_1, cal.m_inv(0, 0), channel_2, cal.m_inv(1, 0));
    FieldPattern b = combine(channel_1, cal.m_inv(0, 1), channel_2, cal.m_inv(1, 1));
    a.set_polarization(PolarizationState::horizontal());
    b.set_polarization(PolarizationState::vertical());
    return {std::move(a), std::move(b)};
}

} // namespace pcrpa
