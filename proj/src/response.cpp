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

#include "pcrpa/response.hpp"

#include "pcrpa/error.hpp"
#include "pcrpa/parallel.hpp"

namespace pcrpa
{

SampleSet make_sample_set(const AngularGrid &grid, const RegionSpec &regions, double step_deg)
{
    require(std::isfinite(step_deg) && step_deg > 0.0, ErrorKind::invalid_argument, "sample step must be positive");
    const double base = grid.n_phi > 1 ? grid.phi_step_deg : grid.theta_step_deg;
    const auto factor = std::size_t(std::max(1L, std::lround(step_deg / base)));

    SampleSet s;
    auto add = [&](const Direction &d, bool cut) {
        s.directions.push_back(d);
        s.sidelobe.push_back(std::uint8_t(regions.in_sidelobe(d)));
        s.cut.push_back(std::uint8_t(cut));
    };

    for (std::size_t it = 0; it < grid.n_theta; it += factor)
    {
        const bool pole = std::sin(to_rad(grid.theta_deg(it))) < 1e-12;
        for (std::size_t ip = 0; ip < grid.n_phi; ip += factor)
        {
            const Direction d = grid.direction(grid.point(it, ip));
            if (RegionSpec::visible(d))
                add(d, false);
            if (pole)
                break;
        }
    }

    const std::size_t it0 = grid.nearest_theta(regions.beam.theta), ip0 = grid.nearest_phi(regions.beam.phi);
    if (grid.n_theta > 1)
        for (std::size_t it = 0; it < grid.n_theta; ++it)
        {
            const Direction d = grid.direction(grid.point(it, ip0));
            if (RegionSpec::visible(d))
                add(d, true);
        }
    if (grid.n_phi > 1)
        for (std::size_t ip = 0; ip < grid.n_phi; ++ip)
        {
            const Direction d = grid.direction(grid.point(it0, ip));
            if (RegionSpec::visible(d))
                add(d, true);
        }

    add(regions.beam, true);
    s.sidelobe.back() = 0;

    bool any = false;
    for (auto f : s.sidelobe)
        any = any || f;
    if (!any)
        fail(ErrorKind::invalid_region, "sidelobe region contains no samples");
    return s;
}

PortTables make_port_tables(const PatternEngine &engine, const WeightSet &weights, const SampleSet &samples)
{
    const ArrayGeometry &geo = engine.geometry();
    const AepSet &aep = engine.aep();
    const std::size_t n = geo.size();
    const auto m = Eigen::Index(samples.size());
    require(std::size_t(weights.w_h.size()) == n && std::size_t(weights.w_v.size()) == n,
            ErrorKind::invalid_argument, "weights do not match the array size");

    PortTables t;
    t.hh.resize(m, Eigen::Index(n));
    t.vh.resize(m, Eigen::Index(n));
    t.hv.resize(m, Eigen::Index(n));
    t.vv.resize(m, Eigen::Index(n));

    parallel_for(0, samples.size(), [&](std::size_t k) {
        const Direction &d = samples.directions[k];
        const GridStencil st = grid_stencil(aep.grid(), d);
        std::vector<cplx> s(n, cplx(1.0));
        if (aep.phase_reference() == PhaseReference::common)
            geo.geometric_phases(d.unit_vector(), s.data());
        const auto row = Eigen::Index(k);
        for (std::size_t i = 0; i < n; ++i)
        {
            cplx hh(0.0), vh(0.0), hv(0.0), vv(0.0);
            for (int q = 0; q < st.count; ++q)
            {
                const std::size_t p = st.point[std::size_t(q)];
                const double w = st.weight[std::size_t(q)];
                hh += w * aep.value(Component::hh, i, p);
                vh += w * aep.value(Component::vh, i, p);
                hv += w * aep.value(Component::hv, i, p);
                vv += w * aep.value(Component::vv, i, p);
            }
            const auto col = Eigen::Index(i);
            const cplx a = s[i] * weights.w_h(col), b = s[i] * weights.w_v(col);
            t.hh(row, col) = hh * a;
            t.vh(row, col) = vh * a;
            t.hv(row, col) = hv * b;
            t.vv(row, col) = vv * b;
        }
    });
    return t;
}

AffineResponse::AffineResponse(const Eigen::VectorXcd &offset, const Eigen::MatrixXcd &gain)
    : offset_re_(offset.real()), offset_im_(offset.imag()), k_re_(gain.real()), k_im_(gain.imag())
{
    require(gain.rows() == offset.size(), ErrorKind::invalid_argument, "offset and gain row counts differ");
}

Eigen::MatrixXd AffineResponse::power(const Eigen::MatrixXd &z) const
{
    require(z.rows() == variables(), ErrorKind::invalid_argument, "candidate length does not match the response");
    constexpr Eigen::Index block = 512;
    const Eigen::Index m = points(), b = z.cols();
    Eigen::MatrixXd out(m, b);
    const auto blocks = std::size_t((m + block - 1) / block);
    parallel_for(0, blocks, [&](std::size_t q) {
        const Eigen::Index r0 = Eigen::Index(q) * block, rn = std::min(block, m - r0);
        Eigen::MatrixXd re = k_re_.middleRows(r0, rn) * z;
        Eigen::MatrixXd im = k_im_.middleRows(r0, rn) * z;
        re.colwise() += offset_re_.segment(r0, rn);
        im.colwise() += offset_im_.segment(r0, rn);
        out.middleRows(r0, rn) = re.array().square() + im.array().square();
    });
    return out;
}

cplx AffineResponse::value(Eigen::Index row, const BitVector &z) const
{
    require(Eigen::Index(z.size()) == variables(), ErrorKind::invalid_argument,
            "candidate length does not match the response");
    double re = offset_re_(row), im = offset_im_(row);
    for (std::size_t i = 0; i < z.size(); ++i)
        if (z[i])
        {
            re += k_re_(row, Eigen::Index(i));
            im += k_im_(row, Eigen::Index(i));
        }
    return {re, im};
}

Eigen::MatrixXd to_matrix(const std::vector<BitVector> &batch)
{
    require(!batch.empty(), ErrorKind::invalid_argument, "empty candidate batch");
    const std::size_t n = batch.front().size();
    Eigen::MatrixXd z(Eigen::Index(n), Eigen::Index(batch.size()));
    for (std::size_t b = 0; b < batch.size(); ++b)
    {
        require(batch[b].size() == n, ErrorKind::invalid_argument, "candidates differ in length");
        for (std::size_t i = 0; i < n; ++i)
            z(Eigen::Index(i), Eigen::Index(b)) = double(batch[b][i]);
    }
    return z;
}

} // namespace pcrpa
