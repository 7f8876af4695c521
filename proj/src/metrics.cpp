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

#include "pcrpa/metrics.hpp"

#include <algorithm>
#include <string>

#include "pcrpa/error.hpp"

namespace pcrpa
{

namespace
{
// Co-pol magnitude if available, otherwise the total field magnitude.
double copol_mag(const FieldPattern &f, std::size_t p)
{
    if (f.has_copol())
        return std::abs(f.f_co[p]);
    return std::sqrt(std::norm(f.f_h[p]) + std::norm(f.f_v[p]));
}

double copol_beam(const FieldPattern &f)
{
    if (f.has_copol())
        return std::abs(f.beam_co);
    return std::sqrt(std::norm(f.beam_h) + std::norm(f.beam_v));
}

double copol_peak(const FieldPattern &f)
{
    double m = copol_beam(f);
    for (std::size_t p = 0; p < f.f_h.size(); ++p)
        m = std::max(m, copol_mag(f, p));
    return m;
}

void need_copol(const FieldPattern &f)
{
    require(f.has_copol(), ErrorKind::invalid_argument, "pattern has no co/cross-polar components");
}

// Grid points of one principal cut through the grid point nearest to the beam.
std::vector<std::size_t> cut_points(const AngularGrid &g, const Direction &beam, CutPlane plane)
{
    std::vector<std::size_t> pts;
    if (plane == CutPlane::elevation)
    {
        const std::size_t ip = g.nearest_phi(beam.phi);
        for (std::size_t it = 0; it < g.n_theta; ++it)
            pts.push_back(g.point(it, ip));
    }
    else
    {
        const std::size_t it = g.nearest_theta(beam.theta);
        for (std::size_t ip = 0; ip < g.n_phi; ++ip)
            pts.push_back(g.point(it, ip));
    }
    return pts;
}
} // namespace

bool RegionSpec::visible(const Direction &d) { return std::sin(d.theta) * std::cos(d.phi) >= -1e-12; }

RegionSpec regions_with_radius(const Direction &beam, double radius_rad)
{
    require(std::isfinite(radius_rad) && radius_rad > 0.0, ErrorKind::invalid_region,
            "mainlobe radius must be positive");
    RegionSpec r;
    r.beam = beam;
    r.mainlobe_radius = radius_rad;
    r.radius_factor = 0.0;
    return r;
}

RegionSpec make_regions(const FieldPattern &reference, double radius_factor)
{
    require(std::isfinite(radius_factor) && radius_factor > 0.0, ErrorKind::invalid_region,
            "mainlobe radius factor must be positive");
    RegionSpec r = regions_with_radius(reference.beam, radius_factor * to_rad(effective_beamwidth(reference)) / 2.0);
    r.radius_factor = radius_factor;
    return r;
}

double half_power_beamwidth(const FieldPattern &pattern, CutPlane plane)
{
    const AngularGrid &g = pattern.grid;
    const std::vector<std::size_t> pts = cut_points(g, pattern.beam, plane);
    const bool periodic = plane == CutPlane::azimuth && g.phi_periodic();
    const double step = plane == CutPlane::elevation ? g.theta_step_deg : g.phi_step_deg;
    const auto m = std::ptrdiff_t(pts.size());
    if (m < 3)
        fail(ErrorKind::undefined_metric, "cut has too few samples for a beamwidth");

    auto at = [&](std::ptrdiff_t k) -> double {
        if (periodic)
            k = ((k % m) + m) % m;
        else if (k < 0 || k >= m)
            return -1.0;
        return copol_mag(pattern, pts[std::size_t(k)]);
    };

    std::ptrdiff_t c = plane == CutPlane::elevation ? std::ptrdiff_t(g.nearest_theta(pattern.beam.theta))
                                                    : std::ptrdiff_t(g.nearest_phi(pattern.beam.phi));
    // Climb to the local maximum
    for (std::ptrdiff_t guard = 0; guard < m; ++guard)
    {
        const double here = at(c), l = at(c - 1), r = at(c + 1);
        if (r > here && r >= l)
            ++c;
        else if (l > here)
            --c;
        else
            break;
    }
    const double peak = at(c);
    if (!(peak > 0.0))
        fail(ErrorKind::undefined_metric, "zero field on the cut");
    const double level = peak / std::sqrt(2.0);

    auto crossing = [&](int dir) -> double {
        for (std::ptrdiff_t k = 1; k < m; ++k)
        {
            const double a = at(c + dir * (k - 1)), b = at(c + dir * k);
            if (b < 0.0)
                break;
            if (b < level)
                return double(k - 1) + (a - level) / (a - b);
        }
        fail(ErrorKind::undefined_metric, "no -3 dB crossing on the cut");
    };
    const double left = crossing(-1), right = crossing(+1);
    if (periodic && left + right >= double(m))
        fail(ErrorKind::undefined_metric, "no -3 dB crossing on the cut");
    return (left + right) * step;
}

double effective_beamwidth(const FieldPattern &pattern)
{
    double w = -1.0;
    if (pattern.grid.n_theta >= 3)
        w = half_power_beamwidth(pattern, CutPlane::elevation);
    if (pattern.grid.n_phi >= 3)
        w = std::max(w, half_power_beamwidth(pattern, CutPlane::azimuth) * std::sin(pattern.beam.theta));
    if (!(w > 0.0))
        fail(ErrorKind::undefined_metric, "beamwidth undefined on this grid");
    return w;
}

double psl(const FieldPattern &pattern, const RegionSpec &regions)
{
    need_copol(pattern);
    const AngularGrid &g = pattern.grid;
    double side = -1.0;
    for (std::size_t p = 0; p < g.size(); ++p)
        if (regions.in_sidelobe(g.direction(p)))
            side = std::max(side, std::abs(pattern.f_co[p]));
    if (side < 0.0)
        fail(ErrorKind::invalid_region, "sidelobe region contains no grid points");
    const double peak = copol_peak(pattern);
    if (!(peak > 0.0))
        fail(ErrorKind::undefined_metric, "zero co-polar field");
    return amplitude_db(side / peak);
}

double xpl(const FieldPattern &pattern)
{
    need_copol(pattern);
    const double co = std::abs(pattern.beam_co);
    if (!(co > 0.0))
        fail(ErrorKind::undefined_metric, "zero co-polar field at the beam");
    return amplitude_db(std::abs(pattern.beam_cr) / co);
}

double xplm(const FieldPattern &pattern)
{
    need_copol(pattern);
    const double peak = copol_peak(pattern);
    if (!(peak > 0.0))
        fail(ErrorKind::undefined_metric, "zero co-polar field");
    const AngularGrid &g = pattern.grid;
    double m = 0.0;
    for (CutPlane plane : {CutPlane::elevation, CutPlane::azimuth})
        for (std::size_t p : cut_points(g, pattern.beam, plane))
            if (RegionSpec::visible(g.direction(p)))
                m = std::max(m, std::abs(pattern.f_cr[p]));
    m = std::max(m, std::abs(pattern.beam_cr));
    return amplitude_db(m / peak);
}

double directivity(const FieldPattern &pattern)
{
    const AngularGrid &g = pattern.grid;
    if (!g.covers_sphere())
        fail(ErrorKind::invalid_region, "directivity needs a full-sphere grid");
    const double dth = to_rad(g.theta_step_deg), dph = to_rad(g.phi_step_deg);
    double integral = 0.0;
    for (std::size_t it = 0; it < g.n_theta; ++it)
    {
        double ring = 0.0;
        for (std::size_t ip = 0; ip < g.n_phi; ++ip)
        {
            const std::size_t p = g.point(it, ip);
            ring += std::norm(pattern.f_h[p]) + std::norm(pattern.f_v[p]);
        }
        const double w = (it == 0 || it + 1 == g.n_theta) ? 0.5 : 1.0;
        integral += w * std::sin(to_rad(g.theta_deg(it))) * ring;
    }
    integral *= dth * dph;
    if (!(integral > 0.0))
        fail(ErrorKind::undefined_metric, "zero radiated power");
    const double u = std::norm(pattern.beam_h) + std::norm(pattern.beam_v);
    return power_db(4.0 * pi * u / integral);
}

double power_at_beam(const FieldPattern &pattern, const FieldPattern &reference)
{
    need_copol(pattern);
    need_copol(reference);
    const double ref = std::abs(reference.beam_co);
    if (!(ref > 0.0))
        fail(ErrorKind::undefined_metric, "zero reference field at the beam");
    return amplitude_db(std::abs(pattern.beam_co) / ref);
}

double matching_error(const FieldPattern &beam_1, const FieldPattern &beam_2, const RegionSpec &regions)
{
    need_copol(beam_1);
    need_copol(beam_2);
    require(beam_1.grid == beam_2.grid, ErrorKind::invalid_argument, "beams are not on the same grid");
    const AngularGrid &g = beam_1.grid;
    double sum = 0.0;
    std::size_t count = 0;
    for (std::size_t p = 0; p < g.size(); ++p)
    {
        if (!regions.in_mainlobe(g.direction(p)))
            continue;
        const double a = std::abs(beam_1.f_co[p]), b = std::abs(beam_2.f_co[p]);
        if (!(a > 0.0))
            fail(ErrorKind::undefined_metric, "beam 1 vanishes inside the mainlobe");
        sum += std::abs(a - b) / a;
        ++count;
    }
    if (count == 0)
        fail(ErrorKind::invalid_region, "mainlobe region contains no grid points");
    return amplitude_db(sum);
}

MetricsReport evaluate_metrics(const FieldPattern &pattern, const RegionSpec &regions, const FieldPattern *reference)
{
    MetricsReport m;
    m.psl_db = psl(pattern, regions);
    m.xpl_db = xpl(pattern);
    m.xplm_db = xplm(pattern);
    if (pattern.grid.covers_sphere())
        m.directivity_dbi = directivity(pattern);
    m.hpbw_deg = effective_beamwidth(pattern);
    if (reference)
        m.power_db = power_at_beam(pattern, *reference);
    return m;
}

} // namespace pcrpa
