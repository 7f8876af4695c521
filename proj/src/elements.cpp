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

#include "pcrpa/elements.hpp"

#include <bit>
#include <cstring>
#include <fstream>
#include <functional>
#include <string>

#include "pcrpa/error.hpp"
#include "pcrpa/geom.hpp"
#include "pcrpa/rng.hpp"

namespace pcrpa
{

namespace
{
constexpr double grid_eps = 1e-9;

bool near_integer(double x) { return std::abs(x - std::round(x)) < 1e-9; }

// phi in degrees wrapped to [-180, 180)
double wrap_phi(double phi_deg)
{
    double p = std::fmod(phi_deg + 180.0, 360.0);
    if (p < 0.0)
        p += 360.0;
    return p - 180.0;
}
} // namespace

AngularGrid AngularGrid::full_sphere(double step_deg)
{
    require(std::isfinite(step_deg) && step_deg > 0.0, ErrorKind::invalid_argument, "grid step must be positive");
    if (!near_integer(180.0 / step_deg))
        fail(ErrorKind::invalid_argument, "grid step must divide 180 deg, got " + std::to_string(step_deg));
    AngularGrid g;
    g.theta_start_deg = 0.0;
    g.theta_step_deg = step_deg;
    g.n_theta = std::uint32_t(std::lround(180.0 / step_deg)) + 1;
    g.phi_start_deg = -180.0;
    g.phi_step_deg = step_deg;
    g.n_phi = std::uint32_t(std::lround(360.0 / step_deg));
    return g;
}

AngularGrid AngularGrid::phi_cut(double theta_deg, double phi_start_deg, double phi_step_deg, std::uint32_t n_phi)
{
    AngularGrid g;
    g.theta_start_deg = theta_deg;
    g.theta_step_deg = 1.0;
    g.n_theta = 1;
    g.phi_start_deg = phi_start_deg;
    g.phi_step_deg = phi_step_deg;
    g.n_phi = n_phi;
    g.validate();
    return g;
}

bool AngularGrid::phi_periodic() const { return std::abs(double(n_phi) * phi_step_deg - 360.0) < grid_eps; }

bool AngularGrid::covers_sphere() const
{
    return std::abs(theta_start_deg) < grid_eps && std::abs(theta_deg(n_theta - 1) - 180.0) < grid_eps &&
           phi_periodic() && n_theta >= 2;
}

std::size_t AngularGrid::nearest_theta(double theta_rad) const
{
    const double t = std::round((to_deg(theta_rad) - theta_start_deg) / theta_step_deg);
    if (t <= 0.0)
        return 0;
    return t >= double(n_theta - 1) ? n_theta - 1 : std::size_t(t);
}

std::size_t AngularGrid::nearest_phi(double phi_rad) const
{
    if (phi_periodic())
    {
        double t = std::round((wrap_phi(to_deg(phi_rad)) - phi_start_deg) / phi_step_deg);
        t = std::fmod(t, double(n_phi));
        if (t < 0.0)
            t += double(n_phi);
        return std::size_t(t) % n_phi;
    }
    const double t = std::round((to_deg(phi_rad) - phi_start_deg) / phi_step_deg);
    if (t <= 0.0)
        return 0;
    return t >= double(n_phi - 1) ? n_phi - 1 : std::size_t(t);
}

AngularGrid AngularGrid::decimated(std::size_t factor) const
{
    require(factor >= 1, ErrorKind::invalid_argument, "decimation factor must be positive");
    AngularGrid g = *this;
    g.n_theta = std::uint32_t((n_theta - 1) / factor + 1);
    g.theta_step_deg = n_theta > 1 ? theta_step_deg * double(factor) : theta_step_deg;
    if (phi_periodic() && n_phi % factor == 0)
        g.n_phi = std::uint32_t(n_phi / factor);
    else
        g.n_phi = std::uint32_t((n_phi - 1) / factor + 1);
    g.phi_step_deg = n_phi > 1 ? phi_step_deg * double(factor) : phi_step_deg;
    return g;
}

void AngularGrid::validate() const
{
    require(n_theta >= 1 && n_phi >= 1, ErrorKind::invalid_argument, "angular grid is empty");
    require(std::isfinite(theta_start_deg) && std::isfinite(phi_start_deg), ErrorKind::invalid_argument,
            "grid start angles must be finite");
    require(std::isfinite(theta_step_deg) && theta_step_deg > 0.0 && std::isfinite(phi_step_deg) &&
                phi_step_deg > 0.0,
            ErrorKind::invalid_argument, "grid steps must be positive");
    require(theta_start_deg >= -grid_eps && theta_deg(n_theta - 1) <= 180.0 + grid_eps, ErrorKind::invalid_argument,
            "theta samples must lie in [0, 180] deg");
    require(phi_start_deg >= -180.0 - grid_eps && phi_deg(n_phi - 1) <= 180.0 + grid_eps,
            ErrorKind::invalid_argument, "phi samples must lie in [-180, 180] deg");
    require(double(n_phi) * phi_step_deg <= 360.0 + grid_eps, ErrorKind::invalid_argument,
            "phi samples overlap after wrapping");
}

GridStencil grid_stencil(const AngularGrid &grid, const Direction &d)
{
    const double th = d.theta_deg();
    double ph = d.phi_deg();

    // One-dimensional stencil along an axis, returns false when outside the sampled range.
    struct Axis
    {
        std::size_t i0, i1;
        double w1;
    };
    auto axis = [](double v, double start, double step, std::size_t n, bool periodic, Axis &a) {
        double t = (v - start) / step;
        if (periodic)
        {
            t = std::fmod(t, double(n));
            if (t < 0.0)
                t += double(n);
        }
        else
        {
            if (t < -1e-7 || t > double(n - 1) + 1e-7)
                return false;
            t = std::clamp(t, 0.0, double(n - 1));
        }
        double f = std::floor(t);
        double frac = t - f;
        if (frac > 1.0 - 1e-9)
        {
            f += 1.0;
            frac = 0.0;
        }
        else if (frac < 1e-9)
            frac = 0.0;
        a.i0 = std::size_t(f) % n;
        a.i1 = periodic ? (a.i0 + 1) % n : std::min(a.i0 + 1, n - 1);
        a.w1 = frac;
        return true;
    };

    if (grid.phi_periodic())
        ph = wrap_phi(ph);

    Axis at{}, ap{};
    const bool pole = std::sin(d.theta) < 1e-12;
    bool ok = axis(th, grid.theta_start_deg, grid.theta_step_deg, grid.n_theta, false, at);
    if (ok)
    {
        if (pole)
            ap = {grid.nearest_phi(d.phi), grid.nearest_phi(d.phi), 0.0};
        else
            ok = axis(ph, grid.phi_start_deg, grid.phi_step_deg, grid.n_phi, grid.phi_periodic(), ap);
    }
    if (!ok)
        fail(ErrorKind::out_of_domain, "direction (" + std::to_string(th) + ", " + std::to_string(d.phi_deg()) +
                                           ") deg lies outside the AEP grid");

    GridStencil s;
    const double wt[2] = {1.0 - at.w1, at.w1};
    const double wp[2] = {1.0 - ap.w1, ap.w1};
    const std::size_t it[2] = {at.i0, at.i1};
    const std::size_t ip[2] = {ap.i0, ap.i1};
    for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b)
        {
            const double w = wt[a] * wp[b];
            if (w == 0.0)
                continue;
            s.point[std::size_t(s.count)] = grid.point(it[a], ip[b]);
            s.weight[std::size_t(s.count)] = w;
            ++s.count;
        }
    return s;
}

AepSet AepSet::dense(const AngularGrid &grid, std::size_t n_elements, PhaseReference reference, Blocks blocks)
{
    grid.validate();
    require(n_elements >= 1, ErrorKind::invalid_argument, "AEP set needs at least one element");
    for (const auto &b : blocks)
        require(b.size() == n_elements * grid.size(), ErrorKind::invalid_argument,
                "AEP block size does not match elements x grid points");
    AepSet s;
    s.grid_ = grid;
    s.n_elements_ = n_elements;
    s.reference_ = reference;
    s.separable_ = false;
    s.blocks_ = std::move(blocks);
    s.validate();
    return s;
}

AepSet AepSet::separable(const AngularGrid &grid, PhaseReference reference, std::vector<cplx> coefficients,
                         Blocks shared)
{
    grid.validate();
    require(!coefficients.empty(), ErrorKind::invalid_argument, "AEP set needs at least one element");
    for (const auto &b : shared)
        require(b.size() == grid.size(), ErrorKind::invalid_argument, "shared AEP block size does not match the grid");
    AepSet s;
    s.grid_ = grid;
    s.n_elements_ = coefficients.size();
    s.reference_ = reference;
    s.separable_ = true;
    s.coefficients_ = std::move(coefficients);
    s.blocks_ = std::move(shared);
    s.validate();
    return s;
}

Eigen::Matrix2cd AepSet::jones(std::size_t element, std::size_t p) const
{
    Eigen::Matrix2cd j;
    j << value(Component::hh, element, p), value(Component::hv, element, p), value(Component::vh, element, p),
        value(Component::vv, element, p);
    return j;
}

Eigen::Matrix2cd AepSet::jones_at(std::size_t element, const Direction &d) const
{
    require(element < n_elements_, ErrorKind::invalid_argument, "element index out of range");
    const GridStencil s = grid_stencil(grid_, d);
    Eigen::Matrix2cd j = Eigen::Matrix2cd::Zero();
    for (int k = 0; k < s.count; ++k)
        j += s.weight[std::size_t(k)] * jones(element, s.point[std::size_t(k)]);
    return j;
}

AepSet AepSet::to_dense() const
{
    if (!separable_)
        return *this;
    Blocks b;
    const std::size_t np = grid_.size();
    for (std::size_t c = 0; c < 4; ++c)
    {
        b[c].resize(n_elements_ * np);
        for (std::size_t e = 0; e < n_elements_; ++e)
            for (std::size_t p = 0; p < np; ++p)
                b[c][e * np + p] = coefficients_[e] * blocks_[c][p];
    }
    return dense(grid_, n_elements_, reference_, std::move(b));
}

void AepSet::validate() const
{
    grid_.validate();
    auto finite = [](const std::vector<cplx> &v) {
        for (const auto &z : v)
            if (!std::isfinite(z.real()) || !std::isfinite(z.imag()))
                return false;
        return true;
    };
    for (const auto &b : blocks_)
        require(finite(b), ErrorKind::invalid_argument, "AEP data contains non-finite values");
    require(finite(coefficients_), ErrorKind::invalid_argument, "AEP coefficients contain non-finite values");
}

void SyntheticElementSpec::validate() const
{
    require(std::isfinite(q_e) && std::isfinite(q_h) && q_e >= 0.0 && q_h >= 0.0, ErrorKind::invalid_argument,
            "taper exponents must be finite and nonnegative");
    require(!std::isnan(xpol_level_db) && xpol_level_db <= 0.0,
            ErrorKind::invalid_argument, "cross-pol level must be <= 0 dB");
    require(std::isfinite(xpol_phase_deg), ErrorKind::invalid_argument, "cross-pol phase must be finite");
    require(std::isfinite(error_amplitude_db) && std::isfinite(error_phase_deg) && error_amplitude_db >= 0.0 &&
                error_phase_deg >= 0.0,
            ErrorKind::invalid_argument, "ripple levels must be finite and nonnegative");
}

std::array<cplx, 4> synthetic_element_pattern(const SyntheticElementSpec &spec, const Direction &d)
{
    const Eigen::Vector3d r = d.unit_vector();
    const double cos_psi = r.x();
    std::array<cplx, 4> out{};

    if (cos_psi <= 0.0)
    {
        out[std::size_t(Component::hh)] = back_hemisphere_floor;
        out[std::size_t(Component::vv)] = back_hemisphere_floor;
        return out;
    }

    // Blend the E- and H-plane exponents by the azimuth of r around broadside, measured from the
    // plane containing the port's current (y for H, z for V).
    const double tr = 1.0 - cos_psi * cos_psi;
    const double c2_h = tr > 1e-15 ? r.y() * r.y() / tr : 0.5;
    const double c2_v = tr > 1e-15 ? r.z() * r.z() / tr : 0.5;
    const double q_hport = spec.q_e * c2_h + spec.q_h * (1.0 - c2_h);
    const double q_vport = spec.q_e * c2_v + spec.q_h * (1.0 - c2_v);
    out[std::size_t(Component::hh)] = std::max(std::pow(cos_psi, q_hport), back_hemisphere_floor);
    out[std::size_t(Component::vv)] = std::max(std::pow(cos_psi, q_vport), back_hemisphere_floor);

    if (std::isfinite(spec.xpol_level_db))
    {
        const double q = 0.5 * (spec.q_e + spec.q_h);
        const double sin_psi = std::sqrt(std::max(tr, 0.0));
        double peak = 1.0;
        if (q > 0.0)
        {
            const double psi_star = std::atan(1.0 / std::sqrt(q));
            peak = std::sin(psi_star) * std::pow(std::cos(psi_star), q);
        }
        const double shape = sin_psi * std::pow(cos_psi, q) / peak;
        const cplx leak = std::pow(10.0, spec.xpol_level_db / 20.0) * shape * std::polar(1.0, to_rad(spec.xpol_phase_deg));
        out[std::size_t(Component::vh)] = leak;
        out[std::size_t(Component::hv)] = leak;
    }
    return out;
}

namespace
{
AepSet::Blocks shared_blocks(const AngularGrid &grid, const std::function<std::array<cplx, 4>(const Direction &)> &f)
{
    AepSet::Blocks b;
    for (auto &v : b)
        v.resize(grid.size());
    for (std::size_t p = 0; p < grid.size(); ++p)
    {
        const auto g = f(grid.direction(p));
        for (std::size_t c = 0; c < 4; ++c)
            b[c][p] = g[c];
    }
    return b;
}
} // namespace

AepSet synth_aep(const SyntheticElementSpec &spec, const ArrayGeometry &geometry, const AngularGrid &grid)
{
    spec.validate();
    grid.validate();

    Rng rng(spec.seed);
    std::vector<cplx> coeff(geometry.size());
    for (auto &c : coeff)
    {
        const double a = rng.normal() * spec.error_amplitude_db;
        const double p = rng.normal() * spec.error_phase_deg;
        c = std::pow(10.0, a / 20.0) * std::polar(1.0, to_rad(p));
    }
    auto shared = shared_blocks(grid, [&](const Direction &d) { return synthetic_element_pattern(spec, d); });
    return AepSet::separable(grid, PhaseReference::common, std::move(coeff), std::move(shared));
}

AepSet isotropic_aep(const ArrayGeometry &geometry, const AngularGrid &grid)
{
    grid.validate();
    auto shared = shared_blocks(grid, [](const Direction &) {
        return std::array<cplx, 4>{cplx(1.0), cplx(0.0), cplx(0.0), cplx(1.0)};
    });
    return AepSet::separable(grid, PhaseReference::common, std::vector<cplx>(geometry.size(), cplx(1.0)),
                             std::move(shared));
}

// ---------------------------------------------------------------------------------------------
// AEPv1

namespace
{
constexpr char magic[6] = {'A', 'E', 'P', 'V', '1', '\0'};
constexpr std::size_t header_size = 6 + 3 * 4 + 4 * 8 + 1;

void put_u32(std::vector<std::uint8_t> &out, std::uint32_t v)
{
    for (int k = 0; k < 4; ++k)
        out.push_back(std::uint8_t(v >> (8 * k)));
}

void put_f64(std::vector<std::uint8_t> &out, double v)
{
    const auto u = std::bit_cast<std::uint64_t>(v);
    for (int k = 0; k < 8; ++k)
        out.push_back(std::uint8_t(u >> (8 * k)));
}

std::uint32_t get_u32(const std::uint8_t *p)
{
    std::uint32_t v = 0;
    for (int k = 0; k < 4; ++k)
        v |= std::uint32_t(p[k]) << (8 * k);
    return v;
}

double get_f64(const std::uint8_t *p)
{
    std::uint64_t v = 0;
    for (int k = 0; k < 8; ++k)
        v |= std::uint64_t(p[k]) << (8 * k);
    return std::bit_cast<double>(v);
}

std::vector<std::uint8_t> encode_header(const AepSet &aep)
{
    const AngularGrid &g = aep.grid();
    std::vector<std::uint8_t> out(magic, magic + 6);
    out.reserve(header_size);
    put_u32(out, std::uint32_t(aep.elements()));
    put_u32(out, g.n_theta);
    put_u32(out, g.n_phi);
    put_f64(out, g.theta_start_deg);
    put_f64(out, g.theta_step_deg);
    put_f64(out, g.phi_start_deg);
    put_f64(out, g.phi_step_deg);
    out.push_back(std::uint8_t(aep.phase_reference()));
    return out;
}

// Appends one element's samples of one component.
void encode_element(const AepSet &aep, Component c, std::size_t e, std::vector<std::uint8_t> &out)
{
    const std::size_t np = aep.grid().size();
    for (std::size_t p = 0; p < np; ++p)
    {
        const cplx z = aep.value(c, e, p);
        put_f64(out, z.real());
        put_f64(out, z.imag());
    }
}

std::string offset_text(std::size_t off) { return " at byte offset " + std::to_string(off); }
} // namespace

std::vector<std::uint8_t> serialize_aep(const AepSet &aep)
{
    require(aep.elements() <= 0xFFFFFFFFu, ErrorKind::invalid_argument, "too many elements for AEPv1");
    std::vector<std::uint8_t> out = encode_header(aep);
    out.reserve(header_size + 4 * aep.elements() * aep.grid().size() * 16);
    for (int c = 0; c < 4; ++c)
        for (std::size_t e = 0; e < aep.elements(); ++e)
            encode_element(aep, Component(c), e, out);
    return out;
}

AepSet parse_aep(std::span<const std::uint8_t> bytes)
{
    if (bytes.size() < header_size)
        fail(ErrorKind::format_error, "truncated header: expected at least " + std::to_string(header_size) +
                                          " bytes, got " + std::to_string(bytes.size()) + offset_text(bytes.size()));
    if (std::memcmp(bytes.data(), magic, 6) != 0)
        fail(ErrorKind::format_error, "bad magic, expected \"AEPV1\\0\"" + offset_text(0));

    const std::uint8_t *p = bytes.data();
    const std::uint32_t n_el = get_u32(p + 6);
    AngularGrid g;
    g.n_theta = get_u32(p + 10);
    g.n_phi = get_u32(p + 14);
    g.theta_start_deg = get_f64(p + 18);
    g.theta_step_deg = get_f64(p + 26);
    g.phi_start_deg = get_f64(p + 34);
    g.phi_step_deg = get_f64(p + 42);
    const std::uint8_t flag = p[50];

    if (n_el == 0)
        fail(ErrorKind::format_error, "element count is zero" + offset_text(6));
    try
    {
        g.validate();
    }
    catch (const Error &e)
    {
        fail(ErrorKind::format_error, std::string("invalid grid header (") + e.what() + ")" + offset_text(10));
    }
    if (flag > 1)
        fail(ErrorKind::format_error, "phase_center_flag must be 0 or 1, got " + std::to_string(flag) + offset_text(50));

    const std::size_t np = g.size();
    const unsigned __int128 expected128 = (unsigned __int128)header_size + (unsigned __int128)4 * n_el * np * 16;
    if (expected128 != (unsigned __int128)bytes.size())
    {
        const std::string expected = expected128 > (unsigned __int128)SIZE_MAX ? std::string("more than SIZE_MAX")
                                                                               : std::to_string(std::size_t(expected128));
        fail(ErrorKind::format_error, "payload length mismatch: expected " + expected + " bytes, got " +
                                          std::to_string(bytes.size()) + offset_text(std::min<std::size_t>(
                                              bytes.size(), header_size)));
    }

    AepSet::Blocks blocks;
    std::size_t off = header_size;
    for (auto &b : blocks)
    {
        b.resize(std::size_t(n_el) * np);
        for (auto &z : b)
        {
            const double re = get_f64(p + off), im = get_f64(p + off + 8);
            if (!std::isfinite(re) || !std::isfinite(im))
                fail(ErrorKind::format_error, "non-finite sample" + offset_text(std::isfinite(re) ? off + 8 : off));
            z = cplx(re, im);
            off += 16;
        }
    }
    return AepSet::dense(g, n_el, PhaseReference(flag), std::move(blocks));
}

void save_aep(const AepSet &aep, const std::filesystem::path &path)
{
    require(aep.elements() <= 0xFFFFFFFFu, ErrorKind::invalid_argument, "too many elements for AEPv1");
    std::filesystem::path tmp = path;
    tmp += ".tmp";
    {
        std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
        if (!f)
            fail(ErrorKind::io_error, "cannot open " + tmp.string() + " for writing");
        auto write = [&](const std::vector<std::uint8_t> &buf) {
            f.write(reinterpret_cast<const char *>(buf.data()), std::streamsize(buf.size()));
        };
        write(encode_header(aep));
        std::vector<std::uint8_t> buf;
        for (int c = 0; c < 4; ++c)
            for (std::size_t e = 0; e < aep.elements(); ++e)
            {
                buf.clear();
                encode_element(aep, Component(c), e, buf);
                write(buf);
            }
        f.flush();
        if (!f)
        {
            f.close();
            std::error_code ec;
            std::filesystem::remove(tmp, ec);
            fail(ErrorKind::io_error, "write failed for " + tmp.string());
        }
    }
    std::error_code ec;
    std::filesystem::rename(tmp, path, ec);
    if (ec)
    {
        std::filesystem::remove(tmp, ec);
        fail(ErrorKind::io_error, "cannot move " + tmp.string() + " to " + path.string());
    }
}

AepSet load_aep(const std::filesystem::path &path)
{
    std::error_code ec;
    if (!std::filesystem::is_regular_file(path, ec))
        fail(ErrorKind::io_error, "file not found: " + path.string());
    std::ifstream f(path, std::ios::binary);
    if (!f)
        fail(ErrorKind::io_error, "cannot open " + path.string());
    std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(f)), std::istreambuf_iterator<char>());
    return parse_aep(bytes);
}

bool identical(const AepSet &a, const AepSet &b)
{
    if (!(a.grid() == b.grid()) || a.elements() != b.elements() || a.phase_reference() != b.phase_reference())
        return false;
    const std::size_t np = a.grid().size();
    for (int c = 0; c < 4; ++c)
        for (std::size_t e = 0; e < a.elements(); ++e)
            for (std::size_t p = 0; p < np; ++p)
            {
                const cplx x = a.value(Component(c), e, p), y = b.value(Component(c), e, p);
                if (std::bit_cast<std::uint64_t>(x.real()) != std::bit_cast<std::uint64_t>(y.real()) ||
                    std::bit_cast<std::uint64_t>(x.imag()) != std::bit_cast<std::uint64_t>(y.imag()))
                    return false;
            }
    return true;
}

} // namespace pcrpa
