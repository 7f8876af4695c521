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

#include "doctest.h"

#include <cstring>
#include <filesystem>
#include <fstream>
#include <limits>

#include "pcrpa/error.hpp"
#include "support.hpp"

using namespace pcrpa;
namespace fs = std::filesystem;

namespace
{
fs::path scratch(const std::string &name)
{
    const fs::path dir = fs::temp_directory_path() / "pcrpa_unit";
    fs::create_directories(dir);
    return dir / name;
}

std::vector<std::uint8_t> read_bytes(const fs::path &p)
{
    std::ifstream f(p, std::ios::binary);
    return {std::istreambuf_iterator<char>(f), std::istreambuf_iterator<char>()};
}

double f64_at(const std::vector<std::uint8_t> &b, std::size_t off)
{
    std::uint64_t u = 0;
    for (int k = 0; k < 8; ++k)
        u |= std::uint64_t(b[off + k]) << (8 * k);
    return std::bit_cast<double>(u);
}
} // namespace

TEST_SUITE("elements")
{
    TEST_CASE("grid layout")
    {
        const auto g = AngularGrid::full_sphere(1.0);
        CHECK(g.n_theta == 181);
        CHECK(g.n_phi == 360);
        CHECK(g.covers_sphere());
        CHECK(g.phi_deg(359) == doctest::Approx(179.0));
        CHECK(g.nearest_point(Direction::from_degrees(120.2, 15.4)) == g.point(120, 195));

        const auto d = g.decimated(2);
        CHECK(d.n_theta == 91);
        CHECK(d.n_phi == 180);
        CHECK(d.theta_step_deg == 2.0);

        const auto cut = AngularGrid::phi_cut(90.0, -180.0, 0.5, 720);
        CHECK(cut.n_theta == 1);
        CHECK(!cut.covers_sphere());
        CHECK(cut.phi_periodic());
    }

    TEST_CASE("stencil reproduces grid values and interpolates linearly")
    {
        const auto g = AngularGrid::full_sphere(2.0);
        const auto s = grid_stencil(g, Direction::from_degrees(40.0, 10.0));
        double w = 0.0;
        for (int k = 0; k < s.count; ++k)
            w += s.weight[k];
        CHECK(w == doctest::Approx(1.0));

        // A pattern linear in theta and phi is reproduced exactly between samples.
        const auto geo = build_rectangular(1, 1, 0.5);
        AepSet::Blocks b;
        for (auto &c : b)
            c.assign(g.size(), 0.0);
        for (std::size_t p = 0; p < g.size(); ++p)
        {
            const Direction d = g.direction(p);
            b[0][p] = to_deg(d.theta) + 0.5 * to_deg(d.phi);
        }
        const auto aep = AepSet::dense(g, 1, PhaseReference::embedded, b);
        CHECK(aep.jones_at(0, Direction::from_degrees(41.3, 11.1))(0, 0).real() ==
              doctest::Approx(41.3 + 0.5 * 11.1));
        (void)geo;
    }

    TEST_CASE("stencil outside a partial grid")
    {
        const auto cut = AngularGrid::phi_cut(90.0, -180.0, 1.0, 360);
        CHECK_THROWS_AS(grid_stencil(cut, Direction::from_degrees(60.0, 0.0)), Error);
        CHECK(grid_stencil(cut, Direction::from_degrees(90.0, 12.5)).count >= 1);
    }

    TEST_CASE("disabled leakage without ripple")
    {
        SyntheticElementSpec spec;
        spec.xpol_level_db = -std::numeric_limits<double>::infinity();
        spec.error_amplitude_db = 0.0;
        spec.error_phase_deg = 0.0;
        const auto geo = build_rectangular(2, 2, 0.5);
        const auto aep = synth_aep(spec, geo, AngularGrid::full_sphere(5.0));
        for (std::size_t i = 0; i < 4; ++i)
            for (std::size_t p = 0; p < aep.grid().size(); ++p)
            {
                REQUIRE(aep.value(Component::vh, i, p) == cplx(0.0));
                REQUIRE(aep.value(Component::hv, i, p) == cplx(0.0));
            }
        for (std::size_t i = 0; i < 4; ++i)
            CHECK(aep.coefficients()[i] == cplx(1.0));
    }

    TEST_CASE("synthetic element shape")
    {
        const SyntheticElementSpec spec;
        const auto broadside = synthetic_element_pattern(spec, Direction::from_degrees(90.0, 0.0));
        CHECK(std::abs(broadside[0]) == doctest::Approx(1.0));
        CHECK(std::abs(broadside[3]) == doctest::Approx(1.0));
        CHECK(std::abs(broadside[1]) / std::abs(broadside[0]) == 0.0);
        CHECK(std::abs(broadside[2]) == 0.0);

        // cos^q taper with q = 1: 60 deg off broadside halves the field.
        const auto off = synthetic_element_pattern(spec, Direction::from_degrees(30.0, 0.0));
        CHECK(std::abs(off[0]) == doctest::Approx(0.5));

        const auto back = synthetic_element_pattern(spec, Direction::from_degrees(90.0, 180.0));
        CHECK(std::abs(back[0]) == doctest::Approx(back_hemisphere_floor));
        CHECK(std::abs(back[1]) == 0.0);

        // Leakage peaks at the requested level relative to the co-pol peak.
        double peak = 0.0;
        for (double th = 0.0; th <= 180.0; th += 0.5)
            for (double ph = -90.0; ph <= 90.0; ph += 0.5)
                peak = std::max(peak, std::abs(synthetic_element_pattern(spec, Direction::from_degrees(th, ph))[1]));
        CHECK(amplitude_db(peak) == doctest::Approx(-25.0).epsilon(0.002));
    }

    TEST_CASE("synthetic sets are seeded")
    {
        const auto geo = build_rectangular(4, 4, 0.5);
        const auto grid = AngularGrid::full_sphere(5.0);
        SyntheticElementSpec spec;
        const auto a = synth_aep(spec, geo, grid), b = synth_aep(spec, geo, grid);
        CHECK(identical(a, b));
        spec.seed = 2;
        CHECK(!identical(a, synth_aep(spec, geo, grid)));
        CHECK(serialize_aep(a) == serialize_aep(b));
    }

    TEST_CASE("invalid synthetic spec")
    {
        SyntheticElementSpec spec;
        spec.q_e = -1.0;
        CHECK_THROWS_AS(spec.validate(), Error);
        spec = {};
        spec.xpol_level_db = 3.0;
        CHECK_THROWS_AS(spec.validate(), Error);
    }

    TEST_CASE("AEPv1 write then read")
    {
        const auto geo = build_rectangular(2, 2, 0.5);
        const auto aep = synth_aep({}, geo, AngularGrid::full_sphere(10.0));
        const fs::path f = scratch("rt.aep");
        save_aep(aep, f);
        const AepSet back = load_aep(f);
        CHECK(!back.is_separable());
        for (int c = 0; c < 4; ++c)
            for (std::size_t i = 0; i < 4; ++i)
                for (std::size_t p = 0; p < aep.grid().size(); ++p)
                    REQUIRE(back.value(Component(c), i, p) == aep.value(Component(c), i, p));

        const fs::path f2 = scratch("rt2.aep");
        save_aep(back, f2);
        CHECK(read_bytes(f) == read_bytes(f2));

        const auto bytes = read_bytes(f);
        CHECK(std::memcmp(bytes.data(), "AEPV1", 6) == 0);
        CHECK(f64_at(bytes, 26) == 10.0); // theta step
        CHECK(f64_at(bytes, 42) == 10.0); // phi step
        CHECK(bytes.size() == 51 + 4 * 4 * aep.grid().size() * 16);
    }

    TEST_CASE("truncated AEPv1 file")
    {
        const auto geo = build_rectangular(1, 2, 0.5);
        auto bytes = serialize_aep(synth_aep({}, geo, AngularGrid::full_sphere(30.0)));
        const std::size_t full = bytes.size();
        bytes.resize(full - 7);
        try
        {
            parse_aep(bytes);
            FAIL("expected a format error");
        }
        catch (const Error &e)
        {
            CHECK(e.kind() == ErrorKind::format_error);
            const std::string msg = e.what();
            CHECK(msg.find("expected " + std::to_string(full)) != std::string::npos);
            CHECK(msg.find("got " + std::to_string(full - 7)) != std::string::npos);
        }
        bytes.resize(20);
        CHECK_THROWS_AS(parse_aep(bytes), Error);
        bytes.assign(full, 0);
        CHECK_THROWS_AS(parse_aep(bytes), Error);
    }

    TEST_CASE("file errors")
    {
        try
        {
            load_aep(scratch("missing.aep"));
            FAIL("expected an io error");
        }
        catch (const Error &e)
        {
            CHECK(e.kind() == ErrorKind::io_error);
            CHECK(std::string(e.what()).find("file not found") != std::string::npos);
        }
        const auto geo = build_rectangular(1, 1, 0.5);
        const auto aep = isotropic_aep(geo, AngularGrid::full_sphere(30.0));
        CHECK_THROWS_AS(save_aep(aep, "/proc/pcrpa/nope.aep"), Error);
    }
}
