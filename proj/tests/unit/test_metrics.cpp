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

#include "pcrpa/error.hpp"
#include "pcrpa/metrics.hpp"
#include "support.hpp"

using namespace pcrpa;

namespace
{
// Pattern with given H/V fields on a grid and the beam at `beam`.
FieldPattern make_pattern(const AngularGrid &grid, const Direction &beam,
                          const std::function<std::pair<cplx, cplx>(const Direction &)> &f)
{
    FieldPattern p;
    p.grid = grid;
    p.beam = beam;
    p.f_h.resize(grid.size());
    p.f_v.resize(grid.size());
    for (std::size_t k = 0; k < grid.size(); ++k)
        std::tie(p.f_h[k], p.f_v[k]) = f(grid.direction(k));
    std::tie(p.beam_h, p.beam_v) = f(beam);
    p.set_polarization(PolarizationState::horizontal());
    return p;
}

FieldPattern linear_array_pattern(std::size_t n, double step_deg)
{
    static std::vector<std::unique_ptr<ArrayGeometry>> keep_g;
    static std::vector<std::unique_ptr<AepSet>> keep_a;
    keep_g.push_back(std::make_unique<ArrayGeometry>(build_rectangular(1, n, 0.5)));
    keep_a.push_back(std::make_unique<AepSet>(isotropic_aep(*keep_g.back(), test::horizon_cut(step_deg))));
    const PatternEngine eng(*keep_g.back(), *keep_a.back());
    const Direction beam = Direction::from_degrees(90.0, 0.0);
    auto f = evaluate_pattern(eng, steering_weights(*keep_g.back(), beam), test::ones(n), test::zeros(n), beam);
    f.set_polarization(PolarizationState::horizontal());
    return f;
}
} // namespace

TEST_SUITE("metrics")
{
    TEST_CASE("uniform line sidelobe level")
    {
        const std::size_t n = 16;
        const auto f = linear_array_pattern(n, 0.05);
        const Direction beam = f.beam;
        const auto regions = regions_with_radius(beam, std::asin(1.0 / 8.0));
        const double level = psl(f, regions);

        // Brute-force array factor beyond the first null
        double side = 0.0;
        for (double s = 1.0 / 8.0; s <= 1.0; s += 1e-6)
        {
            const double psi = pi * s;
            side = std::max(side, std::abs(std::sin(double(n) * psi / 2.0) / (double(n) * std::sin(psi / 2.0))));
        }
        CHECK(level == doctest::Approx(amplitude_db(side)).epsilon(0.002));
        CHECK(level == doctest::Approx(-13.1).epsilon(0.2 / 13.1));
    }

    TEST_CASE("constant pattern")
    {
        const auto f = make_pattern(AngularGrid::full_sphere(5.0), Direction::from_degrees(90.0, 0.0),
                                    [](const Direction &) { return std::pair<cplx, cplx>{1.0, 0.0}; });
        CHECK(psl(f, regions_with_radius(f.beam, to_rad(10.0))) == doctest::Approx(0.0));
        CHECK(xpl(f) == doctest::Approx(-120.0));
        CHECK(xplm(f) == doctest::Approx(-120.0));
        CHECK_THROWS_AS(half_power_beamwidth(f, CutPlane::elevation), Error);
        CHECK_THROWS_AS(psl(f, regions_with_radius(f.beam, pi)), Error);
    }

    TEST_CASE("equal co and cross fields")
    {
        const auto f = make_pattern(AngularGrid::full_sphere(5.0), Direction::from_degrees(90.0, 0.0),
                                    [](const Direction &d) {
                                        const cplx a = 1.0 + std::sin(d.theta);
                                        return std::pair<cplx, cplx>{a, a};
                                    });
        CHECK(xpl(f) == doctest::Approx(0.0));
        CHECK(xplm(f) == doctest::Approx(0.0));
    }

    TEST_CASE("metrics need co/cross components")
    {
        FieldPattern f = make_pattern(AngularGrid::full_sphere(10.0), {}, [](const Direction &) {
            return std::pair<cplx, cplx>{1.0, 0.0};
        });
        f.polarization.reset();
        CHECK_THROWS_AS(xpl(f), Error);
    }

    TEST_CASE("directivity quadrature")
    {
        const auto grid = AngularGrid::full_sphere(1.0);
        const auto iso = make_pattern(grid, Direction::from_degrees(90.0, 0.0),
                                      [](const Direction &) { return std::pair<cplx, cplx>{1.0, 0.0}; });
        CHECK(directivity(iso) == doctest::Approx(0.0).epsilon(0.05));
        CHECK(std::abs(directivity(iso)) < 0.05);

        // Short dipole along z: field sin(theta), D = 1.5
        const auto dip = make_pattern(grid, Direction::from_degrees(90.0, 0.0), [](const Direction &d) {
            return std::pair<cplx, cplx>{std::sin(d.theta), 0.0};
        });
        CHECK(std::abs(directivity(dip) - 10.0 * std::log10(1.5)) < 0.1);

        // Single isotropic element through the engine
        const auto g = build_rectangular(1, 1, 0.5);
        const auto aep = isotropic_aep(g, grid);
        const PatternEngine eng(g, aep);
        const auto f = evaluate_pattern(eng, steering_weights(g, {}), {1}, {0}, {});
        CHECK(std::abs(directivity(f)) < 0.05);

        CHECK_THROWS_AS(directivity(linear_array_pattern(4, 1.0)), Error);
    }

    TEST_CASE("power at the beam")
    {
        const auto g = build_rectangular(4, 4, 0.5);
        const auto aep = isotropic_aep(g, AngularGrid::full_sphere(5.0));
        const PatternEngine eng(g, aep);
        const Direction beam = Direction::from_degrees(120.0, 15.0);
        const auto w = steering_weights(g, beam);
        auto full = evaluate_pattern(eng, w, test::ones(16), test::zeros(16), beam);
        full.set_polarization(PolarizationState::horizontal());
        CHECK(power_at_beam(full, full) == 0.0);

        BitVector half = test::zeros(16);
        for (int i = 0; i < 8; ++i)
            half[2 * i] = 1;
        auto part = evaluate_pattern(eng, w, half, test::zeros(16), beam);
        part.set_polarization(PolarizationState::horizontal());
        CHECK(power_at_beam(part, full) == doctest::Approx(20.0 * std::log10(0.5)));
    }

    TEST_CASE("matching error")
    {
        // Ten grid points fall within 4.6 deg of a beam at phi = 0.5 deg on a 1 deg cut.
        const auto grid = test::horizon_cut(1.0);
        const Direction beam = Direction::from_degrees(90.0, 0.5);
        const auto regions = regions_with_radius(beam, to_rad(4.6));
        std::size_t inside = 0;
        for (std::size_t p = 0; p < grid.size(); ++p)
            inside += regions.in_mainlobe(grid.direction(p));
        REQUIRE(inside == 10);

        auto shape = [](const Direction &d) { return std::pair<cplx, cplx>{1.0 + std::cos(d.phi), 0.0}; };
        const auto a = make_pattern(grid, beam, shape);
        const auto b = make_pattern(grid, beam, [&](const Direction &d) {
            auto [h, v] = shape(d);
            return std::pair<cplx, cplx>{2.0 * h, v};
        });
        CHECK(matching_error(a, a, regions) == doctest::Approx(-120.0));
        CHECK(matching_error(a, b, regions) == doctest::Approx(20.0));
    }

    TEST_CASE("half-power beamwidth")
    {
        const auto f = linear_array_pattern(16, 0.05);
        CHECK(half_power_beamwidth(f, CutPlane::azimuth) == doctest::Approx(to_deg(0.886 / 8.0)).epsilon(0.02));

        const auto g = build_rectangular(8, 8, 0.5);
        const auto aep = isotropic_aep(g, AngularGrid::full_sphere(0.5));
        const PatternEngine eng(g, aep);
        const Direction beam = Direction::from_degrees(90.0, 0.0);
        auto sq = evaluate_pattern(eng, steering_weights(g, beam), test::ones(64), test::zeros(64), beam);
        sq.set_polarization(PolarizationState::horizontal());
        CHECK(half_power_beamwidth(sq, CutPlane::elevation) == doctest::Approx(to_deg(0.886 / 4.0)).epsilon(0.02));
        CHECK(half_power_beamwidth(sq, CutPlane::azimuth) == doctest::Approx(to_deg(0.886 / 4.0)).epsilon(0.02));
    }

    TEST_CASE("regions")
    {
        CHECK(RegionSpec::visible(Direction::from_degrees(90.0, 90.0)));
        CHECK(RegionSpec::visible(Direction::from_degrees(10.0, 0.0)));
        CHECK(!RegionSpec::visible(Direction::from_degrees(90.0, 120.0)));
        const auto r = regions_with_radius(Direction::from_degrees(120.0, 15.0), to_rad(10.0));
        CHECK(r.in_mainlobe(Direction::from_degrees(125.0, 15.0)));
        CHECK(r.in_sidelobe(Direction::from_degrees(100.0, 15.0)));
        CHECK(!r.in_sidelobe(Direction::from_degrees(100.0, 170.0)));

        const auto f = linear_array_pattern(16, 0.1);
        const auto m = make_regions(f, 2.0);
        CHECK(to_deg(m.mainlobe_radius) == doctest::Approx(half_power_beamwidth(f, CutPlane::azimuth)));
    }

    TEST_CASE("metrics report")
    {
        const auto f = linear_array_pattern(16, 0.1);
        const auto rep = evaluate_metrics(f, regions_with_radius(f.beam, std::asin(1.0 / 8.0)), &f);
        CHECK(rep.psl_db == doctest::Approx(-13.1).epsilon(0.02));
        CHECK(rep.xpl_db == -120.0);
        CHECK(!rep.directivity_dbi.has_value());
        REQUIRE(rep.power_db.has_value());
        CHECK(*rep.power_db == 0.0);
    }
}
