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
#include "pcrpa/polar.hpp"
#include "support.hpp"

using namespace pcrpa;

namespace
{
bool near(const Eigen::Vector2cd &a, const Eigen::Vector2cd &b, double tol = 1e-15) { return (a - b).norm() < tol; }
} // namespace

TEST_SUITE("polar")
{
    TEST_CASE("basis endpoints")
    {
        const auto h = jones_basis(PolarizationState::from_degrees(0.0, 37.0));
        CHECK(near(h.co, Eigen::Vector2cd(1.0, 0.0)));
        CHECK(near(h.cr, Eigen::Vector2cd(0.0, 1.0)));

        const auto v = jones_basis(PolarizationState::vertical());
        CHECK(near(v.co, Eigen::Vector2cd(0.0, 1.0)));
        CHECK(near(v.cr, Eigen::Vector2cd(-1.0, 0.0)));
    }

    TEST_CASE("circular basis")
    {
        const double r = std::sqrt(0.5);
        const auto b = jones_basis(PolarizationState::from_degrees(45.0, 90.0));
        CHECK(near(b.co, Eigen::Vector2cd(r, cplx(0.0, r)), 1e-15));
        CHECK(std::abs(b.co.dot(b.cr)) < 1e-15); // Eigen's dot conjugates the first argument
    }

    TEST_CASE("projection onto the basis")
    {
        auto c = hv_to_copol(0.0, 1.0, jones_basis(PolarizationState::vertical()));
        CHECK(std::abs(c.co - 1.0) < 1e-15);
        CHECK(std::abs(c.cr) < 1e-15);

        c = hv_to_copol(0.0, 1.0, jones_basis(PolarizationState::horizontal()));
        CHECK(std::abs(c.co) < 1e-15);
        CHECK(std::abs(c.cr) == doctest::Approx(1.0));
    }

    TEST_CASE("round trip over random fields")
    {
        Rng rng(3);
        for (int t = 0; t < 1000; ++t)
        {
            const PolarizationState s(rng.uniform() * pi / 2.0, (rng.uniform() * 2.0 - 1.0) * pi);
            const cplx fh(rng.normal(), rng.normal()), fv(rng.normal(), rng.normal());
            const auto basis = jones_basis(s);
            const auto c = hv_to_copol(fh, fv, basis);
            const auto [h, v] = copol_to_hv(c.co, c.cr, basis);
            REQUIRE(std::abs(h - fh) < 1e-12);
            REQUIRE(std::abs(v - fv) < 1e-12);
            // Unitary basis: total power is preserved.
            REQUIRE(std::norm(c.co) + std::norm(c.cr) == doctest::Approx(std::norm(fh) + std::norm(fv)));
        }
    }

    TEST_CASE("grid conversion matches the scalar form")
    {
        const auto s = PolarizationState::from_degrees(20.0, -50.0);
        const std::vector<cplx> fh{1.0, cplx(0.0, 2.0), cplx(-1.0, 0.5)};
        const std::vector<cplx> fv{cplx(0.3, 0.1), 0.0, 4.0};
        std::vector<cplx> co, cr;
        hv_to_copol(fh, fv, s, co, cr);
        REQUIRE(co.size() == 3);
        for (std::size_t i = 0; i < 3; ++i)
        {
            const auto c = hv_to_copol(fh[i], fv[i], jones_basis(s));
            CHECK(co[i] == c.co);
            CHECK(cr[i] == c.cr);
        }
    }

    TEST_CASE("state domain")
    {
        CHECK_THROWS_AS(PolarizationState::from_degrees(-1.0, 0.0), Error);
        CHECK_THROWS_AS(PolarizationState::from_degrees(91.0, 0.0), Error);
        CHECK(PolarizationState::from_degrees(10.0, 180.0).eta_deg() == doctest::Approx(-180.0));
    }

    TEST_CASE("identity decomposition")
    {
        auto [uh, uv] = decompose_identity(PolarizationState::from_degrees(30.0, 60.0));
        CHECK(std::abs(uh - std::sqrt(3.0) / 2.0) < 1e-15);
        CHECK(std::abs(uv - std::polar(0.5, pi / 3.0)) < 1e-15);

        std::tie(uh, uv) = decompose_identity(PolarizationState::from_degrees(0.0, 0.0));
        CHECK(uh == cplx(1.0));
        CHECK(uv == cplx(0.0));

        std::tie(uh, uv) = decompose_identity(PolarizationState::from_degrees(45.0, -90.0));
        CHECK(std::abs(uh - std::sqrt(0.5)) < 1e-15);
        CHECK(std::abs(uv - std::polar(std::sqrt(0.5), -pi / 2.0)) < 1e-15);
    }

    TEST_CASE("decomposition on ideal ports")
    {
        const Eigen::Vector2cd eh(1.0, 0.0), ev(0.0, 1.0);
        auto d = decompose_on_basis(PolarizationState::from_degrees(30.0, 60.0), eh, ev, 256);
        // ceil(u_h / (u_h + u_v) * n) with the closed-form coefficients
        const double uh = std::cos(pi / 6.0), uv = std::sin(pi / 6.0);
        CHECK(d.n_h == std::size_t(std::ceil(uh / (uh + uv) * 256.0)));
        CHECK(d.n_h == 163);
        CHECK(d.n_v == 93);
        CHECK(to_deg(d.beta) == doctest::Approx(60.0));

        d = decompose_on_basis(PolarizationState::vertical(), eh, ev, 256);
        CHECK(d.n_h == 0);
        CHECK(d.n_v == 256);
        CHECK(d.beta == 0.0);

        d = decompose_on_basis(PolarizationState::horizontal(), eh, ev, 256);
        CHECK(d.n_h == 256);
        CHECK(d.n_v == 0);

        // Equal split is exact, not rounded up.
        d = decompose_on_basis(PolarizationState::from_degrees(45.0, 0.0), eh, ev, 256);
        CHECK(d.n_h == 128);
    }

    TEST_CASE("decomposition of a rotated basis recovers the state")
    {
        // Ports tilted by 10 deg: asking for 10 deg linear needs only the H port.
        const double a = to_rad(10.0);
        const Eigen::Vector2cd eh(std::cos(a), std::sin(a)), ev(-std::sin(a), std::cos(a));
        const auto d = decompose_on_basis(PolarizationState::from_degrees(10.0, 0.0), eh, ev, 100);
        CHECK(d.n_h == 100);
        CHECK(std::abs(d.u_v) < 1e-15);
    }

    TEST_CASE("degenerate port basis")
    {
        const Eigen::Vector2cd e(1.0, 0.0);
        CHECK_THROWS_AS(decompose_on_basis(PolarizationState::from_degrees(30.0, 0.0), e, e, 16), Error);
    }

    TEST_CASE("decomposition from an AEP set uses the center element")
    {
        const auto g = build_rectangular(16, 16, 0.5);
        const auto aep = isotropic_aep(g, AngularGrid::full_sphere(5.0));
        const auto d = decompose_aep(PolarizationState::from_degrees(30.0, 60.0), aep, g,
                                     Direction::from_degrees(120.0, 15.0));
        CHECK(d.n_h == 163);
        CHECK(d.n_v == 93);
        CHECK(to_deg(d.beta) == doctest::Approx(60.0));
    }

    TEST_CASE("quantized gamma")
    {
        CHECK(to_deg(quantized_gamma(128, 128)) == doctest::Approx(45.0));
        CHECK(to_deg(quantized_gamma(163, 93)) == doctest::Approx(29.71).epsilon(1e-4));
        CHECK(to_deg(quantized_gamma(0, 256)) == doctest::Approx(90.0));
        CHECK(to_deg(quantized_gamma(256, 0)) == 0.0);
    }
}
