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
#include "pcrpa/geom.hpp"
#include "support.hpp"

using namespace pcrpa;

TEST_SUITE("geom")
{
    TEST_CASE("two elements straddle the origin along y")
    {
        const auto g = build_rectangular(1, 2, 0.5);
        CHECK(g.position(0).y() == doctest::Approx(-0.25));
        CHECK(g.position(1).y() == doctest::Approx(0.25));
        CHECK(g.position(0).z() == 0.0);
        CHECK(g.position(0).x() == 0.0);
    }

    TEST_CASE("16x16 extent")
    {
        const auto g = build_rectangular(16, 16, 0.5);
        CHECK(g.size() == 256);
        const auto &p = g.positions();
        CHECK(p.row(1).maxCoeff() - p.row(1).minCoeff() == doctest::Approx(7.5));
        CHECK(p.row(2).maxCoeff() - p.row(2).minCoeff() == doctest::Approx(7.5));
    }

    TEST_CASE("opposite elements cancel")
    {
        const auto g = build_rectangular(4, 4, 0.5);
        CHECK(g.position(0).norm() > 0.0);
        CHECK((g.position(0) + g.position(15)).norm() < 1e-15);
        for (std::size_t i = 0; i < g.size(); ++i)
            CHECK((g.position(i) + g.position(g.size() - 1 - i)).norm() < 1e-15);
    }

    TEST_CASE("row-major indexing")
    {
        const auto g = build_rectangular(3, 5, 0.7);
        CHECK(g.index(2, 1) == 11);
        CHECK(g.row_of(11) == 2);
        CHECK(g.col_of(11) == 1);
        CHECK(g.position(g.index(0, 4)).y() > g.position(g.index(0, 0)).y());
        CHECK(g.position(g.index(2, 0)).z() > g.position(g.index(0, 0)).z());
    }

    TEST_CASE("invalid dimensions")
    {
        CHECK_THROWS_AS(build_rectangular(0, 4, 0.5), Error);
        CHECK_THROWS_AS(build_rectangular(4, 4, 0.0), Error);
        CHECK_THROWS_AS(build_rectangular(4, 4, -1.0), Error);
    }

    TEST_CASE("rot180 on a 2x2 lattice")
    {
        const auto g = build_rectangular(2, 2, 0.5);
        CHECK(rot180_vector({1, 0, 0, 0}, g) == BitVector{0, 0, 0, 1});
        CHECK(rot180_vector(test::ones(4), g) == test::ones(4));
    }

    TEST_CASE("rot180 is an involution and mirrors positions")
    {
        const auto g = build_rectangular(4, 4, 0.5);
        Rng rng(7);
        for (int t = 0; t < 100; ++t)
        {
            const BitVector x = test::random_bits(16, rng);
            CHECK(rot180_vector(rot180_vector(x, g), g) == x);
        }
        // A single set bit moves to the element at the mirrored position.
        for (std::size_t i = 0; i < g.size(); ++i)
        {
            BitVector x = test::zeros(16);
            x[i] = 1;
            const BitVector y = rot180_vector(x, g);
            std::size_t j = 0;
            while (!y[j])
                ++j;
            CHECK((g.position(i) + g.position(j)).norm() < 1e-15);
        }
        CHECK_THROWS_AS(rot180_vector(BitVector(15, 0), g), Error);
    }

    TEST_CASE("rotation map is an anti-diagonal permutation")
    {
        const auto g = build_rectangular(4, 4, 0.5);
        const RotationMap r(g);
        CHECK(r.half() == 8);
        const Eigen::MatrixXi t = r.matrix();
        CHECK(t.rows() == 8);
        CHECK((t * t).isIdentity());
        for (int i = 0; i < 8; ++i)
            CHECK(t(i, 7 - i) == 1);
        CHECK_THROWS_AS(RotationMap(build_rectangular(3, 3, 0.5)), Error);
    }

    TEST_CASE("symmetric pair on a 4-element line")
    {
        const auto g = build_rectangular(1, 4, 0.5);
        const RotationMap r(g);
        const auto p = central_symmetric_pair({1, 0}, r);
        CHECK(p.x_1h == BitVector{1, 0, 1, 0});
        CHECK(p.x_2v == BitVector{0, 1, 0, 1});
        CHECK(rot180_vector(p.x_1h, g) == p.x_2v);

        const auto all = central_symmetric_pair({1, 1}, r);
        CHECK(all.x_1h == BitVector{1, 1, 0, 0});
        CHECK_THROWS_AS(central_symmetric_pair({1, 0, 1}, r), Error);
    }

    TEST_CASE("symmetric pairs split the 8x8 array in half")
    {
        const auto g = build_rectangular(8, 8, 0.5);
        const RotationMap r(g);
        Rng rng(11);
        for (int t = 0; t < 1000; ++t)
        {
            const auto p = central_symmetric_pair(test::random_bits(32, rng), r);
            REQUIRE(count_ones(p.x_1h) == 32);
            REQUIRE(rot180_vector(p.x_1h, g) == p.x_2v);
        }
    }

    TEST_CASE("coding state")
    {
        const auto s = CodingState::single_beam({1, 0, 0, 1}, {0, 1, 1, 0});
        CHECK(s.n_h() == 2);
        CHECK(s.index_h() == std::vector<std::size_t>{0, 3});
        CHECK(s.index_v() == std::vector<std::size_t>{1, 2});
        CHECK(s.x_1h() == s.x_h());

        const auto d = CodingState::dual_beam({1, 1, 0, 0}, {0, 0, 1, 1});
        CHECK(d.x_1h() == BitVector{1, 1, 0, 0});
        CHECK(d.x_2v() == BitVector{0, 0, 1, 1});

        CHECK_THROWS_AS(CodingState::single_beam({1, 1}, {1, 0}), Error);
        CHECK_THROWS_AS(CodingState::single_beam({2, 0}, {0, 1}), Error);
        CHECK_THROWS_AS(CodingState::single_beam({1, 0, 1}, {0, 1}), Error);
    }

    TEST_CASE("bit strings")
    {
        CHECK(to_bit_string({1, 0, 1, 1}) == "1011");
        CHECK(from_bit_string("0110") == BitVector{0, 1, 1, 0});
        CHECK_THROWS_AS(from_bit_string("01a"), Error);
    }
}
