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

#include "pcrpa/rng.hpp"

#include "pcrpa/error.hpp"

namespace pcrpa
{

std::uint64_t Rng::below(std::uint64_t n)
{
    require(n > 0, ErrorKind::invalid_argument, "empty sampling range");
    // Rejection sampling keeps the draw unbiased
    const std::uint64_t limit = std::uint64_t(-1) - std::uint64_t(-1) % n;
    std::uint64_t x;
    do
        x = engine_();
    while (x >= limit);
    return x % n;
}

double Rng::normal()
{
    if (has_spare_)
    {
        has_spare_ = false;
        return spare_;
    }
    double u1;
    do
        u1 = uniform();
    while (u1 <= 0.0);
    const double u2 = uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    spare_ = r * std::sin(2.0 * pi * u2);
    has_spare_ = true;
    return r * std::cos(2.0 * pi * u2);
}

BitVector random_subset(std::size_t n, std::size_t k, Rng &rng)
{
    require(k <= n, ErrorKind::invalid_argument, "subset larger than the set");
    std::vector<std::size_t> idx(n);
    for (std::size_t i = 0; i < n; ++i)
        idx[i] = i;
    // Partial Fisher-Yates shuffle
    for (std::size_t i = 0; i < k; ++i)
        std::swap(idx[i], idx[i + rng.below(n - i)]);
    BitVector x(n, 0);
    for (std::size_t i = 0; i < k; ++i)
        x[idx[i]] = 1;
    return x;
}

} // namespace pcrpa
