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

#pragma once

#include <cstdint>
#include <random>

#include "pcrpa/types.hpp"

namespace pcrpa
{

inline std::uint64_t splitmix64(std::uint64_t x)
{
    x += 0x9E3779B97F4A7C15ull;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
    return x ^ (x >> 31);
}

// Independent stream seed for item `index` of a run seeded with `seed`. Results do not depend
// on the order in which items are processed.
inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index)
{
    return splitmix64(splitmix64(seed) ^ splitmix64(index + 0x632BE59BD9B4E019ull));
}

// Thin wrapper around mt19937_64. Distribution sampling is written out by hand because the
// standard distributions are not required to be identical across library implementations.
class Rng
{
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t bits() { return engine_(); }

    // Uniform in [0, 1)
    double uniform() { return double(engine_() >> 11) * 0x1.0p-53; }

    // Uniform integer in [0, n)
    std::uint64_t below(std::uint64_t n);

    bool bernoulli(double p) { return uniform() < p; }

    // Standard normal (Box-Muller)
    double normal();

private:
    std::mt19937_64 engine_;
    bool has_spare_ = false;
    double spare_ = 0.0;
};

// Binary vector of length n with exactly k ones at uniformly random positions.
BitVector random_subset(std::size_t n, std::size_t k, Rng &rng);

} // namespace pcrpa
