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
#include <functional>
#include <vector>

#include "pcrpa/rng.hpp"
#include "pcrpa/types.hpp"

namespace pcrpa
{

struct GaConfig
{
    std::size_t population_size = 64;
    std::size_t tournament_size = 2;
    double crossover_rate = 0.9;
    double mutation_rate = -1.0; // negative selects 1 / chromosome length
    std::size_t elite_count = 2;
    std::size_t max_generations = 300;
    std::size_t stall_generations = 50;
    std::uint64_t seed = 1;

    void validate() const;
    double mutation_for(std::size_t length) const { return mutation_rate < 0.0 ? 1.0 / double(length) : mutation_rate; }
};

// Fills fitness[k] for population[k]; lower is better.
using BatchFitness = std::function<void(const std::vector<BitVector> &population, std::vector<double> &fitness)>;

// Restores feasibility of a chromosome in place.
using Repair = std::function<void(BitVector &chromosome, Rng &rng)>;

struct GaResult
{
    BitVector best;
    double fitness = 0.0;
    std::size_t generations = 0;
    std::size_t evaluations = 0;
    std::vector<double> history; // best fitness after each generation, initial population first
};

/*!MD
# run_ga
Binary genetic algorithm (minimization)

- Initial population: uniform random bits, repaired.
- Each generation keeps `elite_count` best individuals and fills the rest with tournament
  selection, uniform crossover and bit-flip mutation, each child repaired.
- Stops after `max_generations` generations or when the best fitness has not improved for
  `stall_generations` generations.
- All random draws come from one generator seeded with `config.seed`, and fitness is evaluated per
  generation in a batch, so the result does not depend on how the batch is parallelized.
MD!*/
GaResult run_ga(std::size_t length, const GaConfig &config, const BatchFitness &fitness, const Repair &repair = {});

// Initial population as generated by run_ga for the same config (exposed for testing).
std::vector<BitVector> initial_population(std::size_t length, const GaConfig &config, const Repair &repair, Rng &rng);

} // namespace pcrpa
