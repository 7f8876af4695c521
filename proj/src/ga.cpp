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

#include "pcrpa/ga.hpp"

#include <algorithm>
#include <numeric>

#include "pcrpa/error.hpp"

namespace pcrpa
{

void GaConfig::validate() const
{
    require(population_size >= 2 && population_size % 2 == 0, ErrorKind::invalid_argument,
            "population size must be even and at least 2");
    require(tournament_size >= 1 && tournament_size <= population_size, ErrorKind::invalid_argument,
            "tournament size must lie in [1, population]");
    require(crossover_rate >= 0.0 && crossover_rate <= 1.0, ErrorKind::invalid_argument,
            "crossover rate must lie in [0, 1]");
    require(mutation_rate <= 1.0 && !std::isnan(mutation_rate), ErrorKind::invalid_argument,
            "mutation rate must lie in [0, 1] (negative selects 1/L)");
    require(elite_count <= population_size, ErrorKind::invalid_argument, "elite count exceeds the population");
    require(max_generations >= 1, ErrorKind::invalid_argument, "at least one generation is required");
    require(stall_generations >= 1, ErrorKind::invalid_argument, "stall limit must be positive");
}

std::vector<BitVector> initial_population(std::size_t length, const GaConfig &config, const Repair &repair, Rng &rng)
{
    std::vector<BitVector> pop(config.population_size, BitVector(length));
    for (auto &x : pop)
    {
        for (auto &b : x)
            b = std::uint8_t(rng.bits() >> 63);
        if (repair)
            repair(x, rng);
    }
    return pop;
}

GaResult run_ga(std::size_t length, const GaConfig &config, const BatchFitness &fitness, const Repair &repair)
{
    config.validate();
    require(length >= 1, ErrorKind::invalid_argument, "chromosome length must be positive");
    require(bool(fitness), ErrorKind::invalid_argument, "fitness function is required");

    Rng rng(config.seed);
    const std::size_t pop_size = config.population_size;
    const double mutation = config.mutation_for(length);

    std::vector<BitVector> pop = initial_population(length, config, repair, rng);
    std::vector<double> fit(pop_size);
    fitness(pop, fit);

    GaResult res;
    res.evaluations = pop_size;
    auto best_of = [&](const std::vector<double> &f) {
        return std::size_t(std::min_element(f.begin(), f.end()) - f.begin());
    };
    std::size_t b = best_of(fit);
    res.best = pop[b];
    res.fitness = fit[b];
    res.history.push_back(res.fitness);

    auto tournament = [&]() {
        std::size_t win = std::size_t(rng.below(pop_size));
        for (std::size_t t = 1; t < config.tournament_size; ++t)
        {
            const auto c = std::size_t(rng.below(pop_size));
            if (fit[c] < fit[win] || (fit[c] == fit[win] && c < win))
                win = c;
        }
        return win;
    };

    std::size_t stall = 0;
    std::vector<std::size_t> order(pop_size);
    for (std::size_t gen = 0; gen < config.max_generations; ++gen)
    {
        std::iota(order.begin(), order.end(), std::size_t(0));
        std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t c) { return fit[a] < fit[c]; });

        std::vector<BitVector> next;
        std::vector<double> next_fit;
        next.reserve(pop_size);
        for (std::size_t e = 0; e < config.elite_count; ++e)
        {
            next.push_back(pop[order[e]]);
            next_fit.push_back(fit[order[e]]);
        }

        std::vector<BitVector> children;
        while (next.size() + children.size() < pop_size)
        {
            BitVector c1 = pop[tournament()];
            BitVector c2 = pop[tournament()];
            if (rng.uniform() < config.crossover_rate)
                for (std::size_t i = 0; i < length; ++i)
                    if (rng.bits() >> 63)
                        std::swap(c1[i], c2[i]);
            for (BitVector *c : {&c1, &c2})
            {
                for (auto &bit : *c)
                    if (rng.uniform() < mutation)
                        bit ^= 1u;
                if (repair)
                    repair(*c, rng);
            }
            children.push_back(std::move(c1));
            if (next.size() + children.size() < pop_size)
                children.push_back(std::move(c2));
        }

        if (!children.empty())
        {
            std::vector<double> child_fit(children.size());
            fitness(children, child_fit);
            res.evaluations += children.size();
            for (std::size_t k = 0; k < children.size(); ++k)
            {
                next.push_back(std::move(children[k]));
                next_fit.push_back(child_fit[k]);
            }
        }
        pop = std::move(next);
        fit = std::move(next_fit);
        res.generations = gen + 1;

        b = best_of(fit);
        if (fit[b] < res.fitness)
        {
            res.fitness = fit[b];
            res.best = pop[b];
            stall = 0;
        }
        else
            ++stall;
        res.history.push_back(res.fitness);
        if (stall >= config.stall_generations)
            break;
    }
    return res;
}

} // namespace pcrpa
