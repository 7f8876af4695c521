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
#include <optional>
#include <vector>

#include "pcrpa/elements.hpp"
#include "pcrpa/field.hpp"
#include "pcrpa/ga.hpp"
#include "pcrpa/geom.hpp"
#include "pcrpa/metrics.hpp"
#include "pcrpa/polar.hpp"
#include "pcrpa/response.hpp"

namespace pcrpa
{

// Grid and region settings shared by all synthesis drivers.
struct SearchOptions
{
    double mainlobe_factor = 2.0; // mainlobe radius = factor * HPBW / 2
    double fitness_step_deg = 2.0;
};

/*!MD
# SynthesisContext
Everything derived from (geometry, AEPs, beam) that the synthesis drivers share

- Steering weights, the conventional (all ports driven) H-pol reference pattern and the regions
  derived from its beamwidth, plus the optimization sample set.
- Holds references to the geometry and AEP set.
MD!*/
class SynthesisContext
{
public:
    SynthesisContext(const ArrayGeometry &geometry, const AepSet &aep, const Direction &beam,
                     const SearchOptions &options = {});

    const ArrayGeometry &geometry() const { return engine_.geometry(); }
    const AepSet &aep() const { return engine_.aep(); }
    const PatternEngine &engine() const { return engine_; }
    const Direction &beam() const { return beam_; }
    const SearchOptions &options() const { return options_; }
    const WeightSet &weights() const { return weights_; }
    const RegionSpec &regions() const { return regions_; }
    const SampleSet &samples() const { return samples_; }
    const PortTables &tables() const { return tables_; }

private:
    PatternEngine engine_;
    Direction beam_;
    SearchOptions options_;
    WeightSet weights_;
    RegionSpec regions_;
    SampleSet samples_;
    PortTables tables_;
};

// Conventional array: h = cos(g) w_h, v = sin(g) e^{j eta} w_v on every element.
Excitation cppa_excitation(const WeightSet &weights, const PolarizationState &state);

// Uncalibrated conventional pattern for the given polarization (co/cross components set).
FieldPattern cppa_pattern(const SynthesisContext &context, const PolarizationState &state);

// Conventional pattern with the port scaling from the calibration matrix applied.
FieldPattern cppa_calibrated_pattern(const SynthesisContext &context, const PolarizationState &state,
                                     const CalibrationMatrix &calibration);

struct ArbSynthesisRequest
{
    Direction beam = Direction::from_degrees(120.0, 15.0);
    PolarizationState polarization;
    double psl_threshold_db = -12.5;
    double xpl_threshold_db = -40.0;
    std::size_t max_generations = 200; // random placements tried per (n_h, n_v)
    std::size_t max_adjustments = 10;
    std::uint64_t seed = 1;
    SearchOptions search;

    void validate() const;
};

struct SynthesisResult
{
    CodingState coding{BitVector{}, BitVector{}, BitVector{}, BitVector{}};
    WeightSet weights;
    std::vector<FieldPattern> patterns; // single beam: one entry; dual: beam 1 (H), beam 2 (V)
    std::vector<MetricsReport> metrics;
    std::vector<FieldPattern> calibrated_patterns; // dual only
    std::vector<MetricsReport> calibrated_metrics;
    std::optional<DecompositionResult> decomposition;
    std::optional<CalibrationMatrix> calibration;
    double fitness = 0.0; // method-specific objective of the returned coding
    std::size_t iterations_used = 0;
    double wall_time_seconds = 0.0;
    bool success = false;
    std::vector<double> history;
};

/*!MD
# synthesize_arbitrary
Arbitrarily polarized single beam by decomposition and random placement

1. Decompose the desired polarization on the center element's port basis at the beam; this fixes
   (n_h, n_v) and the V-channel compensation beta.
2. For each count pair in the order (n_h, n_h - 1, n_h + 1, n_h - 2, ...), up to `max_adjustments`
   steps away, draw `max_generations` random placements of the H elements. Pairs outside [0, n]
   are skipped.
3. Return the first placement whose PSL and beam XPL meet the thresholds at full grid resolution.
   Otherwise return the placement with the smallest violation and `success = false`.

Placement `j` of count step `a` uses its own generator seeded from (seed, a, j).
MD!*/
SynthesisResult synthesize_arbitrary(const ArbSynthesisRequest &request, const ArrayGeometry &geometry,
                                     const AepSet &aep);

// Same, on a prebuilt context (its beam must equal request.beam).
SynthesisResult synthesize_arbitrary(const ArbSynthesisRequest &request, const SynthesisContext &context);

// Placement search with a genetic algorithm at the decomposed counts; fitness is
// max(PSL - threshold, XPLm) in dB.
SynthesisResult synthesize_arbitrary_bga(const ArbSynthesisRequest &request, const ArrayGeometry &geometry,
                                         const AepSet &aep, const GaConfig &config);
SynthesisResult synthesize_arbitrary_bga(const ArbSynthesisRequest &request, const SynthesisContext &context,
                                         const GaConfig &config);

// Repair operator used by the placement GA: sets exactly `ones` bits by randomly switching
// surplus ones off or missing ones on.
Repair count_repair(std::size_t ones);

// Candidate codes (x_h) scored the way synthesize_arbitrary screens them.
struct SingleBeamScore
{
    double psl_db;
    double xpl_db;
    double xplm_db;
};
std::vector<SingleBeamScore> score_single_beam(const SynthesisContext &context, const PolarizationState &state,
                                               double beta, const std::vector<BitVector> &x_h);

struct DualOptions
{
    SearchOptions search;
    bool calibrate = true;
};

/*!MD
# synthesize_dual
Two simultaneous orthogonally polarized beams from complementary, centrally symmetric codes

The genetic algorithm searches x_u (length n/2); each candidate expands to x_1h = [x_u; 1 - T x_u]
and x_2v = 1 - x_1h. The objective is the larger of the two beams' peak sidelobe ratios, each beam
normalized to its own peak. The returned patterns are followed by a calibrated pair built from the
2x2 beam coupling at the beam direction.
MD!*/
SynthesisResult synthesize_dual(const Direction &beam, const ArrayGeometry &geometry, const AepSet &aep,
                                const GaConfig &config, const DualOptions &options = {});
SynthesisResult synthesize_dual(const SynthesisContext &context, const GaConfig &config, bool calibrate = true);

// Dual-beam objective in dB for each x_u (same definition as synthesize_dual).
std::vector<double> dual_fitness(const SynthesisContext &context, const std::vector<BitVector> &x_u);

struct Histogram
{
    std::vector<double> edges; // bins + 1 entries
    std::vector<std::size_t> counts;
};

struct McSummary
{
    std::vector<double> psl_db;
    double reference_psl_db = 0.0; // conventional array on the same samples
    double fraction_below_reference = 0.0;
    double worst_excess_db = 0.0; // max(psl) - reference
    double mean_db = 0.0;
    double std_db = 0.0;
    double min_db = 0.0;
    double max_db = 0.0;
    Histogram histogram;
    std::size_t n_samples = 0;
    std::uint64_t seed = 0;
    std::size_t n_h = 0;
    std::size_t n_v = 0;
};

Histogram make_histogram(const std::vector<double> &values, double bin_width_db = 0.25);

// Random H placements at the decomposed counts; PSL of the co-pol beam on the sample set.
McSummary monte_carlo_arbitrary(const ArbSynthesisRequest &request, const ArrayGeometry &geometry,
                                const AepSet &aep, std::size_t n_samples, std::uint64_t seed);
McSummary monte_carlo_arbitrary(const ArbSynthesisRequest &request, const SynthesisContext &context,
                                std::size_t n_samples, std::uint64_t seed);

// Random complementary splits with n/2 elements per beam; records max(PSL_1, PSL_2).
McSummary monte_carlo_dual(const Direction &beam, const ArrayGeometry &geometry, const AepSet &aep,
                           std::size_t n_samples, std::uint64_t seed, const SearchOptions &search = {});
McSummary monte_carlo_dual(const SynthesisContext &context, std::size_t n_samples, std::uint64_t seed);

enum class SweepParameter
{
    gamma,
    eta,
    theta,
    array_size,
};

struct SweepContext
{
    std::size_t rows = 16;
    std::size_t cols = 16;
    double spacing = 0.5;
    ArbSynthesisRequest request;
    GaConfig ga;
    bool include_dual = false;
    // Builds the AEP set for a geometry (called again for every array size)
    std::function<AepSet(const ArrayGeometry &)> aep_factory;
};

struct SweepRow
{
    double value = 0.0;
    std::size_t rows = 0;
    std::size_t cols = 0;
    MetricsReport cppa;
    MetricsReport pcrpa;
    std::optional<MetricsReport> dual_h;
    std::optional<MetricsReport> dual_v;
    std::size_t n_h = 0;
    std::size_t n_v = 0;
    double quantized_gamma_deg = 0.0;
    bool success = false;
};

std::vector<SweepRow> sweep(SweepParameter parameter, const std::vector<double> &values, const SweepContext &context);

} // namespace pcrpa
