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

#include "pcrpa/synth.hpp"

#include <algorithm>
#include <chrono>
#include <numeric>
#include <string>

#include "pcrpa/error.hpp"
#include "pcrpa/parallel.hpp"
#include "pcrpa/rng.hpp"

namespace pcrpa
{

namespace
{
using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

constexpr std::size_t candidate_batch = 16;
constexpr std::size_t mc_batch = 64;

std::vector<Eigen::Index> rows_where(const std::vector<std::uint8_t> &flags)
{
    std::vector<Eigen::Index> r;
    for (std::size_t k = 0; k < flags.size(); ++k)
        if (flags[k])
            r.push_back(Eigen::Index(k));
    return r;
}

Eigen::MatrixXcd take_rows(const Eigen::MatrixXcd &m, const std::vector<Eigen::Index> &rows)
{
    Eigen::MatrixXcd out(Eigen::Index(rows.size()), m.cols());
    for (std::size_t k = 0; k < rows.size(); ++k)
        out.row(Eigen::Index(k)) = m.row(rows[k]);
    return out;
}

// Max over rows of column c, optionally restricted to a row list
double col_max(const Eigen::MatrixXd &p, Eigen::Index c)
{
    return p.col(c).maxCoeff();
}

double col_max(const Eigen::MatrixXd &p, Eigen::Index c, const std::vector<Eigen::Index> &rows)
{
    double m = 0.0;
    for (auto r : rows)
        m = std::max(m, p(r, c));
    return m;
}

/*
 Single-beam screening model. With z = x_h and x_v = 1 - z the co and cross fields on the sample set
 are affine in z; the cross field is only needed on the principal cuts and at the beam.
*/
struct SingleBeamModel
{
    AffineResponse co, cr;
    std::vector<Eigen::Index> sl_rows;
    Eigen::Index beam_row = 0;    // in co
    Eigen::Index beam_cr_row = 0; // in cr

    SingleBeamModel(const SynthesisContext &ctx, const PolarizationState &state, double beta)
    {
        const PortTables &t = ctx.tables();
        const SampleSet &s = ctx.samples();
        const JonesBasis b = jones_basis(state);
        const cplx comp = std::polar(1.0, beta);

        auto project = [&](const Eigen::Vector2cd &e) {
            const cplx a = std::conj(e(0)), c = std::conj(e(1));
            Eigen::MatrixXcd h = a * t.hh + c * t.vh;
            Eigen::MatrixXcd v = comp * (a * t.hv + c * t.vv);
            return std::pair<Eigen::MatrixXcd, Eigen::MatrixXcd>(std::move(h), std::move(v));
        };

        {
            auto [h, v] = project(b.co);
            co = AffineResponse(v.rowwise().sum(), h - v);
        }
        const std::vector<Eigen::Index> cut = rows_where(s.cut);
        {
            auto [h, v] = project(b.cr);
            const Eigen::MatrixXcd hc = take_rows(h, cut), vc = take_rows(v, cut);
            cr = AffineResponse(vc.rowwise().sum(), hc - vc);
        }
        sl_rows = rows_where(s.sidelobe);
        beam_row = Eigen::Index(s.beam_index());
        beam_cr_row = Eigen::Index(cut.size()) - 1;
    }

    std::vector<SingleBeamScore> score(const std::vector<BitVector> &batch) const
    {
        const Eigen::MatrixXd z = to_matrix(batch);
        const Eigen::MatrixXd pc = co.power(z), px = cr.power(z);
        std::vector<SingleBeamScore> out(batch.size());
        for (std::size_t k = 0; k < batch.size(); ++k)
        {
            const auto c = Eigen::Index(k);
            const double peak = col_max(pc, c);
            if (!(peak > 0.0))
            {
                out[k] = {0.0, 0.0, 0.0};
                continue;
            }
            out[k].psl_db = power_db(col_max(pc, c, sl_rows) / peak);
            out[k].xpl_db = pc(beam_row, c) > 0.0 ? power_db(px(beam_cr_row, c) / pc(beam_row, c)) : 0.0;
            out[k].xplm_db = power_db(col_max(px, c) / peak);
        }
        return out;
    }
};

// Dual-beam objective model on x_u: beam 1 H field and beam 2 V field.
struct DualModel
{
    AffineResponse f1, f2;
    std::vector<Eigen::Index> sl_rows;

    explicit DualModel(const SynthesisContext &ctx)
    {
        const PortTables &t = ctx.tables();
        const auto n = t.hh.cols(), h = n / 2;
        const Eigen::Index m = t.hh.rows();
        Eigen::MatrixXcd k1(m, h), k2(m, h);
        for (Eigen::Index j = 0; j < h; ++j)
        {
            k1.col(j) = t.hh.col(j) - t.hh.col(n - 1 - j);
            k2.col(j) = t.vv.col(n - 1 - j) - t.vv.col(j);
        }
        f1 = AffineResponse(t.hh.rightCols(n - h).rowwise().sum(), k1);
        f2 = AffineResponse(t.vv.leftCols(h).rowwise().sum(), k2);
        sl_rows = rows_where(ctx.samples().sidelobe);
    }

    std::vector<double> fitness(const std::vector<BitVector> &batch) const
    {
        const Eigen::MatrixXd z = to_matrix(batch);
        const Eigen::MatrixXd p1 = f1.power(z), p2 = f2.power(z);
        std::vector<double> out(batch.size());
        for (std::size_t k = 0; k < batch.size(); ++k)
        {
            const auto c = Eigen::Index(k);
            const double a = col_max(p1, c), b = col_max(p2, c);
            const double r1 = a > 0.0 ? col_max(p1, c, sl_rows) / a : 1.0;
            const double r2 = b > 0.0 ? col_max(p2, c, sl_rows) / b : 1.0;
            out[k] = power_db(std::max(r1, r2));
        }
        return out;
    }
};

// PSL of a fixed complex field on the sample set
double sample_psl(const Eigen::VectorXcd &f, const std::vector<Eigen::Index> &sl_rows)
{
    const double peak = f.cwiseAbs2().maxCoeff();
    double side = 0.0;
    for (auto r : sl_rows)
        side = std::max(side, std::norm(f(r)));
    return peak > 0.0 ? power_db(side / peak) : 0.0;
}

void check_beam(const ArbSynthesisRequest &request, const SynthesisContext &context)
{
    require(std::abs(request.beam.theta - context.beam().theta) < 1e-12 &&
                std::abs(request.beam.phi - context.beam().phi) < 1e-12,
            ErrorKind::invalid_argument, "request beam differs from the context beam");
}

BitVector complement(const BitVector &x)
{
    BitVector y(x.size());
    for (std::size_t i = 0; i < x.size(); ++i)
        y[i] = std::uint8_t(1 - x[i]);
    return y;
}

// Full-resolution pattern and metrics of a single-beam code
void finish_single(SynthesisResult &res, const SynthesisContext &ctx, const PolarizationState &state,
                   const BitVector &x_h, const FieldPattern &reference)
{
    res.coding = CodingState::single_beam(x_h, complement(x_h));
    FieldPattern f = evaluate_pattern(ctx.engine(), res.weights, x_h, complement(x_h), ctx.beam());
    f.set_polarization(state);
    res.metrics = {evaluate_metrics(f, ctx.regions(), &reference)};
    res.patterns = {std::move(f)};
}
} // namespace

SynthesisContext::SynthesisContext(const ArrayGeometry &geometry, const AepSet &aep, const Direction &beam,
                                   const SearchOptions &options)
    : engine_(geometry, aep), beam_(beam), options_(options)
{
    require(std::isfinite(beam.theta) && std::isfinite(beam.phi), ErrorKind::invalid_argument,
            "beam direction must be finite");
    weights_ = steering_weights(geometry, beam);
    FieldPattern ref = engine_.evaluate(cppa_excitation(weights_, PolarizationState::horizontal()), beam);
    ref.set_polarization(PolarizationState::horizontal());
    regions_ = make_regions(ref, options.mainlobe_factor);
    samples_ = make_sample_set(aep.grid(), regions_, options.fitness_step_deg);
    tables_ = make_port_tables(engine_, weights_, samples_);
}

Excitation cppa_excitation(const WeightSet &weights, const PolarizationState &state)
{
    const auto [u_h, u_v] = decompose_identity(state);
    return {weights.w_h * u_h, weights.w_v * u_v};
}

FieldPattern cppa_pattern(const SynthesisContext &context, const PolarizationState &state)
{
    FieldPattern f = context.engine().evaluate(cppa_excitation(context.weights(), state), context.beam());
    f.set_polarization(state);
    return f;
}

FieldPattern cppa_calibrated_pattern(const SynthesisContext &context, const PolarizationState &state,
                                     const CalibrationMatrix &calibration)
{
    const Eigen::Vector2cd p = apply_calibration(calibration, jones_basis(state).co);
    const WeightSet &w = context.weights();
    FieldPattern f = context.engine().evaluate({w.w_h * p(0), w.w_v * p(1)}, context.beam());
    f.set_polarization(state);
    return f;
}

void ArbSynthesisRequest::validate() const
{
    require(std::isfinite(psl_threshold_db) && std::isfinite(xpl_threshold_db), ErrorKind::invalid_argument,
            "thresholds must be finite");
    require(psl_threshold_db < 0.0 && xpl_threshold_db < 0.0, ErrorKind::invalid_argument,
            "thresholds must be negative dB values");
    require(max_generations >= 1, ErrorKind::invalid_argument, "max_generations must be at least 1");
    require(std::isfinite(beam.theta) && std::isfinite(beam.phi), ErrorKind::invalid_argument,
            "beam direction must be finite");
}

std::vector<SingleBeamScore> score_single_beam(const SynthesisContext &context, const PolarizationState &state,
                                               double beta, const std::vector<BitVector> &x_h)
{
    return SingleBeamModel(context, state, beta).score(x_h);
}

SynthesisResult synthesize_arbitrary(const ArbSynthesisRequest &request, const ArrayGeometry &geometry,
                                     const AepSet &aep)
{
    request.validate();
    const SynthesisContext ctx(geometry, aep, request.beam, request.search);
    return synthesize_arbitrary(request, ctx);
}

SynthesisResult synthesize_arbitrary(const ArbSynthesisRequest &request, const SynthesisContext &ctx)
{
    const auto t0 = Clock::now();
    request.validate();
    check_beam(request, ctx);

    const std::size_t n = ctx.geometry().size();
    const PolarizationState &state = request.polarization;
    const DecompositionResult dec = decompose_aep(state, ctx.aep(), ctx.geometry(), ctx.beam());
    if (dec.n_h > n || dec.n_h + dec.n_v != n)
        fail(ErrorKind::infeasible_counts, "decomposed element counts do not fit the array");

    SynthesisResult res;
    res.decomposition = dec;
    res.weights = apply_compensation(ctx.weights(), dec.beta);
    const FieldPattern reference = cppa_pattern(ctx, state);
    const SingleBeamModel model(ctx, state, dec.beta);
    const double gp = request.psl_threshold_db, gx = request.xpl_threshold_db;

    double best_violation = std::numeric_limits<double>::infinity();
    BitVector best;

    for (std::size_t step = 0; step <= 2 * request.max_adjustments; ++step)
    {
        // 0, -1, +1, -2, +2, ...
        const long delta = step == 0 ? 0L : (step % 2 == 1 ? -long((step + 1) / 2) : long(step / 2));
        const long nh = long(dec.n_h) + delta;
        if (nh < 0 || nh > long(n))
            continue;
        // A single configuration exists when every element has the same polarization.
        const std::size_t draws = (nh == 0 || nh == long(n)) ? 1 : request.max_generations;
        const std::uint64_t step_seed = derive_seed(request.seed, step);

        for (std::size_t j0 = 0; j0 < draws; j0 += candidate_batch)
        {
            const std::size_t count = std::min(candidate_batch, draws - j0);
            std::vector<BitVector> batch(count);
            for (std::size_t k = 0; k < count; ++k)
            {
                Rng rng(derive_seed(step_seed, j0 + k));
                batch[k] = random_subset(n, std::size_t(nh), rng);
            }
            const auto scores = model.score(batch);
            for (std::size_t k = 0; k < count; ++k)
            {
                ++res.iterations_used;
                const double v = std::max(scores[k].psl_db - gp, scores[k].xpl_db - gx);
                if (v <= 0.0)
                {
                    // Candidate passes on the sample set; confirm on the full grid.
                    finish_single(res, ctx, state, batch[k], reference);
                    const double vf = std::max(res.metrics[0].psl_db - gp, res.metrics[0].xpl_db - gx);
                    if (vf <= 0.0)
                    {
                        res.success = true;
                        res.fitness = vf;
                        res.wall_time_seconds = seconds_since(t0);
                        return res;
                    }
                    if (vf < best_violation)
                    {
                        best_violation = vf;
                        best = batch[k];
                    }
                    continue;
                }
                if (v < best_violation)
                {
                    best_violation = v;
                    best = batch[k];
                }
            }
        }
    }

    if (best.empty())
        fail(ErrorKind::infeasible_counts, "no admissible (n_h, n_v) pair");
    finish_single(res, ctx, state, best, reference);
    res.fitness = std::max(res.metrics[0].psl_db - gp, res.metrics[0].xpl_db - gx);
    res.success = false;
    res.wall_time_seconds = seconds_since(t0);
    return res;
}

Repair count_repair(std::size_t ones)
{
    return [ones](BitVector &x, Rng &rng) {
        require(ones <= x.size(), ErrorKind::infeasible_counts, "more ones requested than positions");
        std::size_t have = count_ones(x);
        // Switch randomly chosen surplus bits until the count matches.
        while (have != ones)
        {
            const std::uint8_t from = have > ones ? 1 : 0;
            std::vector<std::size_t> idx;
            for (std::size_t i = 0; i < x.size(); ++i)
                if (x[i] == from)
                    idx.push_back(i);
            const std::size_t need = have > ones ? have - ones : ones - have;
            for (std::size_t k = 0; k < need; ++k)
                std::swap(idx[k], idx[k + std::size_t(rng.below(idx.size() - k))]);
            for (std::size_t k = 0; k < need; ++k)
                x[idx[k]] = std::uint8_t(1 - from);
            have = ones;
        }
    };
}

SynthesisResult synthesize_arbitrary_bga(const ArbSynthesisRequest &request, const ArrayGeometry &geometry,
                                         const AepSet &aep, const GaConfig &config)
{
    request.validate();
    const SynthesisContext ctx(geometry, aep, request.beam, request.search);
    return synthesize_arbitrary_bga(request, ctx, config);
}

SynthesisResult synthesize_arbitrary_bga(const ArbSynthesisRequest &request, const SynthesisContext &ctx,
                                         const GaConfig &config)
{
    const auto t0 = Clock::now();
    request.validate();
    config.validate();
    check_beam(request, ctx);

    const std::size_t n = ctx.geometry().size();
    const PolarizationState &state = request.polarization;
    const DecompositionResult dec = decompose_aep(state, ctx.aep(), ctx.geometry(), ctx.beam());

    SynthesisResult res;
    res.decomposition = dec;
    res.weights = apply_compensation(ctx.weights(), dec.beta);
    const FieldPattern reference = cppa_pattern(ctx, state);
    const double gp = request.psl_threshold_db, gx = request.xpl_threshold_db;

    BitVector best;
    if (dec.n_h == 0 || dec.n_h == n)
    {
        best = BitVector(n, std::uint8_t(dec.n_h == n));
        res.iterations_used = 1;
    }
    else
    {
        const SingleBeamModel model(ctx, state, dec.beta);
        auto fitness = [&](const std::vector<BitVector> &pop, std::vector<double> &fit) {
            const auto s = model.score(pop);
            for (std::size_t k = 0; k < pop.size(); ++k)
                fit[k] = std::max(s[k].psl_db - gp, s[k].xplm_db);
        };
        const GaResult ga = run_ga(n, config, fitness, count_repair(dec.n_h));
        best = ga.best;
        res.iterations_used = ga.evaluations;
        res.history = ga.history;
    }

    finish_single(res, ctx, state, best, reference);
    const MetricsReport &m = res.metrics[0];
    res.fitness = std::max(m.psl_db - gp, m.xplm_db);
    res.success = m.psl_db <= gp && m.xpl_db <= gx;
    res.wall_time_seconds = seconds_since(t0);
    return res;
}

std::vector<double> dual_fitness(const SynthesisContext &context, const std::vector<BitVector> &x_u)
{
    return DualModel(context).fitness(x_u);
}

SynthesisResult synthesize_dual(const Direction &beam, const ArrayGeometry &geometry, const AepSet &aep,
                                const GaConfig &config, const DualOptions &options)
{
    // Reject odd arrays before the (costly) context is built.
    const RotationMap rotation(geometry);
    const SynthesisContext ctx(geometry, aep, beam, options.search);
    return synthesize_dual(ctx, config, options.calibrate);
}

SynthesisResult synthesize_dual(const SynthesisContext &ctx, const GaConfig &config, bool calibrate)
{
    const auto t0 = Clock::now();
    config.validate();
    const RotationMap rotation(ctx.geometry());

    const DualModel model(ctx);
    auto fitness = [&](const std::vector<BitVector> &pop, std::vector<double> &fit) { fit = model.fitness(pop); };
    const GaResult ga = run_ga(rotation.half(), config, fitness);

    const SymmetricPair pair = central_symmetric_pair(ga.best, rotation);
    SynthesisResult res;
    res.weights = ctx.weights();
    res.coding = CodingState::dual_beam(pair.x_1h, pair.x_2v);
    res.fitness = ga.fitness;
    res.iterations_used = ga.evaluations;
    res.history = ga.history;

    auto [b1, b2] = evaluate_beam_pair(ctx.engine(), res.weights, pair.x_1h, pair.x_2v, ctx.beam());
    const FieldPattern ref_h = cppa_pattern(ctx, PolarizationState::horizontal());
    const FieldPattern ref_v = cppa_pattern(ctx, PolarizationState::vertical());

    res.metrics = {evaluate_metrics(b1, ctx.regions(), &ref_h), evaluate_metrics(b2, ctx.regions(), &ref_v)};
    const double me = matching_error(b1, b2, ctx.regions());
    res.metrics[0].me_db = me;
    res.metrics[1].me_db = me;

    if (calibrate)
    {
        const CalibrationMatrix cal = estimate_calibration(b1, b2);
        auto [c1, c2] = calibrate_pair(cal, b1, b2);
        res.calibrated_metrics = {evaluate_metrics(c1, ctx.regions(), &ref_h),
                                  evaluate_metrics(c2, ctx.regions(), &ref_v)};
        const double mc = matching_error(c1, c2, ctx.regions());
        res.calibrated_metrics[0].me_db = mc;
        res.calibrated_metrics[1].me_db = mc;
        res.calibrated_patterns = {std::move(c1), std::move(c2)};
        res.calibration = cal;
    }
    res.patterns = {std::move(b1), std::move(b2)};
    res.success = true;
    res.wall_time_seconds = seconds_since(t0);
    return res;
}

Histogram make_histogram(const std::vector<double> &values, double bin_width_db)
{
    require(!values.empty(), ErrorKind::invalid_argument, "histogram of an empty sample");
    require(bin_width_db > 0.0, ErrorKind::invalid_argument, "bin width must be positive");
    const auto [lo_it, hi_it] = std::minmax_element(values.begin(), values.end());
    const double lo = std::floor(*lo_it / bin_width_db) * bin_width_db;
    auto bins = std::size_t(std::floor((*hi_it - lo) / bin_width_db)) + 1;
    Histogram h;
    h.counts.assign(bins, 0);
    for (std::size_t b = 0; b <= bins; ++b)
        h.edges.push_back(lo + double(b) * bin_width_db);
    for (double v : values)
        ++h.counts[std::min(bins - 1, std::size_t(std::floor((v - lo) / bin_width_db)))];
    return h;
}

namespace
{
McSummary summarize(std::vector<double> psl, double reference, std::uint64_t seed)
{
    McSummary s;
    s.n_samples = psl.size();
    s.seed = seed;
    s.reference_psl_db = reference;
    const double n = double(psl.size());
    s.mean_db = std::accumulate(psl.begin(), psl.end(), 0.0) / n;
    double ss = 0.0;
    for (double v : psl)
        ss += (v - s.mean_db) * (v - s.mean_db);
    s.std_db = psl.size() > 1 ? std::sqrt(ss / (n - 1.0)) : 0.0;
    s.min_db = *std::min_element(psl.begin(), psl.end());
    s.max_db = *std::max_element(psl.begin(), psl.end());
    s.worst_excess_db = s.max_db - reference;
    s.fraction_below_reference = double(std::count_if(psl.begin(), psl.end(), [&](double v) { return v < reference; })) / n;
    s.histogram = make_histogram(psl);
    s.psl_db = std::move(psl);
    return s;
}

// Sample-grid field of the conventional array for a polarization, co component.
Eigen::VectorXcd cppa_samples(const SynthesisContext &ctx, const PolarizationState &state)
{
    const PortTables &t = ctx.tables();
    const auto [u_h, u_v] = decompose_identity(state);
    const Eigen::VectorXcd fh = (u_h * t.hh + u_v * t.hv).rowwise().sum();
    const Eigen::VectorXcd fv = (u_h * t.vh + u_v * t.vv).rowwise().sum();
    const JonesBasis b = jones_basis(state);
    return std::conj(b.co(0)) * fh + std::conj(b.co(1)) * fv;
}
} // namespace

McSummary monte_carlo_arbitrary(const ArbSynthesisRequest &request, const ArrayGeometry &geometry,
                                const AepSet &aep, std::size_t n_samples, std::uint64_t seed)
{
    request.validate();
    require(n_samples >= 1, ErrorKind::invalid_argument, "n_samples must be at least 1");
    const SynthesisContext ctx(geometry, aep, request.beam, request.search);
    return monte_carlo_arbitrary(request, ctx, n_samples, seed);
}

McSummary monte_carlo_arbitrary(const ArbSynthesisRequest &request, const SynthesisContext &ctx,
                                std::size_t n_samples, std::uint64_t seed)
{
    request.validate();
    check_beam(request, ctx);
    require(n_samples >= 1, ErrorKind::invalid_argument, "n_samples must be at least 1");
    const std::size_t n = ctx.geometry().size();
    const DecompositionResult dec = decompose_aep(request.polarization, ctx.aep(), ctx.geometry(), ctx.beam());
    const SingleBeamModel model(ctx, request.polarization, dec.beta);

    std::vector<double> psl(n_samples);
    for (std::size_t s0 = 0; s0 < n_samples; s0 += mc_batch)
    {
        const std::size_t count = std::min(mc_batch, n_samples - s0);
        std::vector<BitVector> batch(count);
        for (std::size_t k = 0; k < count; ++k)
        {
            Rng rng(derive_seed(seed, s0 + k));
            batch[k] = random_subset(n, dec.n_h, rng);
        }
        const auto scores = model.score(batch);
        for (std::size_t k = 0; k < count; ++k)
            psl[s0 + k] = scores[k].psl_db;
    }
    const double ref = sample_psl(cppa_samples(ctx, request.polarization), rows_where(ctx.samples().sidelobe));
    McSummary s = summarize(std::move(psl), ref, seed);
    s.n_h = dec.n_h;
    s.n_v = dec.n_v;
    return s;
}

McSummary monte_carlo_dual(const Direction &beam, const ArrayGeometry &geometry, const AepSet &aep,
                           std::size_t n_samples, std::uint64_t seed, const SearchOptions &search)
{
    require(n_samples >= 1, ErrorKind::invalid_argument, "n_samples must be at least 1");
    const RotationMap rotation(geometry);
    const SynthesisContext ctx(geometry, aep, beam, search);
    return monte_carlo_dual(ctx, n_samples, seed);
}

McSummary monte_carlo_dual(const SynthesisContext &ctx, std::size_t n_samples, std::uint64_t seed)
{
    require(n_samples >= 1, ErrorKind::invalid_argument, "n_samples must be at least 1");
    const std::size_t n = ctx.geometry().size();
    if (n % 2 != 0)
        fail(ErrorKind::unsupported_geometry, "dual-beam splits need an even number of elements");
    const PortTables &t = ctx.tables();
    // z = x_1h: beam 1 (H field) = hh z, beam 2 (V field) = vv (1 - z)
    const AffineResponse f1(Eigen::VectorXcd::Zero(t.hh.rows()), t.hh);
    const AffineResponse f2(t.vv.rowwise().sum(), -t.vv);
    const std::vector<Eigen::Index> sl = rows_where(ctx.samples().sidelobe);

    std::vector<double> psl(n_samples);
    for (std::size_t s0 = 0; s0 < n_samples; s0 += mc_batch)
    {
        const std::size_t count = std::min(mc_batch, n_samples - s0);
        std::vector<BitVector> batch(count);
        for (std::size_t k = 0; k < count; ++k)
        {
            Rng rng(derive_seed(seed, s0 + k));
            batch[k] = random_subset(n, n / 2, rng);
        }
        const Eigen::MatrixXd z = to_matrix(batch);
        const Eigen::MatrixXd p1 = f1.power(z), p2 = f2.power(z);
        for (std::size_t k = 0; k < count; ++k)
        {
            const auto c = Eigen::Index(k);
            const double a = col_max(p1, c), b = col_max(p2, c);
            const double r1 = a > 0.0 ? col_max(p1, c, sl) / a : 1.0;
            const double r2 = b > 0.0 ? col_max(p2, c, sl) / b : 1.0;
            psl[s0 + k] = power_db(std::max(r1, r2));
        }
    }
    const double ref = std::max(sample_psl(cppa_samples(ctx, PolarizationState::horizontal()), sl),
                                sample_psl(cppa_samples(ctx, PolarizationState::vertical()), sl));
    McSummary s = summarize(std::move(psl), ref, seed);
    s.n_h = n / 2;
    s.n_v = n / 2;
    return s;
}

std::vector<SweepRow> sweep(SweepParameter parameter, const std::vector<double> &values, const SweepContext &context)
{
    require(bool(context.aep_factory), ErrorKind::invalid_argument, "sweep needs an AEP factory");
    require(!values.empty(), ErrorKind::invalid_argument, "sweep needs at least one value");

    std::vector<SweepRow> rows;
    ArbSynthesisRequest base = context.request;

    // Geometry-dependent state is rebuilt only when the geometry or the beam changes.
    std::optional<ArrayGeometry> geo;
    std::optional<AepSet> aep;
    std::optional<SynthesisContext> ctx;

    for (double value : values)
    {
        require(std::isfinite(value), ErrorKind::invalid_argument, "sweep values must be finite");
        ArbSynthesisRequest req = base;
        std::size_t rows_n = context.rows, cols_n = context.cols;
        bool rebuild = !ctx.has_value();
        switch (parameter)
        {
        case SweepParameter::gamma:
            req.polarization = PolarizationState::from_degrees(value, base.polarization.eta_deg());
            break;
        case SweepParameter::eta:
            req.polarization = PolarizationState::from_degrees(base.polarization.gamma_deg(), value);
            break;
        case SweepParameter::theta:
            require(value > 0.0 && value < 180.0, ErrorKind::invalid_argument, "theta must lie in (0, 180) deg");
            req.beam = Direction::from_degrees(value, base.beam.phi_deg());
            rebuild = true;
            break;
        case SweepParameter::array_size:
            require(value >= 1.0 && value == std::floor(value), ErrorKind::invalid_argument,
                    "array size must be a positive integer");
            rows_n = cols_n = std::size_t(value);
            rebuild = true;
            break;
        }

        if (rebuild)
        {
            ctx.reset();
            if (!geo || geo->rows() != rows_n || geo->cols() != cols_n)
            {
                aep.reset();
                geo.emplace(rows_n, cols_n, context.spacing);
                aep.emplace(context.aep_factory(*geo));
            }
            ctx.emplace(*geo, *aep, req.beam, req.search);
        }

        SweepRow row;
        row.value = value;
        row.rows = rows_n;
        row.cols = cols_n;
        const FieldPattern ref = cppa_pattern(*ctx, req.polarization);
        row.cppa = evaluate_metrics(ref, ctx->regions(), &ref);

        const SynthesisResult r = synthesize_arbitrary(req, *ctx);
        row.pcrpa = r.metrics.at(0);
        row.success = r.success;
        row.n_h = r.coding.n_h();
        row.n_v = r.coding.n_v();
        row.quantized_gamma_deg = to_deg(quantized_gamma(row.n_h, row.n_v));

        if (context.include_dual && geo->size() % 2 == 0)
        {
            const SynthesisResult d = synthesize_dual(*ctx, context.ga, true);
            const auto &m = d.calibrated_metrics.empty() ? d.metrics : d.calibrated_metrics;
            row.dual_h = m.at(0);
            row.dual_v = m.at(1);
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

} // namespace pcrpa
