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

#include "pcrpa/cli.hpp"

#include <charconv>
#include <chrono>
#include <fstream>
#include <functional>
#include <map>
#include <ostream>
#include <sstream>

#include "pcrpa/error.hpp"

namespace pcrpa::cli
{

namespace
{
std::string trim(const std::string &s)
{
    const auto a = s.find_first_not_of(" \t\r\n");
    if (a == std::string::npos)
        return {};
    const auto b = s.find_last_not_of(" \t\r\n");
    return s.substr(a, b - a + 1);
}

[[noreturn]] void bad_value(const std::string &key, const std::string &value, const char *what)
{
    fail(ErrorKind::config_error, "key '" + key + "': expected " + what + ", got '" + value + "'");
}

double parse_double(const std::string &key, const std::string &v)
{
    if (v == "-inf")
        return -std::numeric_limits<double>::infinity();
    double x = 0.0;
    const auto r = std::from_chars(v.data(), v.data() + v.size(), x);
    if (r.ec != std::errc() || r.ptr != v.data() + v.size() || !std::isfinite(x))
        bad_value(key, v, "a number");
    return x;
}

std::uint64_t parse_uint(const std::string &key, const std::string &v)
{
    std::uint64_t x = 0;
    const auto r = std::from_chars(v.data(), v.data() + v.size(), x);
    if (v.empty() || r.ec != std::errc() || r.ptr != v.data() + v.size())
        bad_value(key, v, "a nonnegative integer");
    return x;
}

bool parse_bool(const std::string &key, const std::string &v)
{
    if (v == "true" || v == "1")
        return true;
    if (v == "false" || v == "0")
        return false;
    bad_value(key, v, "true or false");
}

std::vector<double> parse_list(const std::string &key, const std::string &v)
{
    std::vector<double> out;
    std::stringstream ss(v);
    std::string item;
    while (std::getline(ss, item, ','))
        out.push_back(parse_double(key, trim(item)));
    if (out.empty())
        bad_value(key, v, "a comma-separated list of numbers");
    return out;
}

std::string fmt(double v)
{
    if (std::isinf(v))
        return v < 0 ? "-inf" : "inf";
    return io::format_double(v);
}

std::string join(const std::vector<double> &v)
{
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i)
        s += (i ? "," : "") + fmt(v[i]);
    return s;
}

using Setter = std::function<void(RunConfig &, const std::string &, const std::string &)>;

const std::map<std::string, Setter> &setters()
{
    static const std::map<std::string, Setter> table = {
        {"rows", [](RunConfig &c, auto &k, auto &v) { c.rows = std::size_t(parse_uint(k, v)); }},
        {"cols", [](RunConfig &c, auto &k, auto &v) { c.cols = std::size_t(parse_uint(k, v)); }},
        {"spacing_wavelengths", [](RunConfig &c, auto &k, auto &v) { c.spacing_wavelengths = parse_double(k, v); }},
        {"aep_file", [](RunConfig &c, auto &, auto &v) { c.aep_file = v; }},
        {"q_e", [](RunConfig &c, auto &k, auto &v) { c.element.q_e = parse_double(k, v); }},
        {"q_h", [](RunConfig &c, auto &k, auto &v) { c.element.q_h = parse_double(k, v); }},
        {"xpol_level_db", [](RunConfig &c, auto &k, auto &v) { c.element.xpol_level_db = parse_double(k, v); }},
        {"xpol_phase_deg", [](RunConfig &c, auto &k, auto &v) { c.element.xpol_phase_deg = parse_double(k, v); }},
        {"error_amplitude_db",
         [](RunConfig &c, auto &k, auto &v) { c.element.error_amplitude_db = parse_double(k, v); }},
        {"error_phase_deg", [](RunConfig &c, auto &k, auto &v) { c.element.error_phase_deg = parse_double(k, v); }},
        {"element_seed", [](RunConfig &c, auto &k, auto &v) { c.element.seed = parse_uint(k, v); }},
        {"grid_step_deg", [](RunConfig &c, auto &k, auto &v) { c.grid_step_deg = parse_double(k, v); }},
        {"beam_theta_deg", [](RunConfig &c, auto &k, auto &v) { c.beam_theta_deg = parse_double(k, v); }},
        {"beam_phi_deg", [](RunConfig &c, auto &k, auto &v) { c.beam_phi_deg = parse_double(k, v); }},
        {"gamma_deg", [](RunConfig &c, auto &k, auto &v) { c.gamma_deg = parse_double(k, v); }},
        {"eta_deg", [](RunConfig &c, auto &k, auto &v) { c.eta_deg = parse_double(k, v); }},
        {"psl_threshold_db", [](RunConfig &c, auto &k, auto &v) { c.psl_threshold_db = parse_double(k, v); }},
        {"xpl_threshold_db", [](RunConfig &c, auto &k, auto &v) { c.xpl_threshold_db = parse_double(k, v); }},
        {"max_generations", [](RunConfig &c, auto &k, auto &v) { c.max_generations = std::size_t(parse_uint(k, v)); }},
        {"max_adjustments", [](RunConfig &c, auto &k, auto &v) { c.max_adjustments = std::size_t(parse_uint(k, v)); }},
        {"method", [](RunConfig &c, auto &, auto &v) { c.method = v; }},
        {"ga_population", [](RunConfig &c, auto &k, auto &v) { c.ga.population_size = std::size_t(parse_uint(k, v)); }},
        {"ga_tournament", [](RunConfig &c, auto &k, auto &v) { c.ga.tournament_size = std::size_t(parse_uint(k, v)); }},
        {"ga_crossover", [](RunConfig &c, auto &k, auto &v) { c.ga.crossover_rate = parse_double(k, v); }},
        {"ga_mutation", [](RunConfig &c, auto &k, auto &v) { c.ga.mutation_rate = parse_double(k, v); }},
        {"ga_elite", [](RunConfig &c, auto &k, auto &v) { c.ga.elite_count = std::size_t(parse_uint(k, v)); }},
        {"ga_generations", [](RunConfig &c, auto &k, auto &v) { c.ga.max_generations = std::size_t(parse_uint(k, v)); }},
        {"ga_stall", [](RunConfig &c, auto &k, auto &v) { c.ga.stall_generations = std::size_t(parse_uint(k, v)); }},
        {"mainlobe_factor", [](RunConfig &c, auto &k, auto &v) { c.mainlobe_factor = parse_double(k, v); }},
        {"fitness_step_deg", [](RunConfig &c, auto &k, auto &v) { c.fitness_step_deg = parse_double(k, v); }},
        {"calibrate", [](RunConfig &c, auto &k, auto &v) { c.calibrate = parse_bool(k, v); }},
        {"n_samples", [](RunConfig &c, auto &k, auto &v) { c.n_samples = std::size_t(parse_uint(k, v)); }},
        {"mc_mode", [](RunConfig &c, auto &, auto &v) { c.mc_mode = v; }},
        {"sweep_parameter", [](RunConfig &c, auto &, auto &v) { c.sweep_parameter = v; }},
        {"sweep_values", [](RunConfig &c, auto &k, auto &v) { c.sweep_values = parse_list(k, v); }},
        {"include_dual", [](RunConfig &c, auto &k, auto &v) { c.include_dual = parse_bool(k, v); }},
        {"aep_output", [](RunConfig &c, auto &, auto &v) { c.aep_output = v; }},
        {"seed", [](RunConfig &c, auto &k, auto &v) { c.seed = parse_uint(k, v); }},
        {"out", [](RunConfig &c, auto &, auto &v) { c.out = v; }},
    };
    return table;
}
} // namespace

void RunConfig::set(const std::string &key, const std::string &value)
{
    const auto it = setters().find(trim(key));
    if (it == setters().end())
        fail(ErrorKind::config_error, "unknown key '" + trim(key) + "'");
    it->second(*this, it->first, trim(value));
}

void RunConfig::load_file(const std::filesystem::path &path)
{
    std::ifstream f(path);
    if (!f)
        fail(ErrorKind::config_error, "cannot read config file " + path.string());
    std::string line;
    for (std::size_t no = 1; std::getline(f, line); ++no)
    {
        const auto hash = line.find('#');
        if (hash != std::string::npos)
            line.erase(hash);
        line = trim(line);
        if (line.empty())
            continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            fail(ErrorKind::config_error, path.string() + ":" + std::to_string(no) + ": expected key = value");
        try
        {
            set(line.substr(0, eq), line.substr(eq + 1));
        }
        catch (const Error &e)
        {
            fail(ErrorKind::config_error, path.string() + ":" + std::to_string(no) + ": " + e.what());
        }
    }
}

void RunConfig::validate() const
{
    auto check = [](bool ok, const std::string &msg) {
        if (!ok)
            fail(ErrorKind::config_error, msg);
    };
    check(rows >= 1 && cols >= 1, "rows and cols must be positive");
    check(spacing_wavelengths > 0.0, "spacing_wavelengths must be positive");
    check(grid_step_deg > 0.0, "grid_step_deg must be positive");
    check(beam_theta_deg >= 0.0 && beam_theta_deg <= 180.0, "beam_theta_deg must lie in [0, 180]");
    check(beam_phi_deg >= -180.0 && beam_phi_deg < 180.0, "beam_phi_deg must lie in [-180, 180)");
    check(gamma_deg >= 0.0 && gamma_deg <= 90.0, "gamma_deg must lie in [0, 90]");
    check(eta_deg >= -180.0 && eta_deg <= 180.0, "eta_deg must lie in [-180, 180)");
    check(method == "random" || method == "bga", "method must be random or bga");
    check(mc_mode == "arbitrary" || mc_mode == "dual" || mc_mode == "both", "mc_mode must be arbitrary, dual or both");
    check(sweep_parameter == "gamma" || sweep_parameter == "eta" || sweep_parameter == "theta" ||
              sweep_parameter == "array_size",
          "sweep_parameter must be gamma, eta, theta or array_size");
    check(mainlobe_factor > 0.0, "mainlobe_factor must be positive");
    check(fitness_step_deg > 0.0, "fitness_step_deg must be positive");
    check(!out.empty(), "out must name a directory");
    check(!aep_output.empty(), "aep_output must name a file");
}

io::Metadata RunConfig::resolved() const
{
    return {
        {"rows", std::to_string(rows)},
        {"cols", std::to_string(cols)},
        {"spacing_wavelengths", fmt(spacing_wavelengths)},
        {"aep_file", aep_file},
        {"q_e", fmt(element.q_e)},
        {"q_h", fmt(element.q_h)},
        {"xpol_level_db", fmt(element.xpol_level_db)},
        {"xpol_phase_deg", fmt(element.xpol_phase_deg)},
        {"error_amplitude_db", fmt(element.error_amplitude_db)},
        {"error_phase_deg", fmt(element.error_phase_deg)},
        {"element_seed", std::to_string(element.seed)},
        {"grid_step_deg", fmt(grid_step_deg)},
        {"beam_theta_deg", fmt(beam_theta_deg)},
        {"beam_phi_deg", fmt(beam_phi_deg)},
        {"gamma_deg", fmt(gamma_deg)},
        {"eta_deg", fmt(eta_deg)},
        {"psl_threshold_db", fmt(psl_threshold_db)},
        {"xpl_threshold_db", fmt(xpl_threshold_db)},
        {"max_generations", std::to_string(max_generations)},
        {"max_adjustments", std::to_string(max_adjustments)},
        {"method", method},
        {"ga_population", std::to_string(ga.population_size)},
        {"ga_tournament", std::to_string(ga.tournament_size)},
        {"ga_crossover", fmt(ga.crossover_rate)},
        {"ga_mutation", fmt(ga.mutation_rate)},
        {"ga_elite", std::to_string(ga.elite_count)},
        {"ga_generations", std::to_string(ga.max_generations)},
        {"ga_stall", std::to_string(ga.stall_generations)},
        {"mainlobe_factor", fmt(mainlobe_factor)},
        {"fitness_step_deg", fmt(fitness_step_deg)},
        {"calibrate", calibrate ? "true" : "false"},
        {"n_samples", std::to_string(n_samples)},
        {"mc_mode", mc_mode},
        {"sweep_parameter", sweep_parameter},
        {"sweep_values", join(sweep_values)},
        {"include_dual", include_dual ? "true" : "false"},
        {"aep_output", aep_output},
        {"seed", std::to_string(seed)},
        {"out", out},
    };
}

std::vector<std::string> command_names() { return {"pattern", "synth-arb", "synth-dual", "montecarlo", "sweep", "aep-gen"}; }

namespace
{
namespace fs = std::filesystem;

struct Run
{
    const RunConfig &cfg;
    std::ostream &log;
    fs::path out;
    io::Metadata meta;
    std::string stage;
};

AngularGrid run_grid(const RunConfig &c) { return AngularGrid::full_sphere(c.grid_step_deg); }

ArrayGeometry run_geometry(const RunConfig &c) { return build_rectangular(c.rows, c.cols, c.spacing_wavelengths); }

AepSet run_aep(Run &r, const ArrayGeometry &geo)
{
    if (r.cfg.aep_file.empty())
    {
        r.stage = "element model";
        return synth_aep(r.cfg.element, geo, run_grid(r.cfg));
    }
    r.stage = "loading AEP file";
    AepSet a = load_aep(r.cfg.aep_file);
    if (a.elements() != geo.size())
        fail(ErrorKind::config_error, "AEP file holds " + std::to_string(a.elements()) + " elements, the array has " +
                                          std::to_string(geo.size()));
    return a;
}

ArbSynthesisRequest run_request(const RunConfig &c)
{
    ArbSynthesisRequest q;
    q.beam = Direction::from_degrees(c.beam_theta_deg, c.beam_phi_deg);
    q.polarization = PolarizationState::from_degrees(c.gamma_deg, c.eta_deg);
    q.psl_threshold_db = c.psl_threshold_db;
    q.xpl_threshold_db = c.xpl_threshold_db;
    q.max_generations = c.max_generations;
    q.max_adjustments = c.max_adjustments;
    q.seed = c.seed;
    q.search = {c.mainlobe_factor, c.fitness_step_deg};
    return q;
}

GaConfig run_ga_config(const RunConfig &c)
{
    GaConfig g = c.ga;
    g.seed = c.seed;
    return g;
}

io::Json envelope(const Run &r, const char *command)
{
    io::Json j;
    j["command"] = command;
    j["seed"] = r.cfg.seed;
    j["config"] = io::to_json(r.meta);
    return j;
}

void report_time(const Run &r, const char *what, double seconds)
{
    r.log << what << ": " << seconds << " s\n";
}

int cmd_pattern(Run &r)
{
    const ArrayGeometry geo = run_geometry(r.cfg);
    const AepSet aep = run_aep(r, geo);
    const ArbSynthesisRequest req = run_request(r.cfg);
    r.stage = "reference pattern";
    const SynthesisContext ctx(geo, aep, req.beam, req.search);
    const FieldPattern cppa = cppa_pattern(ctx, req.polarization);
    const MetricsReport cppa_m = evaluate_metrics(cppa, ctx.regions(), &cppa);
    r.stage = "synthesis";
    const SynthesisResult res = synthesize_arbitrary(req, ctx);
    report_time(r, "synthesis", res.wall_time_seconds);

    r.stage = "writing outputs";
    io::write_pattern_csv(r.out / "cppa_hv.csv", cppa, r.meta);
    io::write_copol_csv(r.out / "cppa_cocr.csv", cppa, r.meta);
    io::write_pattern_csv(r.out / "pcrpa_hv.csv", res.patterns[0], r.meta);
    io::write_copol_csv(r.out / "pcrpa_cocr.csv", res.patterns[0], r.meta);
    io::Json j = envelope(r, "pattern");
    j["beam_deg"] = {r.cfg.beam_theta_deg, r.cfg.beam_phi_deg};
    j["polarization_deg"] = {r.cfg.gamma_deg, r.cfg.eta_deg};
    j["mainlobe_radius_deg"] = to_deg(ctx.regions().mainlobe_radius);
    j["cppa"] = io::to_json(cppa_m);
    j["pcrpa"] = io::to_json(res);
    io::write_json(r.out / "pattern.json", j);
    return 0;
}

int cmd_synth_arb(Run &r)
{
    const ArrayGeometry geo = run_geometry(r.cfg);
    const AepSet aep = run_aep(r, geo);
    const ArbSynthesisRequest req = run_request(r.cfg);
    r.stage = "synthesis";
    const SynthesisContext ctx(geo, aep, req.beam, req.search);
    const SynthesisResult res = r.cfg.method == "bga" ? synthesize_arbitrary_bga(req, ctx, run_ga_config(r.cfg))
                                                      : synthesize_arbitrary(req, ctx);
    report_time(r, "synthesis", res.wall_time_seconds);
    const FieldPattern cppa = cppa_pattern(ctx, req.polarization);

    r.stage = "writing outputs";
    io::Json j = envelope(r, "synth-arb");
    j["method"] = r.cfg.method;
    j["cppa"] = io::to_json(evaluate_metrics(cppa, ctx.regions(), &cppa));
    j["result"] = io::to_json(res);
    io::write_json(r.out / "synth_arb.json", j);
    io::write_pattern_csv(r.out / "synth_arb_hv.csv", res.patterns[0], r.meta);
    io::write_copol_csv(r.out / "synth_arb_cocr.csv", res.patterns[0], r.meta);
    if (!res.success)
        r.log << "synth-arb: thresholds not met (best violation " << res.fitness << " dB)\n";
    return res.success ? 0 : 1;
}

int cmd_synth_dual(Run &r)
{
    const ArrayGeometry geo = run_geometry(r.cfg);
    r.stage = "geometry";
    const RotationMap rotation(geo);
    const AepSet aep = run_aep(r, geo);
    const Direction beam = Direction::from_degrees(r.cfg.beam_theta_deg, r.cfg.beam_phi_deg);
    r.stage = "synthesis";
    const SynthesisContext ctx(geo, aep, beam, {r.cfg.mainlobe_factor, r.cfg.fitness_step_deg});
    const SynthesisResult res = synthesize_dual(ctx, run_ga_config(r.cfg), r.cfg.calibrate);
    report_time(r, "synthesis", res.wall_time_seconds);

    r.stage = "writing outputs";
    io::Json j = envelope(r, "synth-dual");
    const FieldPattern ref_h = cppa_pattern(ctx, PolarizationState::horizontal());
    const FieldPattern ref_v = cppa_pattern(ctx, PolarizationState::vertical());
    j["cppa"] = {io::to_json(evaluate_metrics(ref_h, ctx.regions(), &ref_h)),
                 io::to_json(evaluate_metrics(ref_v, ctx.regions(), &ref_v))};
    j["result"] = io::to_json(res);
    io::write_json(r.out / "synth_dual.json", j);
    io::write_pattern_csv(r.out / "beam1_hv.csv", res.patterns[0], r.meta);
    io::write_pattern_csv(r.out / "beam2_hv.csv", res.patterns[1], r.meta);
    if (!res.calibrated_patterns.empty())
    {
        io::write_pattern_csv(r.out / "beam1_calibrated_hv.csv", res.calibrated_patterns[0], r.meta);
        io::write_pattern_csv(r.out / "beam2_calibrated_hv.csv", res.calibrated_patterns[1], r.meta);
    }
    return 0;
}

int cmd_montecarlo(Run &r)
{
    if (r.cfg.n_samples == 0)
        fail(ErrorKind::config_error, "n_samples must be at least 1");
    const ArrayGeometry geo = run_geometry(r.cfg);
    const AepSet aep = run_aep(r, geo);
    const ArbSynthesisRequest req = run_request(r.cfg);
    r.stage = "sampling";
    const SynthesisContext ctx(geo, aep, req.beam, req.search);
    io::Json j = envelope(r, "montecarlo");
    const auto t0 = std::chrono::steady_clock::now();
    if (r.cfg.mc_mode != "dual")
    {
        const McSummary s = monte_carlo_arbitrary(req, ctx, r.cfg.n_samples, r.cfg.seed);
        j["arbitrary"] = io::to_json(s, false);
        io::write_samples_csv(r.out / "mc_arbitrary_samples.csv", s, r.meta);
        io::write_histogram_csv(r.out / "mc_arbitrary_histogram.csv", s.histogram, r.meta);
    }
    if (r.cfg.mc_mode != "arbitrary")
    {
        if (geo.size() % 2 != 0)
            fail(ErrorKind::unsupported_geometry, "dual-beam sampling needs an even number of elements");
        const McSummary s = monte_carlo_dual(ctx, r.cfg.n_samples, r.cfg.seed);
        j["dual"] = io::to_json(s, false);
        io::write_samples_csv(r.out / "mc_dual_samples.csv", s, r.meta);
        io::write_histogram_csv(r.out / "mc_dual_histogram.csv", s.histogram, r.meta);
    }
    report_time(r, "sampling", std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count());
    r.stage = "writing outputs";
    io::write_json(r.out / "montecarlo.json", j);
    return 0;
}

int cmd_sweep(Run &r)
{
    SweepParameter p = SweepParameter::gamma;
    if (r.cfg.sweep_parameter == "eta")
        p = SweepParameter::eta;
    else if (r.cfg.sweep_parameter == "theta")
        p = SweepParameter::theta;
    else if (r.cfg.sweep_parameter == "array_size")
        p = SweepParameter::array_size;

    SweepContext sc;
    sc.rows = r.cfg.rows;
    sc.cols = r.cfg.cols;
    sc.spacing = r.cfg.spacing_wavelengths;
    sc.request = run_request(r.cfg);
    sc.ga = run_ga_config(r.cfg);
    sc.include_dual = r.cfg.include_dual;
    if (!r.cfg.aep_file.empty())
    {
        if (p == SweepParameter::array_size)
            fail(ErrorKind::config_error, "array_size sweeps need the synthetic element model");
        const ArrayGeometry geo = run_geometry(r.cfg);
        auto loaded = std::make_shared<AepSet>(run_aep(r, geo));
        sc.aep_factory = [loaded](const ArrayGeometry &) { return *loaded; };
    }
    else
    {
        const SyntheticElementSpec spec = r.cfg.element;
        const AngularGrid grid = run_grid(r.cfg);
        sc.aep_factory = [spec, grid](const ArrayGeometry &g) { return synth_aep(spec, g, grid); };
    }

    r.stage = "sweep";
    const auto t0 = std::chrono::steady_clock::now();
    const std::vector<SweepRow> rows = sweep(p, r.cfg.sweep_values, sc);
    report_time(r, "sweep", std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count());

    r.stage = "writing outputs";
    io::write_sweep_csv(r.out / "sweep.csv", r.cfg.sweep_parameter, rows, r.meta);
    io::Json j = envelope(r, "sweep");
    j["parameter"] = r.cfg.sweep_parameter;
    j["rows"] = io::Json::array();
    for (const auto &row : rows)
        j["rows"].push_back(io::to_json(row));
    io::write_json(r.out / "sweep.json", j);
    return 0;
}

int cmd_aep_gen(Run &r)
{
    const ArrayGeometry geo = run_geometry(r.cfg);
    r.stage = "element model";
    const AepSet aep = synth_aep(r.cfg.element, geo, run_grid(r.cfg));
    r.stage = "writing outputs";
    const fs::path target = fs::path(r.cfg.aep_output).is_absolute() ? fs::path(r.cfg.aep_output)
                                                                       : r.out / r.cfg.aep_output;
    save_aep(aep, target);
    io::Json j = envelope(r, "aep-gen");
    j["file"] = target.filename().string();
    j["elements"] = aep.elements();
    j["n_theta"] = aep.grid().n_theta;
    j["n_phi"] = aep.grid().n_phi;
    io::write_json(r.out / "aep_gen.json", j);
    return 0;
}
} // namespace

int run_command(const std::string &command, const RunConfig &config, std::ostream &log)
{
    static const std::map<std::string, std::function<int(Run &)>> commands = {
        {"pattern", cmd_pattern},       {"synth-arb", cmd_synth_arb}, {"synth-dual", cmd_synth_dual},
        {"montecarlo", cmd_montecarlo}, {"sweep", cmd_sweep},         {"aep-gen", cmd_aep_gen},
    };
    const auto it = commands.find(command);
    if (it == commands.end())
    {
        log << "error: unknown command '" << command << "'\n";
        return 2;
    }

    Run r{config, log, fs::path(config.out), config.resolved(), "configuration"};
    try
    {
        config.validate();
        r.stage = "output directory";
        std::error_code ec;
        fs::create_directories(r.out, ec);
        if (ec || !fs::is_directory(r.out))
            fail(ErrorKind::io_error, "cannot create output directory " + r.out.string());
        r.stage = "configuration";
        return it->second(r);
    }
    catch (const Error &e)
    {
        log << "error: " << command << ": " << r.stage << ": " << e.what() << "\n";
        return 2;
    }
    catch (const std::exception &e)
    {
        log << "error: " << command << ": " << r.stage << ": " << e.what() << "\n";
        return 2;
    }
}

} // namespace pcrpa::cli
