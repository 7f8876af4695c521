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

#include "pcrpa/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "pcrpa/error.hpp"

namespace pcrpa::io
{

namespace
{
Json number(double v)
{
    if (!std::isfinite(v))
        return nullptr;
    return v;
}

Json number(const std::optional<double> &v) { return v ? number(*v) : Json(nullptr); }

Json complex_json(cplx z) { return Json::array({number(z.real()), number(z.imag())}); }

Json weight_phases(const Eigen::VectorXcd &w)
{
    Json a = Json::array();
    for (Eigen::Index i = 0; i < w.size(); ++i)
        a.push_back(number(to_deg(std::arg(w(i)))));
    return a;
}

std::string header_block(const Metadata &meta)
{
    std::string s;
    for (const auto &[k, v] : meta)
        s += "# " + k + "=" + v + "\n";
    return s;
}

std::string opt_cell(const std::optional<double> &v) { return v ? format_double(*v) : std::string(); }
} // namespace

std::string format_double(double v)
{
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

Json to_json(const Metadata &meta)
{
    Json j = Json::object();
    for (const auto &[k, v] : meta)
        j[k] = v;
    return j;
}

Json to_json(const MetricsReport &m)
{
    Json j;
    j["psl_db"] = number(m.psl_db);
    j["xpl_db"] = number(m.xpl_db);
    j["xplm_db"] = number(m.xplm_db);
    j["directivity_dbi"] = number(m.directivity_dbi);
    j["hpbw_deg"] = number(m.hpbw_deg);
    j["power_db"] = number(m.power_db);
    j["me_db"] = number(m.me_db);
    return j;
}

Json to_json(const DecompositionResult &d)
{
    Json j;
    j["u_h"] = complex_json(d.u_h);
    j["u_v"] = complex_json(d.u_v);
    j["basis_h"] = Json::array({complex_json(d.basis_h(0)), complex_json(d.basis_h(1))});
    j["basis_v"] = Json::array({complex_json(d.basis_v(0)), complex_json(d.basis_v(1))});
    j["n_h"] = d.n_h;
    j["n_v"] = d.n_v;
    j["beta_deg"] = number(to_deg(d.beta));
    j["quantized_gamma_deg"] = number(to_deg(quantized_gamma(d.n_h, d.n_v)));
    return j;
}

Json to_json(const CalibrationMatrix &c)
{
    auto mat = [](const Eigen::Matrix2cd &m) {
        return Json::array({Json::array({complex_json(m(0, 0)), complex_json(m(0, 1))}),
                            Json::array({complex_json(m(1, 0)), complex_json(m(1, 1))})});
    };
    Json j;
    j["m"] = mat(c.m);
    j["m_inv"] = mat(c.m_inv);
    j["condition"] = number(c.condition);
    return j;
}

Json to_json(const SynthesisResult &r)
{
    Json j;
    j["success"] = r.success;
    j["fitness"] = number(r.fitness);
    j["iterations_used"] = r.iterations_used;
    Json coding;
    coding["x_h"] = to_bit_string(r.coding.x_h());
    coding["x_v"] = to_bit_string(r.coding.x_v());
    coding["x_1"] = to_bit_string(r.coding.x_1());
    coding["x_2"] = to_bit_string(r.coding.x_2());
    coding["n_h"] = r.coding.n_h();
    coding["n_v"] = r.coding.n_v();
    j["coding"] = coding;
    Json w;
    w["h_phase_deg"] = weight_phases(r.weights.w_h);
    w["v_phase_deg"] = weight_phases(r.weights.w_v);
    j["weights"] = w;
    Json m = Json::array();
    for (const auto &x : r.metrics)
        m.push_back(to_json(x));
    j["metrics"] = m;
    if (!r.calibrated_metrics.empty())
    {
        Json c = Json::array();
        for (const auto &x : r.calibrated_metrics)
            c.push_back(to_json(x));
        j["calibrated_metrics"] = c;
    }
    if (r.decomposition)
        j["decomposition"] = to_json(*r.decomposition);
    if (r.calibration)
        j["calibration"] = to_json(*r.calibration);
    if (!r.history.empty())
    {
        Json h = Json::array();
        for (double v : r.history)
            h.push_back(number(v));
        j["history"] = h;
    }
    return j;
}

Json to_json(const McSummary &s, bool include_samples)
{
    Json j;
    j["n_samples"] = s.n_samples;
    j["seed"] = s.seed;
    j["n_h"] = s.n_h;
    j["n_v"] = s.n_v;
    j["reference_psl_db"] = number(s.reference_psl_db);
    j["fraction_below_reference"] = number(s.fraction_below_reference);
    j["worst_excess_db"] = number(s.worst_excess_db);
    j["mean_db"] = number(s.mean_db);
    j["std_db"] = number(s.std_db);
    j["min_db"] = number(s.min_db);
    j["max_db"] = number(s.max_db);
    Json h;
    h["edges_db"] = Json::array();
    for (double e : s.histogram.edges)
        h["edges_db"].push_back(number(e));
    h["counts"] = s.histogram.counts;
    j["histogram"] = h;
    if (include_samples)
    {
        Json a = Json::array();
        for (double v : s.psl_db)
            a.push_back(number(v));
        j["psl_db"] = a;
    }
    return j;
}

Json to_json(const SweepRow &row)
{
    Json j;
    j["value"] = number(row.value);
    j["rows"] = row.rows;
    j["cols"] = row.cols;
    j["n_h"] = row.n_h;
    j["n_v"] = row.n_v;
    j["quantized_gamma_deg"] = number(row.quantized_gamma_deg);
    j["success"] = row.success;
    j["cppa"] = to_json(row.cppa);
    j["pcrpa"] = to_json(row.pcrpa);
    if (row.dual_h)
        j["dual_h"] = to_json(*row.dual_h);
    if (row.dual_v)
        j["dual_v"] = to_json(*row.dual_v);
    return j;
}

void write_text(const std::filesystem::path &path, const std::string &text)
{
    std::filesystem::path tmp = path;
    tmp += ".tmp";
    {
        std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
        if (!f)
            fail(ErrorKind::io_error, "cannot open " + tmp.string() + " for writing");
        f.write(text.data(), std::streamsize(text.size()));
        if (!f)
            fail(ErrorKind::io_error, "write failed for " + tmp.string());
    }
    std::error_code ec;
    std::filesystem::rename(tmp, path, ec);
    if (ec)
        fail(ErrorKind::io_error, "cannot move " + tmp.string() + " to " + path.string());
}

void write_json(const std::filesystem::path &path, const Json &j) { write_text(path, j.dump(2) + "\n"); }

namespace
{
void write_pair_csv(const std::filesystem::path &path, const FieldPattern &f, const Metadata &meta,
                    const char *columns, const std::vector<cplx> &a, const std::vector<cplx> &b)
{
    std::string s = header_block(meta);
    s += columns;
    s += "\n";
    const AngularGrid &g = f.grid;
    for (std::size_t p = 0; p < g.size(); ++p)
    {
        s += format_double(g.theta_deg(p / g.n_phi)) + "," + format_double(g.phi_deg(p % g.n_phi)) + "," +
             format_double(a[p].real()) + "," + format_double(a[p].imag()) + "," + format_double(b[p].real()) +
             "," + format_double(b[p].imag()) + "\n";
    }
    write_text(path, s);
}
} // namespace

void write_pattern_csv(const std::filesystem::path &path, const FieldPattern &f, const Metadata &meta)
{
    write_pair_csv(path, f, meta, "theta_deg,phi_deg,re_fh,im_fh,re_fv,im_fv", f.f_h, f.f_v);
}

void write_copol_csv(const std::filesystem::path &path, const FieldPattern &f, const Metadata &meta)
{
    require(f.has_copol(), ErrorKind::invalid_argument, "pattern has no co/cross-polar components");
    write_pair_csv(path, f, meta, "theta_deg,phi_deg,re_fco,im_fco,re_fcr,im_fcr", f.f_co, f.f_cr);
}

void write_sweep_csv(const std::filesystem::path &path, const std::string &parameter,
                     const std::vector<SweepRow> &rows, const Metadata &meta)
{
    std::string s = header_block(meta);
    s += parameter + ",rows,cols,n_h,n_v,quantized_gamma_deg,success";
    for (const char *arch : {"cppa", "pcrpa", "dual_h", "dual_v"})
        for (const char *m : {"psl_db", "xpl_db", "xplm_db", "directivity_dbi", "power_db"})
            s += std::string(",") + arch + "_" + m;
    s += "\n";
    auto cells = [](const std::optional<MetricsReport> &m) {
        if (!m)
            return std::string(",,,,,");
        return "," + format_double(m->psl_db) + "," + format_double(m->xpl_db) + "," + format_double(m->xplm_db) +
               "," + opt_cell(m->directivity_dbi) + "," + opt_cell(m->power_db);
    };
    for (const auto &r : rows)
    {
        s += format_double(r.value) + "," + std::to_string(r.rows) + "," + std::to_string(r.cols) + "," +
             std::to_string(r.n_h) + "," + std::to_string(r.n_v) + "," + format_double(r.quantized_gamma_deg) + "," +
             (r.success ? "1" : "0");
        s += cells(r.cppa) + cells(r.pcrpa) + cells(r.dual_h) + cells(r.dual_v) + "\n";
    }
    write_text(path, s);
}

void write_samples_csv(const std::filesystem::path &path, const McSummary &summary, const Metadata &meta)
{
    std::string s = header_block(meta) + "sample,psl_db\n";
    for (std::size_t k = 0; k < summary.psl_db.size(); ++k)
        s += std::to_string(k) + "," + format_double(summary.psl_db[k]) + "\n";
    write_text(path, s);
}

void write_histogram_csv(const std::filesystem::path &path, const Histogram &h, const Metadata &meta)
{
    std::string s = header_block(meta) + "lower_db,upper_db,count\n";
    for (std::size_t b = 0; b < h.counts.size(); ++b)
        s += format_double(h.edges[b]) + "," + format_double(h.edges[b + 1]) + "," + std::to_string(h.counts[b]) + "\n";
    write_text(path, s);
}

} // namespace pcrpa::io
