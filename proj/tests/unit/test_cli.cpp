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

#include "cli_support.hpp"
#include "pcrpa/cli.hpp"
#include "pcrpa/error.hpp"

using namespace pcrpa;
using pcrpa::test::fresh_dir;
using pcrpa::test::read_file;
using pcrpa::test::run_cli;
namespace fs = std::filesystem;

TEST_SUITE("config")
{
    TEST_CASE("keys and overrides")
    {
        cli::RunConfig c;
        c.set("rows", "8");
        c.set(" gamma_deg ", " 30.5 ");
        c.set("xpol_level_db", "-inf");
        c.set("sweep_values", "1, 2.5,3");
        c.set("calibrate", "false");
        CHECK(c.rows == 8);
        CHECK(c.gamma_deg == 30.5);
        CHECK(std::isinf(c.element.xpol_level_db));
        CHECK(c.sweep_values == std::vector<double>{1.0, 2.5, 3.0});
        CHECK(!c.calibrate);
        CHECK_NOTHROW(c.validate());

        CHECK_THROWS_AS(c.set("nonsense", "1"), Error);
        CHECK_THROWS_AS(c.set("rows", "-3"), Error);
        CHECK_THROWS_AS(c.set("rows", "3x"), Error);
        CHECK_THROWS_AS(c.set("spacing_wavelengths", "nan"), Error);
        CHECK_THROWS_AS(c.set("calibrate", "maybe"), Error);
    }

    TEST_CASE("domain checks")
    {
        cli::RunConfig c;
        c.gamma_deg = 95.0;
        CHECK_THROWS_AS(c.validate(), Error);
        c = {};
        c.method = "annealing";
        CHECK_THROWS_AS(c.validate(), Error);
        c = {};
        c.beam_theta_deg = 181.0;
        CHECK_THROWS_AS(c.validate(), Error);
    }

    TEST_CASE("config file")
    {
        const auto d = fresh_dir("cfg");
        {
            std::ofstream f(d / "run.cfg");
            f << "# experiment\nrows = 4\ncols=6   # inline comment\n\nbeam_phi_deg = -20\n";
        }
        cli::RunConfig c;
        c.load_file(d / "run.cfg");
        CHECK(c.rows == 4);
        CHECK(c.cols == 6);
        CHECK(c.beam_phi_deg == -20.0);

        {
            std::ofstream f(d / "bad.cfg");
            f << "rows = 4\nthis line is wrong\n";
        }
        try
        {
            c.load_file(d / "bad.cfg");
            FAIL("expected a config error");
        }
        catch (const Error &e)
        {
            CHECK(std::string(e.what()).find(":2:") != std::string::npos);
        }
        CHECK_THROWS_AS(c.load_file(d / "absent.cfg"), Error);
    }

    TEST_CASE("resolved config lists every key once")
    {
        const cli::RunConfig c;
        const auto meta = c.resolved();
        cli::RunConfig copy;
        for (const auto &[k, v] : meta)
            CHECK_NOTHROW(copy.set(k, v)); // resolved values parse back
        CHECK(copy.resolved() == meta);
    }
}

TEST_SUITE("cli")
{
    TEST_CASE("pattern run writes its outputs deterministically")
    {
        const auto a = fresh_dir("pat_a"), b = fresh_dir("pat_b");
        const std::string common = "pattern --grid-step 3 --set rows=6 --set cols=6 --seed 4 --out ";
        REQUIRE(run_cli(common + "\"" + a.string() + "\"").exit_code == 0);
        REQUIRE(run_cli(common + "\"" + b.string() + "\"").exit_code == 0);
        for (const char *f : {"pattern.json", "cppa_hv.csv", "cppa_cocr.csv", "pcrpa_hv.csv", "pcrpa_cocr.csv"})
        {
            REQUIRE(fs::exists(a / f));
            std::string x = read_file(a / f), y = read_file(b / f);
            // The output directory is part of the recorded config.
            for (std::string *s : {&x, &y})
                for (const std::string &dir : {a.string(), b.string()})
                    for (auto p = s->find(dir); p != std::string::npos; p = s->find(dir))
                        s->replace(p, dir.size(), "OUT");
            CHECK_MESSAGE(x == y, f);
        }
        const auto j = nlohmann::ordered_json::parse(read_file(a / "pattern.json"));
        CHECK(j["seed"] == 4);
        CHECK(j["config"]["rows"] == "6");
        CHECK(read_file(a / "pcrpa_hv.csv").find("# seed=4") != std::string::npos);
    }

    TEST_CASE("error exits")
    {
        const auto d = fresh_dir("errs");
        auto r = run_cli("pattern --set aep_file=/no/such/file.aep --out \"" + d.string() + "\"");
        CHECK(r.exit_code == 2);
        CHECK(r.log.find("file not found") != std::string::npos);

        r = run_cli("synth-dual --set rows=3 --set cols=3 --grid-step 5 --out \"" + d.string() + "\"");
        CHECK(r.exit_code == 2);
        CHECK(r.log.find("unsupported geometry") != std::string::npos);

        r = run_cli("montecarlo --set n_samples=0 --out \"" + d.string() + "\"");
        CHECK(r.exit_code == 2);
        CHECK(r.log.find("n_samples") != std::string::npos);

        r = run_cli("pattern --set bogus=1 --out \"" + d.string() + "\"");
        CHECK(r.exit_code == 2);
        CHECK(r.log.find("unknown key") != std::string::npos);

        CHECK(run_cli("frobnicate").exit_code == 2);
        CHECK(run_cli("pattern --config /no/such.cfg").exit_code == 2);
    }

    TEST_CASE("unmet thresholds exit with 1")
    {
        const auto d = fresh_dir("unmet");
        const auto r = run_cli("synth-arb --grid-step 3 --set rows=6 --set cols=6 --set psl_threshold_db=-40 --set gamma_deg=30 "
                               "--set max_generations=2 --set max_adjustments=1 --out \"" + d.string() + "\"");
        CHECK(r.exit_code == 1);
        const auto j = nlohmann::ordered_json::parse(read_file(d / "synth_arb.json"));
        CHECK(j["result"]["success"] == false);
        CHECK(j["result"]["iterations_used"] == 6);
    }

    TEST_CASE("gamma sweep table")
    {
        const auto d = fresh_dir("sweep");
        REQUIRE(run_cli("sweep --grid-step 3 --set rows=6 --set cols=6 --set sweep_values=0,15,30,45,60,75,90 "
                        "--out \"" + d.string() + "\"")
                    .exit_code == 0);
        std::istringstream csv(read_file(d / "sweep.csv"));
        std::string line;
        int header = 0, data = 0;
        while (std::getline(csv, line))
        {
            if (line.rfind("#", 0) == 0)
                continue;
            (header == 0 ? header : data)++;
        }
        CHECK(header == 1);
        CHECK(data == 7);
    }

    TEST_CASE("generated AEP files feed later runs")
    {
        const auto d = fresh_dir("aepgen");
        REQUIRE(run_cli("aep-gen --grid-step 5 --set rows=4 --set cols=4 --out \"" + d.string() + "\"").exit_code ==
                0);
        REQUIRE(fs::exists(d / "aep.bin"));
        const AepSet loaded = load_aep(d / "aep.bin");
        CHECK(loaded.elements() == 16);
        CHECK(loaded.grid().theta_step_deg == 5.0);

        const std::string file = (d / "aep.bin").string();
        CHECK(run_cli("pattern --set rows=4 --set cols=4 --set psl_threshold_db=-5 --set aep_file=\"" + file +
                      "\" --out \"" + (d / "p").string() + "\"")
                  .exit_code == 0);
        CHECK(run_cli("pattern --set rows=3 --set cols=4 --set aep_file=\"" + file + "\" --out \"" +
                      (d / "q").string() + "\"")
                  .exit_code == 2);
    }

    TEST_CASE("Monte Carlo outputs")
    {
        const auto d = fresh_dir("mc");
        REQUIRE(run_cli("montecarlo --grid-step 3 --set rows=6 --set cols=6 --set n_samples=20 --out \"" +
                        d.string() + "\"")
                    .exit_code == 0);
        const auto j = nlohmann::ordered_json::parse(read_file(d / "montecarlo.json"));
        CHECK(j["arbitrary"]["n_samples"] == 20);
        CHECK(j["dual"]["n_samples"] == 20);
        CHECK(fs::exists(d / "mc_dual_histogram.csv"));
    }
}
