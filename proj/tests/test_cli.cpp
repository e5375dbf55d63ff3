// SPDX-License-Identifier: Apache-2.0
//
// fsolink: performance analysis of a three-hop OGS-HAP-OIRS-user optical link
// Copyright (C) 2026 fsolink contributors
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

#include <filesystem>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "json.hpp"
#include "lab.hpp"
#include "fsolink/e2e.hpp"

using namespace fsolink;

namespace
{
    struct Result
    {
        int code;
        std::string out, err;
    };

    Result cli(std::vector<std::string> args)
    {
        args.insert(args.begin(), "fsolink-lab");
        std::vector<const char*> argv;
        for (const auto& a : args)
            argv.push_back(a.c_str());
        std::ostringstream out, err;
        const int code = lab::run(static_cast<int>(argv.size()), argv.data(), out, err);
        return {code, out.str(), err.str()};
    }

    std::filesystem::path temp_dir(const std::string& name)
    {
        const auto p = std::filesystem::temp_directory_path() / ("fsolink_cli_" + name);
        std::filesystem::remove_all(p);
        return p;
    }

    std::string write_file(const std::filesystem::path& p, const std::string& text)
    {
        std::filesystem::create_directories(p.parent_path());
        std::ofstream(p) << text;
        return p.string();
    }

    std::vector<std::string> data_lines(const std::string& csv)
    {
        std::vector<std::string> rows;
        std::istringstream in(csv);
        for (std::string line; std::getline(in, line);)
            if (!line.empty() && line[0] != '#')
                rows.push_back(line);
        return rows;
    }
} // namespace

TEST_CASE("params report")
{
    const auto r = cli({"params"});
    CHECK(r.code == 0);
    CHECK(r.out.find("link_two.N_k = 5") != std::string::npos);
    CHECK(r.out.find("link_one.alpha = ") != std::string::npos);

    const auto j = nlohmann::json::parse(cli({"params", "--format", "json"}).out);
    CHECK(j["link_two"]["N_k"] == 5);
    CHECK(j["relay"]["C"] == 1.0);

    const auto dir = temp_dir("params");
    const auto sym = write_file(dir / "sym.cfg", "theta_r = 30\nsigma_r = 0\nsigma_s = 1e-3\nsigma_l = 1e-3\n");
    const auto js = nlohmann::json::parse(cli({"params", "--config", sym, "--format", "json"}).out);
    CHECK(js["link_two"]["q_g"].get<double>() == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(js["link_two"]["norm_N"].get<double>() == doctest::Approx(1.0).epsilon(1e-12));

    CHECK(cli({"params", "--nk", "3", "--relay-gain", "2.5", "--detection", "imdd", "--format", "json"}).out.find(
              "\"N_k\": 3") != std::string::npos);
    CHECK(cli({"params", "--config", (dir / "missing.cfg").string()}).code == 2);
    const auto bad = write_file(dir / "bad.cfg", "q_V = -1\n");
    CHECK(cli({"params", "--config", bad}).code == 2);
    CHECK(cli({"selfcheck", "--config", bad}).code == 2);
    const auto unknown = write_file(dir / "unknown.cfg", "not_a_key = 3\n");
    const auto u = cli({"params", "--config", unknown});
    CHECK(u.code == 2);
    CHECK(u.err.find("not_a_key") != std::string::npos);
    CHECK(cli({"params", "--detection", "coherent"}).code == 2);
    CHECK(cli({}).code == 2);
}

TEST_CASE("curve output")
{
    const auto r = cli({"curve", "--metric", "op", "--scope", "e2e", "--grid", "0:60:5"});
    REQUIRE(r.code == 0);
    const auto rows = data_lines(r.out);
    REQUIRE(rows.size() == 14);
    CHECK(rows[0] == "x_db,analytic,asymptotic,mc_mean,mc_ci_low,mc_ci_high");
    CHECK(rows[1].rfind("0,", 0) == 0);
    CHECK(rows[13].rfind("60,", 0) == 0);
    // --mc 0: no Monte Carlo fields
    CHECK(rows[5].substr(rows[5].size() - 4) == ",,,,");

    const std::vector<std::string> mc = {"curve", "--metric", "op", "--scope", "hop2", "--grid", "20:40:10", "--mc",
                                         "200000", "--seed", "11", "--detection", "imdd"};
    const auto a = cli(mc), b = cli(mc);
    CHECK(a.code == 0);
    CHECK(a.out == b.out);
    CHECK(a.out.find("seed=11") != std::string::npos);
    CHECK(a.out.find("# disagree=0") != std::string::npos);
    const auto other = mc.size();
    auto mc2 = mc;
    mc2[other - 3] = "12";
    CHECK(cli(mc2).out != a.out);

    auto js = mc;
    js.insert(js.end(), {"--format", "json"});
    const auto j = nlohmann::json::parse(cli(js).out);
    REQUIRE(j.size() == 3);
    CHECK(j[0]["asymptotic"].is_null());
    for (const auto& p : j)
    {
        CHECK(p["mc_ci_low"].get<double>() <= p["mc_mean"].get<double>());
        CHECK(p["mc_mean"].get<double>() <= p["mc_ci_high"].get<double>());
        CHECK(p["meta"]["seed"] == "11");
        CHECK(p["meta"]["N_k"] == "5");
    }

    const auto asym = data_lines(cli({"curve", "--metric", "op", "--grid", "50:60:10", "--asymptotic"}).out);
    REQUIRE(asym.size() == 3);
    CHECK(asym[1].find(",,,") != std::string::npos);
    CHECK(asym[1].find(",,,,") == std::string::npos);

    const auto ber = cli({"curve", "--metric", "ber", "--scope", "hop2", "--grid", "30:30:1", "--modulation", "ook"});
    CHECK(ber.out.find("r1=2 r2=2") != std::string::npos);
    CHECK(ber.out.find("modulation=OOK") != std::string::npos);

    const auto dir = temp_dir("curve");
    std::filesystem::create_directories(dir);
    const auto path = (dir / "cap.csv").string();
    CHECK(cli({"curve", "--metric", "capacity", "--scope", "hop2", "--grid", "30:30:1", "--out", path}).code == 0);
    std::ifstream f(path);
    std::stringstream text;
    text << f.rdbuf();
    CHECK(data_lines(text.str()).size() == 2);
    CHECK(text.str().find("c0=1") != std::string::npos);

    CHECK(cli({"curve", "--metric", "snr"}).code == 2);
    CHECK(cli({"curve", "--grid", "0:10"}).code == 2);
    CHECK(cli({"curve", "--format", "xml"}).code == 2);
}

TEST_CASE("figures")
{
    const auto dir = temp_dir("fig");
    const auto r = cli({"figure", "fig4", dir.string()});
    REQUIRE(r.code == 0);
    CHECK(std::filesystem::exists(dir / "fig4_pdf.csv"));
    CHECK(std::filesystem::exists(dir / "fig4_l2.csv"));
    std::ifstream f(dir / "fig4_pdf.csv");
    std::stringstream text;
    text << f.rdbuf();
    const auto rows = data_lines(text.str());
    CHECK(rows.size() == 101);
    CHECK(rows[0] == "h_over_A02,exact_s1r1l1,approx_s1r1l1,exact_s2r1l1,approx_s2r1l1,exact_s1r2l1,approx_s1r2l1,"
                     "exact_s1r1l3,approx_s1r1l3");

    const auto d9 = temp_dir("fig9");
    REQUIRE(cli({"figure", "fig9", "--grid", "30:30:1", "--out", d9.string()}).code == 0);
    std::ifstream g(d9 / "fig9.csv");
    std::stringstream t9;
    t9 << g.rdbuf();
    const auto r9 = data_lines(t9.str());
    REQUIRE(r9.size() == 2);
    CHECK(r9[0] == "x_db,af_z50,df_z50,af_z55,df_z55,af_z60,df_z60");

    CHECK(cli({"figure", "fig3", dir.string()}).code == 2);
}

TEST_CASE("relay gain calibration command")
{
    SystemConfig c;
    const Bundle b = assemble(c);
    const double op = e2e::cdf(db_to_linear(2.0), b.one, b.two, e2e::RelayConfig::locked(db_to_linear(30.0), 4.0));
    char point[64];
    std::snprintf(point, sizeof point, "30:%.17g", op);
    const auto r = cli({"calibrate-c", "--point", point, "--c-min", "0.5", "--c-max", "50"});
    REQUIRE(r.code == 0);
    const double C = std::stod(r.out.substr(r.out.find("C = ") + 4));
    CHECK(C == doctest::Approx(4.0).epsilon(1e-3));
    CHECK(r.out.find("search bound") == std::string::npos);

    // an outage target below the first-hop floor cannot be reached by any gain
    const auto s = cli({"calibrate-c", "--point", "35:0.041", "--c-min", "0.01", "--c-max", "100"});
    CHECK(s.code == 0);
    CHECK(s.out.find("search bound") != std::string::npos);
    CHECK(cli({"calibrate-c", "--point", "35-0.041"}).code == 2);
}
