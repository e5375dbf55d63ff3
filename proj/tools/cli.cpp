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

#include <cstdio>
#include <fstream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "lab.hpp"
#include "fsolink/link_ogs_hap.hpp"

namespace fsolink::lab
{
    namespace
    {
        enum Exit
        {
            ok = 0,
            config_error = 2,
            numeric_failure = 3,
            check_failure = 4
        };

        std::string num(double v)
        {
            char buf[32];
            std::snprintf(buf, sizeof buf, "%.12g", v);
            return buf;
        }

        struct Globals
        {
            std::string config;
            std::uint64_t seed = 20260101;
            std::size_t samples = 0;
            std::string out;
            std::string format = "csv";
            std::string detection;
            std::optional<double> relay_gain;
            std::optional<int> nk;
        };

        SystemConfig effective_config(const Globals& g)
        {
            SystemConfig c = g.config.empty() ? SystemConfig{} : load_config(g.config);
            if (g.detection == "imdd")
                c.r1 = c.r2 = 2;
            else if (g.detection == "heterodyne")
                c.r1 = c.r2 = 1;
            else if (!g.detection.empty())
                throw ConfigError("--detection must be imdd or heterodyne");
            if (g.relay_gain)
                c.C = *g.relay_gain;
            if (g.nk)
                c.N_k = *g.nk;
            try
            {
                c.validate();
            }
            catch (const DomainError& e)
            {
                throw ConfigError(e.what());
            }
            return c;
        }

        // Writes to --out when given, else to the command's stream.
        template <class F>
        void emit(const Globals& g, std::ostream& out, F write)
        {
            if (g.out.empty())
            {
                write(out);
                return;
            }
            std::ofstream f(g.out);
            if (!f)
                throw ConfigError("cannot open output file " + g.out);
            write(f);
        }

        nlohmann::json params_json(const SystemConfig& c)
        {
            const Bundle b = assemble(c);
            const auto& o = b.one;
            const auto& t = b.two;
            return {{"geometry",
                     {{"X_H", b.geometry.X_H},
                      {"d_OH", b.geometry.d_OH},
                      {"d_HI", b.geometry.d_HI},
                      {"d_IU", b.geometry.d_IU},
                      {"zeta_2", b.geometry.zeta_2},
                      {"zeta_3", b.geometry.zeta_3}}},
                    {"link_one",
                     {{"alpha", o.gg.alpha},
                      {"beta", o.gg.beta},
                      {"sigma_b2", o.sigma_b2},
                      {"eta_s2", o.eta_s2},
                      {"A01", o.A01},
                      {"h_p1", o.h_p1},
                      {"r1", o.r1}}},
                    {"link_two",
                     {{"alpha", t.gg.alpha},
                      {"beta", t.gg.beta},
                      {"sigma_b2", t.sigma_b2},
                      {"varpi", t.varpi},
                      {"q_g", t.q_g},
                      {"A02", t.A02},
                      {"t_g", t.t_g},
                      {"Omega", t.Omega},
                      {"sigma_u1_sq", t.sigma_u1_sq},
                      {"sigma_u2_sq", t.sigma_u2_sq},
                      {"nu1", t.nu1},
                      {"nu2", t.nu2},
                      {"h_p2", t.h_p2},
                      {"N_k", t.N_k},
                      {"norm_N", t.norm_N},
                      {"r2", t.r2}}},
                    {"relay", {{"C", c.C}, {"c0", c.capacity_constant()}, {"gamma_th_db", c.gamma_th_db}}}};
        }

        void write_params_text(std::ostream& out, const nlohmann::json& j)
        {
            for (const auto& [section, fields] : j.items())
                for (const auto& [k, v] : fields.items())
                    out << section << '.' << k << " = "
                        << (v.is_number_float() ? num(v.get<double>()) : v.dump()) << '\n';
        }

        std::vector<std::string> curve_preamble(const SystemConfig& c, const CurveRequest& r, const std::string& metric,
                                                const std::string& scope)
        {
            std::vector<std::string> p = {
                "fsolink curve metric=" + metric + " scope=" + scope,
                "seed=" + std::to_string(r.seed) + " samples=" + std::to_string(r.samples),
                "C=" + num(c.C) + " N_k=" + std::to_string(c.N_k) + " r1=" + std::to_string(c.r1) +
                    " r2=" + std::to_string(c.r2) + " gamma_th_db=" + num(c.gamma_th_db)};
            if (r.metric == Metric::ber)
                p.push_back("modulation=" + r.modulation.name());
            if (r.metric == Metric::capacity)
                p.push_back("c0=" + num(c.capacity_constant()));
            if (r.metric == Metric::moment)
                p.push_back("s=" + num(r.s));
            return p;
        }
    } // namespace

    int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err)
    {
        CLI::App app{"Closed-form and Monte Carlo performance of the OGS-HAP-OIRS-user optical link"};
        app.name("fsolink-lab");
        app.require_subcommand(1);
        app.fallthrough();

        Globals g;
        app.add_option("--config", g.config, "key = value configuration file");
        app.add_option("--seed", g.seed, "Monte Carlo seed");
        app.add_option("--samples", g.samples, "Monte Carlo samples per point (0: none)");
        app.add_option("--out", g.out, "output file (curve, params) or directory (figure)");
        app.add_option("--format", g.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
        app.add_option("--detection", g.detection, "imdd or heterodyne for both hops")
            ->check(CLI::IsMember({"imdd", "heterodyne"}));
        app.add_option("--relay-gain", g.relay_gain, "fixed relay gain constant C");
        app.add_option("--nk", g.nk, "GML series truncation N_k");

        auto* params = app.add_subcommand("params", "print the assembled link parameters");

        auto* curve = app.add_subcommand("curve", "sweep a metric over the average SNR");
        std::string metric = "op", scope = "e2e", grid = "0:60:5", modulation = "ook";
        std::optional<std::size_t> mc_samples;
        bool asymptotic = false;
        double s_moment = 1.0;
        curve->add_option("--metric", metric, "op, ber, capacity or moment");
        curve->add_option("--scope", scope, "hop2 or e2e");
        curve->add_option("--grid", grid, "from:to:step in dB");
        curve->add_option("--mc", mc_samples, "Monte Carlo samples per point (overrides --samples)");
        curve->add_flag("--asymptotic", asymptotic, "add the high-SNR asymptote (e2e op and ber)");
        curve->add_option("--modulation", modulation, "ook, 4-qam, 16-psk, ...");
        curve->add_option("--s", s_moment, "moment order");

        auto* fig = app.add_subcommand("figure", "write the data behind one figure as CSV");
        std::string fig_id, fig_dir;
        std::string fig_grid = "0:60:5";
        fig->add_option("id", fig_id, "fig4 to fig9")->required();
        fig->add_option("out_dir", fig_dir, "output directory (default: --out, else figures)");
        fig->add_option("--grid", fig_grid, "from:to:step in dB");

        auto* check = app.add_subcommand("selfcheck", "run the property suite");
        std::size_t check_samples = 1'000'000;
        check->add_option("--smoke-samples", check_samples, "samples for the goodness-of-fit and smoke checks");

        auto* calib = app.add_subcommand("calibrate-c", "fit the relay gain to outage readings");
        double zenith_deg = 60.0;
        std::vector<std::string> points_text = {"35:0.041"};
        double c_lo = 1e-4, c_hi = 1e4;
        calib->add_option("--zenith-deg", zenith_deg, "OGS zenith angle of the readings");
        calib->add_option("--point", points_text, "gamma_bar_db:op, repeatable");
        calib->add_option("--c-min", c_lo, "lower search bound");
        calib->add_option("--c-max", c_hi, "upper search bound");

        try
        {
            app.parse(argc, argv);
        }
        catch (const CLI::ParseError& e)
        {
            const int code = app.exit(e, out, err);
            return code == 0 ? Exit::ok : Exit::config_error;
        }

        try
        {
            const SystemConfig cfg = effective_config(g);

            if (*params)
            {
                const auto j = params_json(cfg);
                emit(g, out, [&](std::ostream& o) {
                    if (g.format == "json")
                        o << j.dump(2) << '\n';
                    else
                        write_params_text(o, j);
                });
                return Exit::ok;
            }

            if (*curve)
            {
                CurveRequest r;
                r.metric = parse_metric(metric);
                r.scope = parse_scope(scope);
                r.grid = Grid::parse(grid);
                r.samples = mc_samples.value_or(g.samples);
                r.seed = g.seed;
                r.asymptotic = asymptotic;
                r.modulation = ModulationScheme::parse(modulation);
                r.s = s_moment;
                SystemConfig c = cfg;
                // the modulation fixes the detection unless it was given explicitly
                if (r.metric == Metric::ber && g.detection.empty())
                    c.r1 = c.r2 = r.modulation.detection_r();
                const auto pts = compute_curve(c, r);
                emit(g, out, [&](std::ostream& o) {
                    if (g.format == "json")
                        write_json(o, pts);
                    else
                        write_csv(o, pts, curve_preamble(c, r, metric, scope));
                });
                const int bad = count_disagreements(pts);
                if (bad > 0)
                    err << "warning: " << bad << " point(s) outside the Monte Carlo interval\n";
                return Exit::ok;
            }

            if (*fig)
            {
                FigureOptions fo;
                fo.grid = Grid::parse(fig_grid);
                fo.samples = g.samples;
                fo.seed = g.seed;
                const auto tables = figure(fig_id, cfg, fo);
                const std::filesystem::path dir = !fig_dir.empty() ? fig_dir : (!g.out.empty() ? g.out : "figures");
                std::filesystem::create_directories(dir);
                const std::vector<std::string> pre = {"fsolink " + fig_id, "seed=" + std::to_string(fo.seed) +
                                                                               " samples=" + std::to_string(fo.samples),
                                                      "C=" + num(cfg.C) + " N_k=" + std::to_string(cfg.N_k) +
                                                          " gamma_th_db=" + num(cfg.gamma_th_db)};
                for (const auto& t : tables)
                {
                    const auto path = dir / (t.name + ".csv");
                    std::ofstream f(path);
                    if (!f)
                        throw ConfigError("cannot write " + path.string());
                    write_table_csv(f, t, pre);
                    out << path.string() << '\n';
                }
                return Exit::ok;
            }

            if (*check)
            {
                SuiteOptions so;
                so.seed = g.seed;
                so.gof_samples = so.smoke_samples = check_samples;
                const auto results = property_suite(cfg, so);
                int failed = 0;
                out << "# seed=" << so.seed << '\n';
                for (const auto& r : results)
                {
                    out << (r.passed ? "PASS " : "FAIL ") << r.name << ": " << r.detail << '\n';
                    failed += !r.passed;
                }
                out << (failed ? "selfcheck failed: " + std::to_string(failed) + " check(s)\n" : "selfcheck passed\n");
                return failed ? Exit::check_failure : Exit::ok;
            }

            if (*calib)
            {
                SystemConfig c = cfg;
                c.zeta_1 = zenith_deg * 3.14159265358979323846 / 180.0;
                const Bundle b = assemble(c);
                std::vector<e2e::CalibrationPoint> pts;
                for (const auto& t : points_text)
                {
                    double db = 0.0, op = 0.0;
                    char colon = 0;
                    std::istringstream in(t);
                    if (!(in >> db >> colon >> op) || colon != ':' || !(in >> std::ws).eof())
                        throw ConfigError("--point must look like gamma_bar_db:op, got '" + t + "'");
                    pts.push_back({db_to_linear(db), db_to_linear(c.gamma_th_db), op});
                }
                const double C = e2e::calibrate_c(pts, b.one, b.two, c_lo, c_hi);
                emit(g, out, [&](std::ostream& o) {
                    o << "C = " << num(C) << '\n';
                    for (const auto& p : pts)
                    {
                        const double f = e2e::cdf(p.gamma_th, b.one, b.two, e2e::RelayConfig::locked(p.gamma_bar, C));
                        const double floor = hop1::snr_cdf(p.gamma_th, b.one, p.gamma_bar);
                        o << "gamma_bar_db=" << num(linear_to_db(p.gamma_bar)) << " target=" << num(p.op)
                          << " fitted=" << num(f) << " first_hop_floor=" << num(floor) << '\n';
                    }
                    if (C <= c_lo * 1.0001 || C >= c_hi / 1.0001)
                        o << "note: the fit sits on a search bound; a target below the first-hop outage cannot be met\n";
                });
                return Exit::ok;
            }
        }
        catch (const ConfigError& e)
        {
            err << "config error: " << e.what() << '\n';
            return Exit::config_error;
        }
        catch (const UnknownFigureError& e)
        {
            err << "error: " << e.what() << '\n';
            return Exit::config_error;
        }
        catch (const NumericalError& e)
        {
            err << "numeric failure: " << e.what() << '\n';
            return Exit::numeric_failure;
        }
        catch (const DomainError& e)
        {
            err << "invalid input: " << e.what() << '\n';
            return Exit::config_error;
        }
        catch (const std::exception& e)
        {
            err << "error: " << e.what() << '\n';
            return Exit::numeric_failure;
        }
        return Exit::ok;
    }
} // namespace fsolink::lab
