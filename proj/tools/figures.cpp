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

#include <cmath>
#include <functional>

#include "lab.hpp"
#include "fsolink/link_hap_user.hpp"
#include "fsolink/link_ogs_hap.hpp"
#include "fsolink/montecarlo.hpp"

namespace fsolink::lab
{
    namespace
    {
        constexpr double pi = 3.14159265358979323846;

        struct Series
        {
            std::string name;
            std::function<double(double)> value;            // of gamma_bar
            std::function<mc::Sampler(double)> sampler;      // optional MC twin
            mc::Statistic stat;
        };

        Table sweep(const std::string& name, const std::vector<Series>& series, const FigureOptions& opt)
        {
            Table t;
            t.name = name;
            t.columns.push_back("x_db");
            for (const auto& s : series)
                t.columns.push_back(s.name);
            const bool with_mc = opt.samples > 0;
            if (with_mc)
                for (const auto& s : series)
                    if (s.sampler)
                    {
                        t.columns.push_back("mc_" + s.name);
                        t.columns.push_back("mc_ci_low_" + s.name);
                        t.columns.push_back("mc_ci_high_" + s.name);
                    }
            for (double x : opt.grid.points())
            {
                const double gb = db_to_linear(x);
                std::vector<std::optional<double>> row{x};
                for (const auto& s : series)
                {
                    try
                    {
                        row.push_back(s.value(gb));
                    }
                    catch (const NumericalError& e)
                    {
                        throw NumericalError(name + "/" + s.name + " at x_db = " + std::to_string(x) + ": " + e.what());
                    }
                }
                if (with_mc)
                    for (const auto& s : series)
                        if (s.sampler)
                        {
                            const auto e = mc::stream_estimates(s.sampler(gb), opt.samples, opt.seed, {s.stat})[0];
                            row.insert(row.end(), {e.mean, e.ci_low, e.ci_high});
                        }
                t.rows.push_back(std::move(row));
            }
            return t;
        }

        std::string det_name(int r) { return r == 2 ? "imdd" : "het"; }

        SystemConfig with_r(SystemConfig c, int r)
        {
            c.r1 = c.r2 = r;
            return c;
        }

        SystemConfig at_zenith(SystemConfig c, double deg)
        {
            c.zeta_1 = deg * pi / 180.0;
            return c;
        }

        std::vector<Table> fig4(const SystemConfig& base)
        {
            Table pdf;
            pdf.name = "fig4_pdf";
            pdf.columns.push_back("h_over_A02");
            std::vector<LinkTwoParams> ps;
            for (const auto& f : hop2_cases())
            {
                ps.push_back(assemble(f.apply(base)).two);
                pdf.columns.push_back("exact_" + f.label());
                pdf.columns.push_back("approx_" + f.label());
            }
            for (int i = 1; i <= 100; ++i)
            {
                const double u = i / 100.0;
                std::vector<std::optional<double>> row{u};
                for (const auto& p : ps)
                {
                    row.push_back(hop2::gml_pdf_exact(u * p.A02, p));
                    row.push_back(hop2::gml_pdf_approx(u * p.A02, p));
                }
                pdf.rows.push_back(std::move(row));
            }

            Table l2;
            l2.name = "fig4_l2";
            l2.columns.push_back("N_k");
            const std::vector<std::pair<std::string, double>> angles = {
                {"pi_12", pi / 12.0}, {"pi_6", pi / 6.0}, {"pi_4", pi / 4.0}, {"pi_3", pi / 3.0}};
            std::vector<LinkTwoParams> qs;
            for (const auto& [label, theta] : angles)
            {
                SystemConfig c = base;
                c.theta_i = theta;
                qs.push_back(assemble(c).two);
                l2.columns.push_back("l2_theta_" + label);
            }
            for (int nk = 0; nk <= 8; ++nk)
            {
                std::vector<std::optional<double>> row{double(nk)};
                for (const auto& q : qs)
                    row.push_back(hop2::gml_approx_error(q, nk).l2);
                l2.rows.push_back(std::move(row));
            }
            return {pdf, l2};
        }

        // per-case hop-2 sweeps for both detections
        std::vector<Series> hop2_series(const SystemConfig& base, const std::string& prefix, bool capacity)
        {
            std::vector<Series> out;
            for (int r : {2, 1})
                for (const auto& f : hop2_cases())
                {
                    const SystemConfig c = f.apply(with_r(base, r));
                    const LinkTwoParams p = assemble(c).two;
                    const double gth = db_to_linear(c.gamma_th_db), c0 = c.capacity_constant();
                    Series s;
                    s.name = prefix + "_" + det_name(r) + "_" + f.label();
                    if (capacity)
                    {
                        s.value = [p, c0](double gb) { return hop2::capacity(p, gb, c0); };
                        s.stat = mc::capacity_statistic(c0);
                    }
                    else
                    {
                        s.value = [p, gth](double gb) { return hop2::snr_cdf(gth, p, gb); };
                        s.stat = mc::op_statistic(gth);
                    }
                    s.sampler = [p](double gb) { return mc::hop2_sampler(p, gb); };
                    out.push_back(std::move(s));
                }
            return out;
        }

        std::vector<Series> fig6_series(const SystemConfig& base)
        {
            std::vector<Series> out;
            for (const char* m : {"ook", "4-qam", "16-qam", "64-qam", "4-psk", "8-psk", "16-psk"})
            {
                const ModulationScheme mod = ModulationScheme::parse(m);
                const LinkTwoParams p = assemble(with_r(base, mod.detection_r())).two;
                Series s;
                s.name = "ber_" + mod.name();
                s.value = [p, mod](double gb) { return hop2::avg_ber(mod, p, gb); };
                s.sampler = [p](double gb) { return mc::hop2_sampler(p, gb); };
                s.stat = mc::ber_statistic(mod);
                out.push_back(std::move(s));
            }
            return out;
        }

        std::vector<Series> fig7_series(const SystemConfig& base)
        {
            std::vector<Series> out;
            for (int r : {1, 2})
                for (double z : {50.0, 55.0, 60.0})
                {
                    const SystemConfig c = at_zenith(with_r(base, r), z);
                    const Bundle b = assemble(c);
                    const double gth = db_to_linear(c.gamma_th_db), C = c.C;
                    const std::string tag = "r" + std::to_string(r) + "_z" + std::to_string(int(z));
                    Series s;
                    s.name = "op_" + tag;
                    s.value = [b, gth, C](double gb) {
                        return e2e::cdf(gth, b.one, b.two, e2e::RelayConfig::locked(gb, C));
                    };
                    s.sampler = [b, C](double gb) {
                        return mc::e2e_sampler(b.one, b.two, e2e::RelayConfig::locked(gb, C));
                    };
                    s.stat = mc::op_statistic(gth);
                    out.push_back(s);
                    Series a;
                    a.name = "asym_" + tag;
                    a.value = [b, gth, C](double gb) {
                        return e2e::cdf_asymptotic(gth, b.one, b.two, e2e::RelayConfig::locked(gb, C)).value;
                    };
                    out.push_back(std::move(a));
                }
            return out;
        }

        std::vector<Series> fig9_series(const SystemConfig& base)
        {
            std::vector<Series> out;
            for (double z : {50.0, 55.0, 60.0})
            {
                const SystemConfig c = at_zenith(base, z);
                const Bundle b = assemble(c);
                const double gth = db_to_linear(c.gamma_th_db), C = c.C;
                const std::string tag = "z" + std::to_string(int(z));
                Series af;
                af.name = "af_" + tag;
                af.value = [b, gth, C](double gb) {
                    return e2e::cdf(gth, b.one, b.two, e2e::RelayConfig::locked(gb, C));
                };
                af.sampler = [b, C](double gb) {
                    return mc::e2e_sampler(b.one, b.two, e2e::RelayConfig::locked(gb, C));
                };
                af.stat = mc::op_statistic(gth);
                out.push_back(std::move(af));
                Series df;
                df.name = "df_" + tag;
                df.value = [b, gth](double gb) { return e2e::df_outage_reference(gth, b.one, b.two, gb, gb); };
                // decode-and-forward is in outage when either hop is
                df.sampler = [b](double gb) {
                    mc::Sampler g1 = mc::hop1_sampler(b.one, gb), g2 = mc::hop2_sampler(b.two, gb);
                    return mc::Sampler([g1, g2](mc::Engine& e) {
                        const double a = g1(e);
                        return std::min(a, g2(e));
                    });
                };
                df.stat = mc::op_statistic(gth);
                out.push_back(std::move(df));
            }
            return out;
        }
    } // namespace

    std::string Fluctuation::label() const
    {
        auto n = [](double v) { return std::to_string(static_cast<int>(std::lround(v))); };
        return "s" + n(s) + "r" + n(r) + "l" + n(l);
    }

    SystemConfig Fluctuation::apply(SystemConfig c) const
    {
        c.sigma_s = 0.5 * s * c.a_l;
        c.sigma_r = 0.5 * r * c.a_l;
        c.sigma_l = 0.5 * l * c.a_l;
        return c;
    }

    const std::vector<Fluctuation>& hop2_cases()
    {
        static const std::vector<Fluctuation> cases = {{1, 1, 1}, {2, 1, 1}, {1, 2, 1}, {1, 1, 3}};
        return cases;
    }

    std::vector<std::string> figure_ids() { return {"fig4", "fig5", "fig6", "fig7", "fig8", "fig9"}; }

    std::vector<Table> figure(const std::string& id, const SystemConfig& base, const FigureOptions& opt)
    {
        if (id == "fig4")
            return fig4(base);
        if (id == "fig5")
            return {sweep("fig5", hop2_series(base, "op", false), opt)};
        if (id == "fig6")
            return {sweep("fig6", fig6_series(base), opt)};
        if (id == "fig7")
            return {sweep("fig7", fig7_series(base), opt)};
        if (id == "fig8")
            return {sweep("fig8", hop2_series(base, "capacity", true), opt)};
        if (id == "fig9")
            return {sweep("fig9", fig9_series(base), opt)};
        throw UnknownFigureError("unknown figure '" + id + "' (fig4 to fig9)");
    }
} // namespace fsolink::lab
