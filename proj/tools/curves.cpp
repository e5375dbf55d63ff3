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
#include <cstdio>
#include <sstream>

#include "json.hpp"
#include "lab.hpp"
#include "fsolink/link_hap_user.hpp"
#include "fsolink/montecarlo.hpp"

namespace fsolink::lab
{
    namespace
    {
        std::string num(double v)
        {
            char buf[32];
            std::snprintf(buf, sizeof buf, "%.12g", v);
            return buf;
        }

        std::string cell(const std::optional<double>& v) { return v ? num(*v) : std::string(); }

        struct Eval
        {
            double analytic = 0.0;
            std::optional<double> asymptotic;
            std::vector<std::string> notes;
            mc::Sampler sampler;
            mc::Statistic stat;
        };

        Eval evaluate(const Bundle& b, const SystemConfig& cfg, const CurveRequest& req, double gb)
        {
            Eval e;
            const double gth = db_to_linear(cfg.gamma_th_db);
            const double c0 = cfg.capacity_constant();
            switch (req.metric)
            {
            case Metric::op: e.stat = mc::op_statistic(gth); break;
            case Metric::ber: e.stat = mc::ber_statistic(req.modulation); break;
            case Metric::capacity: e.stat = mc::capacity_statistic(c0); break;
            case Metric::moment: e.stat = mc::moment_statistic(req.s); break;
            }

            if (req.scope == Scope::hop2)
            {
                const LinkTwoParams& p = b.two;
                e.sampler = mc::hop2_sampler(p, gb);
                switch (req.metric)
                {
                case Metric::op: e.analytic = hop2::snr_cdf(gth, p, gb); break;
                case Metric::ber: e.analytic = hop2::avg_ber(req.modulation, p, gb); break;
                case Metric::capacity: e.analytic = hop2::capacity(p, gb, c0); break;
                case Metric::moment: e.analytic = hop2::moment(req.s, p, gb); break;
                }
                return e;
            }

            const auto relay = e2e::RelayConfig::locked(gb, cfg.C);
            e.sampler = mc::e2e_sampler(b.one, b.two, relay);
            switch (req.metric)
            {
            case Metric::op:
                e.analytic = e2e::cdf(gth, b.one, b.two, relay);
                if (req.asymptotic)
                {
                    const auto a = e2e::cdf_asymptotic(gth, b.one, b.two, relay);
                    e.asymptotic = a.value;
                    e.notes = a.notes;
                }
                break;
            case Metric::ber:
                e.analytic = e2e::avg_ber(req.modulation, b.one, b.two, relay);
                if (req.asymptotic)
                {
                    const auto a = e2e::avg_ber_asymptotic(req.modulation, b.one, b.two, relay);
                    e.asymptotic = a.value;
                    e.notes = a.notes;
                }
                break;
            case Metric::capacity: e.analytic = e2e::capacity(b.one, b.two, relay, c0); break;
            case Metric::moment: e.analytic = e2e::moment(req.s, b.one, b.two, relay); break;
            }
            return e;
        }
    } // namespace

    Grid Grid::parse(const std::string& text)
    {
        Grid g;
        char c1 = 0, c2 = 0;
        std::istringstream in(text);
        if (!(in >> g.from >> c1 >> g.to >> c2 >> g.step) || c1 != ':' || c2 != ':' || !(in >> std::ws).eof())
            throw DomainError("grid must look like from:to:step, got '" + text + "'");
        if (!(g.step > 0.0) || !(g.to >= g.from) || !std::isfinite(g.to))
            throw DomainError("grid needs step > 0 and to >= from");
        if ((g.to - g.from) / g.step > 1e5)
            throw DomainError("grid has too many points");
        return g;
    }

    std::vector<double> Grid::points() const
    {
        std::vector<double> x;
        const long n = static_cast<long>(std::floor((to - from) / step + 1e-9));
        for (long i = 0; i <= n; ++i)
            x.push_back(from + step * static_cast<double>(i));
        return x;
    }

    Metric parse_metric(const std::string& s)
    {
        if (s == "op")
            return Metric::op;
        if (s == "ber")
            return Metric::ber;
        if (s == "capacity")
            return Metric::capacity;
        if (s == "moment")
            return Metric::moment;
        throw DomainError("unknown metric '" + s + "' (op, ber, capacity, moment)");
    }

    Scope parse_scope(const std::string& s)
    {
        if (s == "hop2")
            return Scope::hop2;
        if (s == "e2e")
            return Scope::e2e;
        throw DomainError("unknown scope '" + s + "' (hop2, e2e)");
    }

    std::vector<CurvePoint> compute_curve(const SystemConfig& cfg, const CurveRequest& req)
    {
        const Bundle b = assemble(cfg);
        std::vector<CurvePoint> out;
        for (double x : req.grid.points())
        {
            CurvePoint pt;
            pt.x_db = x;
            try
            {
                Eval e = evaluate(b, cfg, req, db_to_linear(x));
                pt.analytic = e.analytic;
                pt.asymptotic = e.asymptotic;
                for (std::size_t i = 0; i < e.notes.size(); ++i)
                    pt.meta["perturbation" + (i ? std::to_string(i) : std::string())] = e.notes[i];
                if (req.samples > 0)
                {
                    const auto est = mc::stream_estimates(e.sampler, req.samples, req.seed, {e.stat})[0];
                    pt.mc_mean = est.mean;
                    pt.mc_ci_low = est.ci_low;
                    pt.mc_ci_high = est.ci_high;
                    pt.meta["seed"] = std::to_string(req.seed);
                    if (pt.analytic < est.ci_low || pt.analytic > est.ci_high)
                        pt.meta["flag"] = "DISAGREE";
                }
            }
            catch (const NumericalError& ex)
            {
                throw NumericalError("at x_db = " + num(x) + ": " + ex.what());
            }
            if (req.scope == Scope::e2e)
                pt.meta["C"] = num(cfg.C);
            pt.meta["N_k"] = std::to_string(cfg.N_k);
            if (req.asymptotic && req.scope == Scope::hop2)
                pt.meta["asymptotic"] = "not available for hop2";
            out.push_back(std::move(pt));
        }
        return out;
    }

    int count_disagreements(const std::vector<CurvePoint>& pts)
    {
        int n = 0;
        for (const auto& p : pts)
        {
            auto it = p.meta.find("flag");
            n += it != p.meta.end() && it->second == "DISAGREE";
        }
        return n;
    }

    void write_csv(std::ostream& out, const std::vector<CurvePoint>& pts, const std::vector<std::string>& preamble)
    {
        for (const auto& line : preamble)
            out << "# " << line << '\n';
        out << "x_db,analytic,asymptotic,mc_mean,mc_ci_low,mc_ci_high\n";
        for (const auto& p : pts)
            out << num(p.x_db) << ',' << num(p.analytic) << ',' << cell(p.asymptotic) << ',' << cell(p.mc_mean) << ','
                << cell(p.mc_ci_low) << ',' << cell(p.mc_ci_high) << '\n';
        for (const auto& p : pts)
        {
            std::string flags;
            for (const auto& [k, v] : p.meta)
                if (k != "C" && k != "N_k" && k != "seed")
                    flags += " " + k + "=" + v;
            if (!flags.empty())
                out << "# x_db=" << num(p.x_db) << ':' << flags << '\n';
        }
        out << "# disagree=" << count_disagreements(pts) << '\n';
    }

    void write_json(std::ostream& out, const std::vector<CurvePoint>& pts)
    {
        auto opt = [](const std::optional<double>& v) { return v ? nlohmann::json(*v) : nlohmann::json(nullptr); };
        nlohmann::json arr = nlohmann::json::array();
        for (const auto& p : pts)
            arr.push_back({{"x_db", p.x_db},
                           {"analytic", p.analytic},
                           {"asymptotic", opt(p.asymptotic)},
                           {"mc_mean", opt(p.mc_mean)},
                           {"mc_ci_low", opt(p.mc_ci_low)},
                           {"mc_ci_high", opt(p.mc_ci_high)},
                           {"meta", p.meta}});
        out << arr.dump(2) << '\n';
    }

    void write_table_csv(std::ostream& out, const Table& t, const std::vector<std::string>& preamble)
    {
        for (const auto& line : preamble)
            out << "# " << line << '\n';
        for (std::size_t i = 0; i < t.columns.size(); ++i)
            out << (i ? "," : "") << t.columns[i];
        out << '\n';
        for (const auto& row : t.rows)
        {
            for (std::size_t i = 0; i < row.size(); ++i)
                out << (i ? "," : "") << cell(row[i]);
            out << '\n';
        }
    }
} // namespace fsolink::lab
