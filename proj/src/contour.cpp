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

#include <algorithm>
#include <array>
#include <cmath>
#include <string>
#include <vector>

#include "fsolink/specfun.hpp"

namespace fsolink
{
    namespace
    {
        constexpr double pi = 3.14159265358979323846;
        constexpr double eps = std::numeric_limits<double>::epsilon();

        struct Rule
        {
            std::vector<double> x;
            std::vector<double> w;
        };

        Rule make_gauss_legendre(int n)
        {
            Rule r;
            r.x.resize(n);
            r.w.resize(n);
            for (int i = 0; i < n; ++i)
            {
                double x = std::cos(pi * (i + 0.75) / (n + 0.5));
                double dp = 1.0;
                for (int it = 0; it < 100; ++it)
                {
                    double p0 = 1.0, p1 = x;
                    for (int k = 2; k <= n; ++k)
                    {
                        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                        p0 = p1;
                        p1 = p2;
                    }
                    dp = n * (x * p1 - p0) / (x * x - 1.0);
                    const double dx = p1 / dp;
                    x -= dx;
                    if (std::abs(dx) < 1e-16)
                        break;
                }
                r.x[i] = x;
                r.w[i] = 2.0 / ((1.0 - x * x) * dp * dp);
            }
            return r;
        }

        const Rule& gl16()
        {
            static const Rule rule = make_gauss_legendre(16);
            return rule;
        }

        // Nodes and weights of a composite 16-point rule with `panels` equal panels on [a, b].
        void composite_nodes(double a, double b, long panels, std::vector<double>& x, std::vector<double>& w)
        {
            const Rule& g = gl16();
            x.clear();
            w.clear();
            x.reserve(panels * 16);
            w.reserve(panels * 16);
            const double h = (b - a) / static_cast<double>(panels);
            for (long p = 0; p < panels; ++p)
            {
                const double mid = a + (p + 0.5) * h;
                for (std::size_t k = 0; k < g.x.size(); ++k)
                {
                    x.push_back(mid + 0.5 * h * g.x[k]);
                    w.push_back(0.5 * h * g.w[k]);
                }
            }
        }

        double safe_re(cplx v)
        {
            const double r = v.real();
            return std::isnan(r) ? -inf : r;
        }

        double log_sum_exp(const std::vector<double>& logs, const std::vector<double>& weights)
        {
            double top = -inf;
            for (double l : logs)
                top = std::max(top, l);
            if (!std::isfinite(top))
                return top;
            double acc = 0.0;
            for (std::size_t i = 0; i < logs.size(); ++i)
                acc += weights[i] * std::exp(logs[i] - top);
            return top + std::log(acc);
        }

        // Minimize a (roughly unimodal) function on [a, b]: coarse scan, then golden section.
        double minimize_1d(const std::function<double(double)>& f, double a, double b)
        {
            if (!(b > a))
                return 0.5 * (a + b);
            constexpr int grid = 24;
            double best_x = a, best_f = inf;
            for (int i = 0; i <= grid; ++i)
            {
                const double x = a + (b - a) * i / grid;
                const double v = f(x);
                if (v < best_f)
                {
                    best_f = v;
                    best_x = x;
                }
            }
            if (!std::isfinite(best_f))
                return 0.5 * (a + b);
            const double step = (b - a) / grid;
            double lo = std::max(a, best_x - step);
            double hi = std::min(b, best_x + step);
            const double g = 0.5 * (std::sqrt(5.0) - 1.0);
            double x1 = hi - g * (hi - lo), x2 = lo + g * (hi - lo);
            double f1 = f(x1), f2 = f(x2);
            for (int it = 0; it < 30; ++it)
            {
                if (f1 < f2)
                {
                    hi = x2;
                    x2 = x1;
                    f2 = f1;
                    x1 = hi - g * (hi - lo);
                    f1 = f(x1);
                }
                else
                {
                    lo = x1;
                    x1 = x2;
                    f1 = f2;
                    x2 = lo + g * (hi - lo);
                    f2 = f(x2);
                }
            }
            const double x = 0.5 * (lo + hi);
            return f(x) <= best_f ? x : best_x;
        }

        // Ordinates used to estimate the L1 norm of an integrand along a vertical line.
        constexpr std::array<double, 7> probe_y = {0.0, 0.3, 0.7, 1.5, 3.0, 6.0, 12.0};
        constexpr std::array<double, 7> probe_w = {0.15, 0.35, 0.6, 1.15, 2.25, 4.5, 6.0};

        double strip_margin(Strip s)
        {
            const double width = s.hi - s.lo;
            return std::isfinite(width) ? std::min(0.25, 0.2 * width) : 0.25;
        }

        double choose_offset(const std::function<cplx(cplx)>& logf, Strip strip, const ContourConfig& cfg)
        {
            if (strip.empty())
                throw ContourSeparationError("no vertical line separates the pole families");
            switch (cfg.offset_mode)
            {
            case OffsetMode::explicit_value:
                if (!(cfg.offset > strip.lo && cfg.offset < strip.hi))
                    throw ContourSeparationError("explicit contour offset lies outside the admissible strip");
                return cfg.offset;
            case OffsetMode::midpoint:
                if (std::isfinite(strip.lo) && std::isfinite(strip.hi))
                    return 0.5 * (strip.lo + strip.hi);
                if (std::isfinite(strip.lo))
                    return strip.lo + 1.0;
                if (std::isfinite(strip.hi))
                    return strip.hi - 1.0;
                return 0.0;
            case OffsetMode::automatic:
                break;
            }
            const double m = strip_margin(strip);
            double a, b;
            if (std::isfinite(strip.lo) && std::isfinite(strip.hi))
            {
                a = strip.lo + m;
                b = strip.hi - m;
            }
            else if (std::isfinite(strip.lo))
            {
                a = strip.lo + m;
                b = a + 40.0;
            }
            else if (std::isfinite(strip.hi))
            {
                b = strip.hi - m;
                a = b - 40.0;
            }
            else
            {
                a = -30.0;
                b = 30.0;
            }
            std::vector<double> logs(probe_y.size());
            std::vector<double> wts(probe_w.begin(), probe_w.end());
            auto objective = [&](double c) {
                for (std::size_t k = 0; k < probe_y.size(); ++k)
                    logs[k] = safe_re(logf(cplx(c, probe_y[k])));
                return log_sum_exp(logs, wts);
            };
            return minimize_1d(objective, a, b);
        }

        double edge_distance(double c, Strip s)
        {
            double d = inf;
            if (std::isfinite(s.lo))
                d = std::min(d, c - s.lo);
            if (std::isfinite(s.hi))
                d = std::min(d, s.hi - c);
            return std::isfinite(d) ? d : 1.0;
        }

        // Largest ordinate where the integrand still matters, from its log-magnitude.
        double truncation_height(const std::function<double(double)>& log_mag, double half_height,
                                 double rel_tol, double& log_peak)
        {
            const double step = 0.25;
            const double drop = std::log(1e-3 * rel_tol);
            double limit = half_height;
            for (int attempt = 0; attempt < 3; ++attempt)
            {
                log_peak = -inf;
                std::vector<double> mags;
                for (double y = 0.0; y <= limit + 1e-12; y += step)
                {
                    mags.push_back(log_mag(y));
                    log_peak = std::max(log_peak, mags.back());
                }
                if (!std::isfinite(log_peak))
                    return step;
                std::size_t last = 0;
                for (std::size_t k = 0; k < mags.size(); ++k)
                    if (mags[k] > log_peak + drop)
                        last = k;
                if (last + 1 < mags.size())
                    return std::min(limit, (last + 2) * step);
                limit *= 2.0;
            }
            throw ConvergenceError("contour integrand does not decay within the truncation limit");
        }
    } // namespace

    // ---------------------------------------------------------------------------------

    void FoxHSpec::validate() const
    {
        if (m < 0 || n < 0 || static_cast<std::size_t>(m) > q() || static_cast<std::size_t>(n) > p())
            throw DomainError("Fox-H spec requires 0 <= m <= q and 0 <= n <= p");
        for (const auto& f : upper)
            if (!(f.scale > 0.0))
                throw DomainError("Fox-H scales must be positive");
        for (const auto& f : lower)
            if (!(f.scale > 0.0))
                throw DomainError("Fox-H scales must be positive");
    }

    Strip separating_strip(const FoxHSpec& spec)
    {
        Strip s;
        for (int j = 0; j < spec.m; ++j)
            s.lo = std::max(s.lo, -spec.lower[j].shift / spec.lower[j].scale);
        for (int i = 0; i < spec.n; ++i)
            s.hi = std::min(s.hi, (1.0 - spec.upper[i].shift) / spec.upper[i].scale);
        return s;
    }

    double mellin_barnes(const LogKernel& log_theta, Strip strip, double log_z, const ContourConfig& cfg,
                         ContourReport* report)
    {
        if (cfg.nodes < 32 || !(cfg.rel_tol > 0.0 && cfg.rel_tol < 1.0) || !(cfg.abs_tol >= 0.0) || !(cfg.half_height > 0.0) ||
            cfg.max_refinements < 1)
            throw DomainError("invalid contour configuration");
        auto logf = [&](cplx s) { return log_theta(s) - s * log_z; };
        const double c = choose_offset(logf, strip, cfg);

        double log_peak = -inf;
        const double ymax = truncation_height([&](double y) { return safe_re(logf(cplx(c, y))); },
                                              cfg.half_height, cfg.rel_tol, log_peak);
        if (!std::isfinite(log_peak))
        {
            if (report)
                *report = ContourReport{c, 0.0, 0.0, 0.0, 0.0, ymax, 0.0, 0, 0, true};
            return 0.0;
        }

        double h0 = std::min(1.0, 1.5 * edge_distance(c, strip));
        if (std::abs(log_z) > 0.0)
            h0 = std::min(h0, 6.0 / std::abs(log_z));
        const long base_panels = std::max<long>(static_cast<long>(std::ceil(ymax / h0)),
                                                static_cast<long>(std::ceil(cfg.nodes / 16.0)));
        const double lower_y = cfg.check_symmetry ? -ymax : 0.0;
        const long panel_factor = cfg.check_symmetry ? 2 : 1;

        std::vector<double> xs, ws;
        cplx previous = 0.0;
        long evaluations = 0;
        for (int level = 0; level <= cfg.max_refinements; ++level)
        {
            composite_nodes(lower_y, ymax, panel_factor * (base_panels << level), xs, ws);
            cplx sum = 0.0;
            double abs_sum = 0.0;
            for (std::size_t k = 0; k < xs.size(); ++k)
            {
                const cplx v = std::exp(logf(cplx(c, xs[k])));
                sum += ws[k] * v;
                abs_sum += ws[k] * std::abs(v);
            }
            evaluations += static_cast<long>(xs.size());
            if (!std::isfinite(sum.real()))
                throw ConvergenceError("non-finite contour integrand");
            // (1/2 pi i) Int f ds with ds = i dy; the half line uses conjugate symmetry.
            const double scale = cfg.check_symmetry ? 1.0 / (2.0 * pi) : 1.0 / pi;
            const double value = scale * sum.real();
            if (level > 0)
            {
                const double diff = std::abs(value - scale * previous.real());
                const double floor = 64.0 * eps * scale * abs_sum;
                if (diff <= cfg.rel_tol * std::abs(value) || diff <= floor || diff <= cfg.abs_tol)
                {
                    if (report)
                    {
                        report->offset = c;
                        report->value = value;
                        report->imag_residue = cfg.check_symmetry ? std::abs(scale * sum.imag()) : 0.0;
                        report->abs_integral = scale * abs_sum;
                        report->truncation = ymax;
                        report->refinements = level;
                        report->evaluations = evaluations;
                        report->converged = true;
                    }
                    return value;
                }
            }
            previous = sum;
        }
        throw ConvergenceError("contour quadrature did not settle within max_refinements");
    }

    namespace
    {
        cplx fox_log_theta(const FoxHSpec& spec, cplx s)
        {
            cplx acc = 0.0;
            for (std::size_t j = 0; j < spec.lower.size(); ++j)
            {
                const auto& f = spec.lower[j];
                if (static_cast<int>(j) < spec.m)
                    acc += log_gamma_unbranched(f.shift + f.scale * s);
                else
                    acc -= log_gamma_unbranched(1.0 - f.shift - f.scale * s);
            }
            for (std::size_t i = 0; i < spec.upper.size(); ++i)
            {
                const auto& f = spec.upper[i];
                if (static_cast<int>(i) < spec.n)
                    acc += log_gamma_unbranched(1.0 - f.shift - f.scale * s);
                else
                    acc -= log_gamma_unbranched(f.shift + f.scale * s);
            }
            return acc;
        }

        void append_constraints(const FoxHSpec& spec, bool on_t, std::vector<LinearConstraint>& out)
        {
            for (int j = 0; j < spec.m; ++j)
            {
                const auto& f = spec.lower[j];
                out.push_back(on_t ? LinearConstraint{f.shift, f.scale, 0.0} : LinearConstraint{f.shift, 0.0, f.scale});
            }
            for (int i = 0; i < spec.n; ++i)
            {
                const auto& f = spec.upper[i];
                out.push_back(on_t ? LinearConstraint{1.0 - f.shift, -f.scale, 0.0}
                                   : LinearConstraint{1.0 - f.shift, 0.0, -f.scale});
            }
        }
    } // namespace

    double fox_h(const FoxHSpec& spec, double z, const ContourConfig& cfg, ContourReport* report)
    {
        spec.validate();
        if (!(z > 0.0))
            throw DomainError("Fox-H argument must be positive");
        const Strip strip = separating_strip(spec);
        if (strip.empty())
            throw ContourSeparationError("Fox-H pole families overlap; no separating vertical contour");
        return mellin_barnes([&spec](cplx s) { return fox_log_theta(spec, s); }, strip, std::log(z), cfg,
                             report);
    }

    double meijer_g(const FoxHSpec& spec, double z, const ContourConfig& cfg, ContourReport* report)
    {
        for (const auto& f : spec.upper)
            if (f.scale != 1.0)
                throw DomainError("Meijer-G requires unit scales");
        for (const auto& f : spec.lower)
            if (f.scale != 1.0)
                throw DomainError("Meijer-G requires unit scales");
        return fox_h(spec, z, cfg, report);
    }

    // ---------------------------------------------------------------------------------
    // Two-variable engine

    namespace
    {
        double slack(const LinearConstraint& k, double ct, double cw) { return k.shift + k.coef_t * ct + k.coef_w * cw; }

        double normalized_min_slack(const std::vector<LinearConstraint>& ks, double ct, double cw)
        {
            double s = inf;
            for (const auto& k : ks)
            {
                const double norm = std::max(std::abs(k.coef_t), std::abs(k.coef_w));
                s = std::min(s, norm > 0.0 ? slack(k, ct, cw) / norm : (k.shift > 0.0 ? inf : -inf));
            }
            return s;
        }

        // Interior point maximizing the smallest normalized slack (coarse-to-fine search).
        std::pair<double, double> central_point(const std::vector<LinearConstraint>& ks, double& best)
        {
            double ct0 = 0.0, cw0 = 0.0, span = 20.0;
            best = -inf;
            for (int round = 0; round < 4; ++round)
            {
                const int grid = 40;
                double bt = ct0, bw = cw0, bs = -inf;
                for (int i = 0; i <= grid; ++i)
                    for (int j = 0; j <= grid; ++j)
                    {
                        const double ct = ct0 - span + 2.0 * span * i / grid;
                        const double cw = cw0 - span + 2.0 * span * j / grid;
                        const double s = normalized_min_slack(ks, ct, cw);
                        if (s > bs)
                        {
                            bs = s;
                            bt = ct;
                            bw = cw;
                        }
                    }
                ct0 = bt;
                cw0 = bw;
                best = bs;
                span /= 10.0;
            }
            return {ct0, cw0};
        }

        // Feasible interval of one coordinate with the other fixed, keeping slack >= margin.
        std::pair<double, double> axis_interval(const std::vector<LinearConstraint>& ks, bool along_t, double other,
                                                double margin)
        {
            double lo = -inf, hi = inf;
            for (const auto& k : ks)
            {
                const double a = along_t ? k.coef_t : k.coef_w;
                const double rest = k.shift + (along_t ? k.coef_w : k.coef_t) * other;
                const double norm = std::max(std::abs(k.coef_t), std::abs(k.coef_w));
                const double need = margin * norm;
                if (a > 0.0)
                    lo = std::max(lo, (need - rest) / a);
                else if (a < 0.0)
                    hi = std::min(hi, (rest - need) / (-a));
            }
            return {lo, hi};
        }

        double axis_distance(const std::vector<LinearConstraint>& ks, bool along_t, double ct, double cw)
        {
            double d = inf;
            for (const auto& k : ks)
            {
                const double a = std::abs(along_t ? k.coef_t : k.coef_w);
                if (a > 0.0)
                    d = std::min(d, slack(k, ct, cw) / a);
            }
            return std::isfinite(d) ? d : 1.0;
        }
    } // namespace

    double mellin_barnes_2d(const Kernel2D& kernel, const std::vector<LinearConstraint>& constraints, double log_z1,
                            double log_z2, const ContourConfig& cfg, ContourReport* report)
    {
        if (cfg.nodes < 32 || !(cfg.rel_tol > 0.0 && cfg.rel_tol < 1.0) || !(cfg.abs_tol >= 0.0) || cfg.max_refinements < 1)
            throw DomainError("invalid contour configuration");

        auto lt = [&](cplx t) { return kernel.log_t(t) - t * log_z1; };
        auto lw = [&](cplx w) { return kernel.log_w(w) - w * log_z2; };
        auto full = [&](cplx t, cplx w) { return lt(t) + lw(w) + kernel.log_joint(t, w); };

        double best_slack = 0.0;
        auto [ct, cw] = central_point(constraints, best_slack);
        if (!(best_slack > 0.0))
            throw ContourSeparationError("no pair of vertical contours separates the pole families");

        if (cfg.offset_mode == OffsetMode::explicit_value)
        {
            ct = cfg.offset;
            cw = cfg.offset2;
            if (!(normalized_min_slack(constraints, ct, cw) > 0.0))
                throw ContourSeparationError("explicit contour offsets violate pole separation");
        }
        else if (cfg.offset_mode == OffsetMode::automatic)
        {
            const double margin = std::min(0.25, 0.4 * best_slack);
            std::vector<double> logs, wts;
            const std::array<double, 4> yt = {0.0, 0.5, 1.5, 4.0};
            const std::array<double, 4> wt = {0.25, 0.75, 1.75, 3.0};
            const std::array<double, 7> yw = {-4.0, -1.5, -0.5, 0.0, 0.5, 1.5, 4.0};
            const std::array<double, 7> ww = {3.0, 1.75, 0.75, 0.5, 0.75, 1.75, 3.0};
            auto objective = [&](double a, double b) {
                logs.clear();
                wts.clear();
                for (std::size_t i = 0; i < yt.size(); ++i)
                    for (std::size_t j = 0; j < yw.size(); ++j)
                    {
                        logs.push_back(safe_re(full(cplx(a, yt[i]), cplx(b, yw[j]))));
                        wts.push_back(wt[i] * ww[j]);
                    }
                return log_sum_exp(logs, wts);
            };
            for (int sweep = 0; sweep < 6; ++sweep)
            {
                auto [tlo, thi] = axis_interval(constraints, true, cw, margin);
                tlo = std::max(tlo, ct - 20.0);
                thi = std::min(thi, ct + 20.0);
                ct = minimize_1d([&](double a) { return objective(a, cw); }, tlo, thi);
                auto [wlo, whi] = axis_interval(constraints, false, ct, margin);
                wlo = std::max(wlo, cw - 20.0);
                whi = std::min(whi, cw + 20.0);
                cw = minimize_1d([&](double b) { return objective(ct, b); }, wlo, whi);
            }
        }

        // Truncation box from the log-magnitude on a coarse grid.
        // gamma factors with real part c only start to decay once |Im| passes about |c|
        const double H = cfg.half_height + 1.5 * std::max(std::abs(ct), std::abs(cw));
        const double step = 0.5;
        const int nt_probe = static_cast<int>(H / step) + 1;
        const int nw_probe = 2 * nt_probe - 1;
        std::vector<cplx> pt(nt_probe), pw(nw_probe);
        for (int i = 0; i < nt_probe; ++i)
            pt[i] = lt(cplx(ct, i * step));
        for (int j = 0; j < nw_probe; ++j)
            pw[j] = lw(cplx(cw, (j - (nt_probe - 1)) * step));
        double log_peak = -inf;
        std::vector<double> mags(static_cast<std::size_t>(nt_probe) * nw_probe);
        for (int i = 0; i < nt_probe; ++i)
            for (int j = 0; j < nw_probe; ++j)
            {
                const cplx t(ct, i * step), w(cw, (j - (nt_probe - 1)) * step);
                const double v = safe_re(pt[i] + pw[j] + kernel.log_joint(t, w));
                mags[static_cast<std::size_t>(i) * nw_probe + j] = v;
                log_peak = std::max(log_peak, v);
            }
        if (!std::isfinite(log_peak))
        {
            if (report)
                *report = ContourReport{ct, cw, 0.0, 0.0, 0.0, 0.0, 0.0, 0, 0, true};
            return 0.0;
        }
        const double drop = std::log(1e-3 * cfg.rel_tol);
        int imax = 0, jmax = 0;
        for (int i = 0; i < nt_probe; ++i)
            for (int j = 0; j < nw_probe; ++j)
                if (mags[static_cast<std::size_t>(i) * nw_probe + j] > log_peak + drop)
                {
                    imax = std::max(imax, i);
                    jmax = std::max(jmax, std::abs(j - (nt_probe - 1)));
                }
        if (imax >= nt_probe - 1 || jmax >= nt_probe - 1)
            throw ConvergenceError("two-variable integrand does not decay within the truncation box (offsets " +
                                   std::to_string(ct) + ", " + std::to_string(cw) + ")");
        const double Yt = (imax + 1.5) * step;
        const double Yw = (jmax + 1.5) * step;

        double ht = std::min(1.0, 1.5 * axis_distance(constraints, true, ct, cw));
        double hw = std::min(1.0, 1.5 * axis_distance(constraints, false, ct, cw));
        if (std::abs(log_z1) > 0.0)
            ht = std::min(ht, 6.0 / std::abs(log_z1));
        if (std::abs(log_z2) > 0.0)
            hw = std::min(hw, 6.0 / std::abs(log_z2));
        const long minimum_panels = static_cast<long>(std::ceil(cfg.nodes / 16.0));
        const long base_t = std::max<long>(static_cast<long>(std::ceil(Yt / ht)), minimum_panels);
        const long base_w = std::max<long>(static_cast<long>(std::ceil(2.0 * Yw / hw)), minimum_panels);

        const double joint_bound =
            kernel.joint_peaks_on_real_axis ? safe_re(kernel.log_joint(cplx(ct, 0.0), cplx(cw, 0.0))) : inf;
        const double skip_below = log_peak + std::log(1e-6 * cfg.rel_tol);

        const double t_lower = cfg.check_symmetry ? -Yt : 0.0;
        const long t_factor = cfg.check_symmetry ? 2 : 1;
        const double scale = cfg.check_symmetry ? 1.0 / (4.0 * pi * pi) : 1.0 / (2.0 * pi * pi);

        std::vector<double> xt, wt, xw, ww;
        std::vector<cplx> cache_t, cache_w;
        double previous = 0.0;
        long evaluations = 0;
        for (int level = 0; level <= cfg.max_refinements; ++level)
        {
            composite_nodes(t_lower, Yt, t_factor * (base_t << level), xt, wt);
            composite_nodes(-Yw, Yw, base_w << level, xw, ww);
            cache_t.resize(xt.size());
            cache_w.resize(xw.size());
            for (std::size_t i = 0; i < xt.size(); ++i)
                cache_t[i] = lt(cplx(ct, xt[i]));
            for (std::size_t j = 0; j < xw.size(); ++j)
                cache_w[j] = lw(cplx(cw, xw[j]));
            double wmax = -inf;
            for (const auto& v : cache_w)
                wmax = std::max(wmax, safe_re(v));
            cplx sum = 0.0;
            double abs_sum = 0.0;
            for (std::size_t i = 0; i < xt.size(); ++i)
            {
                const double ti = safe_re(cache_t[i]);
                if (ti + wmax + joint_bound < skip_below)
                    continue;
                const cplx t(ct, xt[i]);
                cplx row = 0.0;
                double abs_row = 0.0;
                for (std::size_t j = 0; j < xw.size(); ++j)
                {
                    if (ti + safe_re(cache_w[j]) + joint_bound < skip_below)
                        continue;
                    const cplx v = std::exp(cache_t[i] + cache_w[j] + kernel.log_joint(t, cplx(cw, xw[j])));
                    row += ww[j] * v;
                    abs_row += ww[j] * std::abs(v);
                    ++evaluations;
                }
                sum += wt[i] * row;
                abs_sum += wt[i] * abs_row;
            }
            if (!std::isfinite(sum.real()))
                throw ConvergenceError("non-finite two-variable contour integrand");
            const double value = scale * sum.real();
            if (level > 0)
            {
                const double diff = std::abs(value - previous);
                const double floor = 256.0 * eps * scale * abs_sum;
                if (diff <= cfg.rel_tol * std::abs(value) || diff <= floor || diff <= cfg.abs_tol)
                {
                    if (report)
                    {
                        report->offset = ct;
                        report->offset2 = cw;
                        report->value = value;
                        report->imag_residue = cfg.check_symmetry ? std::abs(scale * sum.imag()) : 0.0;
                        report->abs_integral = scale * abs_sum;
                        report->truncation = Yt;
                        report->truncation2 = Yw;
                        report->refinements = level;
                        report->evaluations = evaluations;
                        report->converged = true;
                    }
                    return value;
                }
            }
            previous = value;
        }
        throw ConvergenceError("two-variable contour quadrature did not settle within max_refinements");
    }

    double fox_h_bivariate(const BivariateFoxHSpec& spec, double z1, double z2, const ContourConfig& cfg,
                           ContourReport* report)
    {
        spec.kernel1.validate();
        spec.kernel2.validate();
        if (!(z1 > 0.0) || !(z2 > 0.0))
            throw DomainError("bivariate Fox-H arguments must be positive");
        std::vector<LinearConstraint> ks;
        append_constraints(spec.kernel1, true, ks);
        append_constraints(spec.kernel2, false, ks);
        bool numerators_only = true;
        for (const auto& j : spec.joint)
        {
            if (j.numerator)
                ks.push_back({j.shift, j.coef_t, j.coef_w});
            else
                numerators_only = false;
        }
        Kernel2D k;
        k.log_t = [&spec](cplx t) { return fox_log_theta(spec.kernel1, t); };
        k.log_w = [&spec](cplx w) { return fox_log_theta(spec.kernel2, w); };
        k.log_joint = [&spec](cplx t, cplx w) {
            cplx acc = 0.0;
            for (const auto& j : spec.joint)
            {
                const cplx g = log_gamma_unbranched(j.shift + j.coef_t * t + j.coef_w * w);
                acc += j.numerator ? g : -g;
            }
            return acc;
        };
        k.joint_peaks_on_real_axis = numerators_only;
        return mellin_barnes_2d(k, ks, std::log(z1), std::log(z2), cfg, report);
    }
} // namespace fsolink
