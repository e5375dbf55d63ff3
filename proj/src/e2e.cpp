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

#include "fsolink/e2e.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "fsolink/link_hap_user.hpp"
#include "fsolink/link_ogs_hap.hpp"

namespace fsolink::e2e
{
    namespace
    {
        struct Setup
        {
            HopModel h1, h2;
            double r1 = 1.0, r2 = 1.0;
            double log_z2 = 0.0; // ln(C kappa2^r2 / gamma_bar_2)
        };

        Setup make_setup(const LinkOneParams& p1, const LinkTwoParams& p2, const RelayConfig& relay)
        {
            relay.validate();
            Setup s;
            s.h1 = hop1::model(p1);
            s.h2 = hop2::model(p2);
            s.r1 = s.h1.r;
            s.r2 = s.h2.r;
            s.log_z2 = std::log(relay.C) - std::log(s.h2.snr_scale(relay.gamma_bar_2));
            return s;
        }

        // Constraints shared by every correction integral:
        //   -1 < c_w < 0,  r2 c_w > edge2,  c_t > edge1,  c_t / r1 > c_w
        std::vector<LinearConstraint> base_constraints(const Setup& s)
        {
            return {{0.0, 0.0, -1.0},
                    {1.0, 0.0, 1.0},
                    {-s.h2.edge, 0.0, s.r2},
                    {-s.h1.edge, 1.0, 0.0},
                    {0.0, 1.0 / s.r1, -1.0}};
        }

        // The double integral  Int Int K(t, w) z1^-t z2^-w  with
        //   K = M1(t) Gamma(w) Gamma(t/r1 - w) M2(r2 w) / (r1 Gamma(1 + t/r1)) * extra(t).
        // With -1 < Re w < 0 it equals P(gamma < threshold) - P(gamma_1 < threshold), which is <= 0.
        double correction(const Setup& s, const std::function<cplx(cplx)>& extra_t,
                          std::vector<LinearConstraint> constraints, double log_z1, const ContourConfig& cfg)
        {
            const double r1 = s.r1, r2 = s.r2;
            Kernel2D k;
            const HopModel& h1 = s.h1;
            const HopModel& h2 = s.h2;
            k.log_t = [&h1, &extra_t, r1](cplx t) {
                return h1.log_mellin(t) - log_gamma_unbranched(1.0 + t / r1) - std::log(r1) + extra_t(t);
            };
            k.log_w = [&h2, r2](cplx w) { return log_gamma_unbranched(w) + h2.log_mellin(r2 * w); };
            k.log_joint = [r1](cplx t, cplx w) { return log_gamma_unbranched(t / r1 - w); };
            k.joint_peaks_on_real_axis = true;
            return mellin_barnes_2d(k, constraints, log_z1, s.log_z2, cfg);
        }

        cplx no_extra(cplx) { return 0.0; }

        double sign_gamma(double x)
        {
            if (x > 0.0)
                return 1.0;
            return (static_cast<long long>(std::floor(x)) % 2 == 0) ? 1.0 : -1.0;
        }

        // ---- asymptotic expansions ------------------------------------------------------

        struct ShapeSet
        {
            double a1, b1, e2, a2, b2, c; // c = (1 + q^2) varpi / (2 q)
            double r1, r2;
        };

        bool near_pole(double x) { return x < 1e-6 && std::abs(x - std::round(x)) < 1e-6; }

        // A term is a signed product of gamma functions over plain factors, times a k-sum.
        struct Product
        {
            std::vector<double> gammas;
            std::vector<double> divisors;
            double lsum = 0.0; // ln|sum over k|
            double ssum = 1.0;
        };

        struct TermSpec
        {
            std::string label;
            Product prod;
            double exponent;
            bool cross; // bracket is the two-hop product rather than the first hop alone
        };

        bool degenerate(const std::vector<TermSpec>& specs, const ShapeSet& sh)
        {
            for (const auto& t : specs)
            {
                for (double g : t.prod.gammas)
                    if (near_pole(g))
                        return true;
                for (double d : t.prod.divisors)
                    if (std::abs(d) < 1e-6)
                        return true;
                if (!std::isfinite(t.prod.lsum))
                    return true;
            }
            const double ex[] = {sh.a1 / sh.r1, sh.b1 / sh.r1, sh.e2 / sh.r1, sh.a2 / sh.r2, sh.b2 / sh.r2, sh.c / sh.r2};
            for (int i = 0; i < 6; ++i)
                for (int j = i + 1; j < 6; ++j)
                    if (std::abs(ex[i] - ex[j]) < 1e-6)
                        return true;
            return false;
        }

        // sum_k w_k x^-(2k+1)  (or sum_k (2k+1) w_k when x is NaN)
        void k_sum(const LinkTwoParams& p2, double x, Product& prod)
        {
            const double rho = p2.rho();
            double acc = 0.0;
            for (int k = 0; k <= p2.N_k; ++k)
            {
                const double w = series_weight(k, rho);
                acc += std::isnan(x) ? (2.0 * k + 1.0) * w : w * std::pow(x, -(2.0 * k + 1.0));
            }
            prod.lsum = std::log(std::abs(acc));
            prod.ssum = acc < 0.0 ? -1.0 : 1.0;
        }

        enum class Flavor
        {
            cdf,
            ber
        };

        std::vector<TermSpec> term_specs(Flavor flavor, const ShapeSet& sh, const LinkTwoParams& p2)
        {
            const double a1 = sh.a1, b1 = sh.b1, e2 = sh.e2, a2 = sh.a2, b2 = sh.b2, c = sh.c;
            const double rr = sh.r1 / sh.r2;
            const double nan = std::numeric_limits<double>::quiet_NaN();
            std::vector<TermSpec> out;
            auto add = [&](std::string label, std::vector<double> g, std::vector<double> d, double ksx, double ex,
                           bool cross) {
                TermSpec t{std::move(label), {std::move(g), std::move(d)}, ex, cross};
                k_sum(p2, ksx, t.prod);
                out.push_back(std::move(t));
            };
            add("eta^2/r1 (hop 1)", {a1 - e2, b1 - e2, a2, b2}, {e2}, c, e2 / sh.r1, false);
            if (flavor == Flavor::ber)
                add("alpha1/r1 (hop 1)", {b1 - a1, a2, b2}, {a1, e2 - a1}, c, a1 / sh.r1, false);
            add("beta1/r1 (hop 1)", {a1 - b1, a2, b2}, {b1, e2 - b1}, c, b1 / sh.r1, false);
            if (flavor == Flavor::cdf)
            {
                const double sh1 = b1 / rr; // r2 beta1 / r1
                add("beta1/r1 (cross)", {e2 - b1, a1 - b1, a2 - sh1, b2 - sh1}, {b1, e2 - b1}, c - sh1, b1 / sh.r1,
                    true);
            }
            add("varpi/r2 (cross)", {a1 - rr * c, b1 - rr * c, a2 - c, b2 - c}, {e2 - rr * c, c}, nan, c / sh.r2, true);
            add("alpha2/r2 (cross)", {e2 - rr * a2, a1 - rr * a2, b1 - rr * a2, b2 - a2}, {a2, e2 - a2}, c - a2,
                a2 / sh.r2, true);
            add("beta2/r2 (cross)", {e2 - rr * b2, a1 - rr * b2, b1 - rr * b2, a2 - b2}, {b2, e2 - b2}, c - b2,
                b2 / sh.r2, true);
            return out;
        }

        // Evaluates sum_terms P * product * (bracket * x)^exponent * (Gamma(p + exponent) / (2 Gamma(p)) for BER),
        // where x is gamma for the CDF and 1/q for the BER.
        Asymptotic expand(Flavor flavor, double x, double p_B, const LinkOneParams& p1_in, const LinkTwoParams& p2,
                          const RelayConfig& relay, bool allow_perturbation)
        {
            relay.validate();
            ShapeSet sh{p1_in.gg.alpha, p1_in.gg.beta, p1_in.eta_s2, p2.gg.alpha, p2.gg.beta, p2.exponent(),
                        static_cast<double>(p1_in.r1), static_cast<double>(p2.r2)};
            Asymptotic result;
            auto specs = term_specs(flavor, sh, p2);
            if (degenerate(specs, sh))
            {
                if (!allow_perturbation)
                    throw DegenerateExponentError("asymptotic expansion: coinciding exponents or a gamma pole");
                for (int attempt = 1; attempt <= 4 && degenerate(specs, sh); ++attempt)
                {
                    const double eps = 1e-4 * attempt;
                    sh.a1 *= 1.0 + eps;
                    sh.b1 *= 1.0 + 2.0 * eps;
                    sh.e2 *= 1.0 + 3.0 * eps;
                    sh.a2 *= 1.0 + 4.0 * eps;
                    sh.b2 *= 1.0 + 5.0 * eps;
                    specs = term_specs(flavor, sh, p2);
                }
                if (degenerate(specs, sh))
                    throw DegenerateExponentError("asymptotic expansion: perturbation did not separate exponents");
                std::ostringstream note;
                note << "shape parameters perturbed to alpha1=" << sh.a1 << " beta1=" << sh.b1 << " eta^2=" << sh.e2
                     << " alpha2=" << sh.a2 << " beta2=" << sh.b2;
                result.notes.push_back(note.str());
            }

            const double k1 = p1_in.kappa(), k2 = p2.kappa();
            const double log_hop1 = sh.r1 * std::log(k1) - std::log(relay.gamma_bar_1);
            const double log_cross = log_hop1 + sh.r2 * std::log(k2) + std::log(relay.C) - std::log(relay.gamma_bar_2);
            const double log_pref = std::log(sh.e2) + std::log(p2.varpi) + std::log(p2.norm_N) - std::lgamma(sh.a1) -
                                    std::lgamma(sh.b1) - std::lgamma(sh.a2) - std::lgamma(sh.b2) -
                                    (flavor == Flavor::ber ? std::log(2.0) + std::lgamma(p_B) : 0.0);

            std::vector<std::pair<double, double>> logs; // (ln|term|, sign)
            for (const auto& t : specs)
            {
                double lg = log_pref + t.prod.lsum;
                double sg = t.prod.ssum;
                for (double g : t.prod.gammas)
                {
                    lg += std::lgamma(g);
                    sg *= sign_gamma(g);
                }
                for (double d : t.prod.divisors)
                {
                    lg -= std::log(std::abs(d));
                    sg *= d < 0.0 ? -1.0 : 1.0;
                }
                if (flavor == Flavor::ber)
                    lg += std::lgamma(p_B + t.exponent);
                lg += t.exponent * ((t.cross ? log_cross : log_hop1) + std::log(x));
                result.terms.push_back({t.label, t.exponent, sg * std::exp(lg)});
                logs.emplace_back(lg, sg);
            }
            std::sort(logs.begin(), logs.end());
            double acc = 0.0;
            for (const auto& [lg, sg] : logs)
                acc += sg * std::exp(lg);
            result.value = acc;
            return result;
        }
    } // namespace

    double combine_snr(double g1, double g2, double C)
    {
        if (!(C > 0.0))
            throw DomainError("relay gain constant C must be positive");
        if (g1 == 0.0 || g2 == 0.0)
            return 0.0;
        if (std::isinf(g2))
            return g1;
        return g1 * g2 / (g2 + C);
    }

    RelayConfig RelayConfig::locked(double gamma_bar, double C) { return {C, gamma_bar, gamma_bar, true}; }

    void RelayConfig::validate() const
    {
        if (!(C > 0.0))
            throw DomainError("relay gain constant C must be positive");
        if (!(gamma_bar_1 > 0.0) || !(gamma_bar_2 > 0.0))
            throw DomainError("average SNRs must be positive");
        if (lock_equal && gamma_bar_1 != gamma_bar_2)
            throw DomainError("locked relay configuration with different average SNRs");
    }

    double cdf(double gamma, const LinkOneParams& p1, const LinkTwoParams& p2, const RelayConfig& relay,
               const ContourConfig& cfg)
    {
        const Setup s = make_setup(p1, p2, relay);
        if (gamma < 0.0)
            throw DomainError("SNR must be non-negative");
        if (gamma == 0.0)
            return 0.0;
        if (std::isinf(gamma))
            return 1.0;
        const double f1 = hop_cdf(s.h1, gamma, relay.gamma_bar_1, cfg);
        const double log_z1 = std::log(s.h1.x_of(gamma, relay.gamma_bar_1));
        const double v = f1 - std::min(correction(s, no_extra, base_constraints(s), log_z1, cfg), 0.0);
        if (v <= 0.5)
            return checked_probability(v, "end-to-end CDF");
        // upper half: 1 - F is the same kernel over 0 < Re w < Re t / r1, no cancellation against 1
        const std::vector<LinearConstraint> upper = {{0.0, 0.0, 1.0}, {0.0, 1.0 / s.r1, -1.0}, {-s.h1.edge, 1.0, 0.0}};
        ContourConfig tail_cfg = cfg;
        tail_cfg.abs_tol = std::max(cfg.abs_tol, 1e-3 * cfg.rel_tol);
        return checked_probability(1.0 - std::max(correction(s, no_extra, upper, log_z1, tail_cfg), 0.0), "end-to-end CDF");
    }

    double pdf(double gamma, const LinkOneParams& p1, const LinkTwoParams& p2, const RelayConfig& relay,
               const ContourConfig& cfg)
    {
        const Setup s = make_setup(p1, p2, relay);
        if (!(gamma > 0.0))
            throw DomainError("SNR density needs gamma > 0");
        const double f1 = hop_pdf(s.h1, gamma, relay.gamma_bar_1, cfg);
        // d/dgamma of z1^-t brings down -t / (r1 gamma)
        auto extra = [](cplx t) { return std::log(t); };
        const double v = correction(s, extra, base_constraints(s), std::log(s.h1.x_of(gamma, relay.gamma_bar_1)), cfg);
        return std::max(f1 + v / (s.r1 * gamma), 0.0);
    }

    double cdf_series(double gamma, const LinkOneParams& p1, const LinkTwoParams& p2, const RelayConfig& relay,
                      const ContourConfig& cfg)
    {
        const Setup s = make_setup(p1, p2, relay);
        if (!(gamma > 0.0))
            throw DomainError("cdf_series needs gamma > 0");
        const double r1 = s.r1, r2 = s.r2, c = p2.exponent();
        BivariateFoxHSpec spec;
        spec.joint = {{0.0, 1.0 / r1, -1.0, true}};
        spec.kernel1.m = 3;
        spec.kernel1.n = 0;
        spec.kernel1.lower = {{p1.eta_s2, 1.0}, {p1.gg.alpha, 1.0}, {p1.gg.beta, 1.0}};
        spec.kernel1.upper = {{1.0 + p1.eta_s2, 1.0}, {1.0, 1.0 / r1}};
        const double z1 = s.h1.x_of(gamma, relay.gamma_bar_1);
        const double z2 = std::exp(s.log_z2);
        double acc = 0.0;
        for (int k = 0; k <= p2.N_k; ++k)
        {
            FoxHSpec& k2 = spec.kernel2;
            k2.lower = {{p2.gg.alpha, r2}, {p2.gg.beta, r2}, {0.0, 1.0}};
            k2.upper.clear();
            for (int j = 0; j < 2 * k + 1; ++j)
            {
                k2.lower.push_back({c, r2});
                k2.upper.push_back({c + 1.0, r2});
            }
            k2.m = static_cast<int>(k2.lower.size());
            k2.n = 0;
            acc += series_weight(k, p2.rho()) * fox_h_bivariate(spec, z1, z2, cfg) / r1;
        }
        const double pref = p1.eta_s2 * p2.varpi * p2.norm_N /
                            (std::tgamma(p1.gg.alpha) * std::tgamma(p1.gg.beta) * std::tgamma(p2.gg.alpha) *
                             std::tgamma(p2.gg.beta));
        return checked_probability(1.0 - pref * acc, "end-to-end CDF (series)");
    }

    Asymptotic cdf_asymptotic(double gamma, const LinkOneParams& p1, const LinkTwoParams& p2,
                              const RelayConfig& relay, bool allow_perturbation)
    {
        if (!(gamma > 0.0))
            throw DomainError("asymptotic CDF needs gamma > 0");
        return expand(Flavor::cdf, gamma, 0.0, p1, p2, relay, allow_perturbation);
    }

    Asymptotic ber_term_asymptotic(double p_B, double q, const LinkOneParams& p1, const LinkTwoParams& p2,
                                   const RelayConfig& relay, bool allow_perturbation)
    {
        if (!(p_B > 0.0) || !(q > 0.0))
            throw DomainError("BER term needs p, q > 0");
        return expand(Flavor::ber, 1.0 / q, p_B, p1, p2, relay, allow_perturbation);
    }

    Asymptotic avg_ber_asymptotic(const ModulationScheme& mod, const LinkOneParams& p1, const LinkTwoParams& p2,
                                  const RelayConfig& relay, bool allow_perturbation)
    {
        Asymptotic total;
        for (int m = 1; m <= mod.terms(); ++m)
        {
            Asymptotic a = ber_term_asymptotic(mod.p(), mod.q(m), p1, p2, relay, allow_perturbation);
            total.value += mod.delta() * a.value;
            if (total.terms.empty())
                total.terms = a.terms;
            else
                for (std::size_t i = 0; i < a.terms.size(); ++i)
                    total.terms[i].value += a.terms[i].value;
            for (auto& n : a.notes)
                if (std::find(total.notes.begin(), total.notes.end(), n) == total.notes.end())
                    total.notes.push_back(n);
        }
        for (auto& t : total.terms)
            t.value *= mod.delta();
        return total;
    }

    DiversityReport diversity_order(const LinkOneParams& p1, const LinkTwoParams& p2)
    {
        const double r1 = p1.r1, r2 = p2.r2;
        DiversityReport d;
        d.candidates = {{"alpha1/r1", p1.gg.alpha / r1}, {"beta1/r1", p1.gg.beta / r1},
                        {"eta^2/r1", p1.eta_s2 / r1},    {"alpha2/r2", p2.gg.alpha / r2},
                        {"beta2/r2", p2.gg.beta / r2},   {"varpi/r2", p2.exponent() / r2}};
        auto best = std::min_element(d.candidates.begin(), d.candidates.end(),
                                     [](const auto& a, const auto& b) { return a.second < b.second; });
        d.order = best->second;
        d.label = best->first;
        return d;
    }

    double ber_term(double p_B, double q, const LinkOneParams& p1, const LinkTwoParams& p2, const RelayConfig& relay,
                    const ContourConfig& cfg)
    {
        if (!(p_B > 0.0) || !(q > 0.0))
            throw DomainError("BER term needs p, q > 0");
        const Setup s = make_setup(p1, p2, relay);
        const double i1 = hop_ber_term(s.h1, p_B, q, relay.gamma_bar_1, cfg);
        const double r1 = s.r1;
        // Int gamma^(p-1) e^(-q gamma) gamma^(-t/r1) d gamma = Gamma(p - t/r1) q^(t/r1 - p)
        auto extra = [p_B, r1](cplx t) { return log_gamma_unbranched(p_B - t / r1); };
        auto cons = base_constraints(s);
        cons.push_back({p_B, -1.0 / r1, 0.0});
        const double log_z1 = std::log(s.h1.kappa) - std::log(q * relay.gamma_bar_1) / r1;
        const double v = correction(s, extra, cons, log_z1, cfg) / (2.0 * std::tgamma(p_B));
        return std::clamp(i1 - std::min(v, 0.0), 0.0, 0.5);
    }

    double avg_ber(const ModulationScheme& mod, const LinkOneParams& p1, const LinkTwoParams& p2,
                   const RelayConfig& relay, const ContourConfig& cfg)
    {
        double acc = 0.0;
        for (int m = 1; m <= mod.terms(); ++m)
            acc += ber_term(mod.p(), mod.q(m), p1, p2, relay, cfg);
        return mod.delta() * acc;
    }

    double capacity(const LinkOneParams& p1, const LinkTwoParams& p2, const RelayConfig& relay, double c0,
                    const ContourConfig& cfg)
    {
        if (!(c0 > 0.0))
            throw DomainError("capacity needs c0 > 0");
        const Setup s = make_setup(p1, p2, relay);
        const double cap1 = hop_capacity(s.h1, relay.gamma_bar_1, c0, cfg);
        const double r1 = s.r1;
        // Int c0 gamma^(-t/r1) / (1 + c0 gamma) d gamma = c0^(t/r1) Gamma(t/r1) Gamma(1 - t/r1)
        auto extra = [r1](cplx t) { return log_gamma_unbranched(t / r1) + log_gamma_unbranched(1.0 - t / r1); };
        auto cons = base_constraints(s);
        cons.push_back({0.0, 1.0, 0.0});
        cons.push_back({1.0, -1.0 / r1, 0.0});
        const double log_z1 = std::log(s.h1.kappa) - std::log(c0 * relay.gamma_bar_1) / r1;
        const double v = correction(s, extra, cons, log_z1, cfg);
        return std::clamp(cap1 + std::min(v, 0.0), 0.0, cap1);
    }

    double moment(double s_order, const LinkOneParams& p1, const LinkTwoParams& p2, const RelayConfig& relay,
                  const ContourConfig& cfg)
    {
        const Setup s = make_setup(p1, p2, relay);
        if (!(s_order > 0.0))
            throw DomainError("moment order must be positive");
        const double m1 = hop_moment(s.h1, s_order, relay.gamma_bar_1);
        // E[(1 + C/g2)^-s] = 1 + (1/Gamma(s)) Int Gamma(w) Gamma(s - w) M2(r2 w) z2^-w dw,  -1 < Re w < 0
        const HopModel& h2 = s.h2;
        const double r2 = s.r2;
        auto kernel = [&h2, r2, s_order](cplx w) {
            return log_gamma_unbranched(w) + log_gamma_unbranched(s_order - w) + h2.log_mellin(r2 * w);
        };
        const Strip strip{std::max(-1.0, h2.edge / r2), 0.0};
        const double v = mellin_barnes(kernel, strip, s.log_z2, cfg);
        return m1 * (1.0 + v / std::tgamma(s_order));
    }

    double df_outage_reference(double gamma_th, const LinkOneParams& p1, const LinkTwoParams& p2, double gamma_bar_1,
                               double gamma_bar_2, const ContourConfig& cfg)
    {
        const double f1 = hop1::snr_cdf(gamma_th, p1, gamma_bar_1, cfg);
        const double f2 = hop2::snr_cdf(gamma_th, p2, gamma_bar_2, cfg);
        return 1.0 - (1.0 - f1) * (1.0 - f2);
    }

    double calibrate_c(const std::vector<CalibrationPoint>& points, const LinkOneParams& p1, const LinkTwoParams& p2,
                       double c_lo, double c_hi, const ContourConfig& cfg)
    {
        if (points.empty())
            throw DomainError("calibration needs at least one reference point");
        if (!(c_lo > 0.0) || !(c_hi > c_lo))
            throw DomainError("calibration range must satisfy 0 < c_lo < c_hi");
        for (const auto& pt : points)
            if (!(pt.op > 0.0) || !(pt.gamma_bar > 0.0) || !(pt.gamma_th > 0.0))
                throw DomainError("calibration points need positive SNRs and outage probabilities");
        auto loss = [&](double log_c) {
            double acc = 0.0;
            for (const auto& pt : points)
            {
                const double f = cdf(pt.gamma_th, p1, p2, RelayConfig::locked(pt.gamma_bar, std::exp(log_c)), cfg);
                const double d = std::log(std::max(f, 1e-300)) - std::log(pt.op);
                acc += d * d;
            }
            return acc;
        };
        // coarse scan, then golden section around the best cell
        const int cells = 16;
        const double a = std::log(c_lo), b = std::log(c_hi), h = (b - a) / cells;
        int best = 0;
        double best_v = inf;
        for (int i = 0; i <= cells; ++i)
        {
            const double v = loss(a + i * h);
            if (v < best_v)
            {
                best_v = v;
                best = i;
            }
        }
        double lo = a + std::max(best - 1, 0) * h, hi = a + std::min(best + 1, cells) * h;
        const double g = 0.5 * (std::sqrt(5.0) - 1.0);
        double x1 = hi - g * (hi - lo), x2 = lo + g * (hi - lo);
        double f1 = loss(x1), f2 = loss(x2);
        for (int it = 0; it < 20; ++it)
        {
            if (f1 < f2)
            {
                hi = x2;
                x2 = x1;
                f2 = f1;
                x1 = hi - g * (hi - lo);
                f1 = loss(x1);
            }
            else
            {
                lo = x1;
                x1 = x2;
                f1 = f2;
                x2 = lo + g * (hi - lo);
                f2 = loss(x2);
            }
        }
        return std::exp(0.5 * (lo + hi));
    }
} // namespace fsolink::e2e
