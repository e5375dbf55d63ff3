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

#include "fsolink/link_hap_user.hpp"

#include <algorithm>
#include <cmath>

namespace fsolink::hop2
{
    namespace
    {
        std::vector<double> weights(const LinkTwoParams& p)
        {
            std::vector<double> w(p.N_k + 1);
            for (int k = 0; k <= p.N_k; ++k)
                w[k] = series_weight(k, p.rho());
            return w;
        }

        double log_gamma_pair(const LinkTwoParams& p) { return std::lgamma(p.gg.alpha) + std::lgamma(p.gg.beta); }

        // Meijer-G spec shared by the density and CDF terms: [{c+1}_{2k+1}; alpha, beta, {c}_{2k+1}].
        FoxHSpec series_spec(const LinkTwoParams& p, int k, bool cdf)
        {
            const double c = p.exponent();
            FoxHSpec g;
            if (cdf)
            {
                g.upper.push_back({1.0, 1.0});
                g.lower.push_back({0.0, 1.0});
            }
            g.lower.push_back({p.gg.alpha, 1.0});
            g.lower.push_back({p.gg.beta, 1.0});
            for (int j = 0; j < 2 * k + 1; ++j)
            {
                g.upper.push_back({c + 1.0, 1.0});
                g.lower.push_back({c, 1.0});
            }
            g.m = static_cast<int>(g.lower.size());
            g.n = 0;
            return g;
        }
    } // namespace

    double gml_pdf_exact(double h, const LinkTwoParams& p)
    {
        if (!(h > 0.0 && h <= p.A02))
            throw DomainError("gml_pdf_exact: h outside (0, A02]");
        const double L = std::log(h / p.A02);
        return p.varpi / p.A02 * std::exp((p.exponent() - 1.0) * L) * bessel_i0(-2.0 * p.rho() * L);
    }

    double gml_pdf_approx(double h, const LinkTwoParams& p, int N_k)
    {
        if (!(h > 0.0 && h <= p.A02))
            throw DomainError("gml_pdf_approx: h outside (0, A02]");
        double norm = p.norm_N;
        if (N_k < 0)
            N_k = p.N_k;
        else if (N_k != p.N_k)
            norm = normalization_constant(p.q_g, p.varpi, N_k);
        const double L = std::log(h / p.A02);
        const double y = p.rho() * L;
        double sum = 0.0, term = 1.0;
        for (int k = 0; k <= N_k; ++k)
        {
            if (k > 0)
                term *= y * y / (static_cast<double>(k) * k);
            sum += term;
        }
        return p.varpi * norm / p.A02 * std::exp((p.exponent() - 1.0) * L) * sum;
    }

    std::vector<double> series_terms(const LinkTwoParams& p)
    {
        std::vector<double> w = weights(p);
        const double c = p.exponent();
        for (std::size_t k = 0; k < w.size(); ++k)
            w[k] *= p.varpi * p.norm_N * std::pow(c, -(2.0 * k + 1.0));
        return w;
    }

    GmlApproxError gml_approx_error(const LinkTwoParams& p, int N_k, int points)
    {
        if (N_k < 0 || points < 1)
            throw DomainError("gml_approx_error: need N_k >= 0 and at least one point");
        LinkTwoParams q = p;
        q.N_k = N_k;
        q.norm_N = normalization_constant(q.q_g, q.varpi, N_k);
        double sq = 0.0, sup_diff = 0.0, sup_exact = 0.0;
        for (int i = 1; i <= points; ++i)
        {
            const double h = p.A02 * i / points;
            const double e = gml_pdf_exact(h, p);
            const double d = gml_pdf_approx(h, q) - e;
            sq += d * d;
            sup_diff = std::max(sup_diff, std::abs(d));
            sup_exact = std::max(sup_exact, std::abs(e));
        }
        return {sq / points, sup_diff / sup_exact};
    }

    double composite_pdf_h2(double h, const LinkTwoParams& p, const ContourConfig& cfg)
    {
        if (!(h > 0.0))
            throw DomainError("composite_pdf_h2: h must be positive");
        const std::vector<double> w = weights(p);
        const double x = p.kappa() * h;
        double acc = 0.0;
        for (int k = 0; k <= p.N_k; ++k)
        {
            if (w[k] == 0.0)
                continue;
            acc += w[k] * meijer_g(series_spec(p, k, false), x, cfg);
        }
        return p.varpi * p.norm_N / (h * std::exp(log_gamma_pair(p))) * acc;
    }

    HopModel model(const LinkTwoParams& p, GmlForm form)
    {
        const double a = p.gg.alpha, b = p.gg.beta, c = p.exponent();
        const double base = -log_gamma_pair(p);
        HopModel m;
        m.kappa = p.kappa();
        m.r = p.r2;
        if (form == GmlForm::exact)
        {
            // E[(h_g / A02)^s] = varpi / sqrt((c + s)^2 - 4 rho^2)
            const double two_rho = 2.0 * p.rho();
            const double lv = std::log(p.varpi);
            m.log_mellin = [a, b, c, two_rho, base, lv](cplx s) {
                return log_gamma_unbranched(a + s) + log_gamma_unbranched(b + s) + base + lv -
                       0.5 * (std::log(c + s - two_rho) + std::log(c + s + two_rho));
            };
            m.edge = -std::min({a, b, c - two_rho});
            return m;
        }
        // E[(h_g / A02)^s] = varpi N sum_k w_k (c + s)^-(2k+1): all series terms share one contour
        const std::vector<double> w = weights(p);
        const double lv = std::log(p.varpi * p.norm_N);
        m.log_mellin = [a, b, c, w, base, lv](cplx s) {
            const cplx u = 1.0 / (c + s);
            const cplx u2 = u * u;
            cplx sum = 0.0, pw = u;
            for (double wk : w)
            {
                sum += wk * pw;
                pw *= u2;
            }
            return log_gamma_unbranched(a + s) + log_gamma_unbranched(b + s) + base + lv + std::log(sum);
        };
        m.edge = -std::min({a, b, c});
        return m;
    }

    double snr_pdf(double gamma, const LinkTwoParams& p, double gamma_bar, const ContourConfig& cfg)
    {
        return hop_pdf(model(p), gamma, gamma_bar, cfg);
    }

    double snr_cdf(double gamma, const LinkTwoParams& p, double gamma_bar, const ContourConfig& cfg)
    {
        return hop_cdf(model(p), gamma, gamma_bar, cfg);
    }

    double snr_cdf_series(double gamma, const LinkTwoParams& p, double gamma_bar, const ContourConfig& cfg)
    {
        if (gamma == 0.0)
            return 0.0;
        const std::vector<double> w = weights(p);
        const double x = p.kappa() * std::pow(gamma / gamma_bar, 1.0 / p.r2);
        double acc = 0.0;
        for (int k = 0; k <= p.N_k; ++k)
            if (w[k] != 0.0)
                acc += w[k] * meijer_g(series_spec(p, k, true), x, cfg);
        return 1.0 - p.varpi * p.norm_N / std::exp(log_gamma_pair(p)) * acc;
    }

    double avg_ber(const ModulationScheme& mod, const LinkTwoParams& p, double gamma_bar, const ContourConfig& cfg)
    {
        return hop_avg_ber(model(p), mod, gamma_bar, cfg);
    }

    double ber_term_series(double p_B, double q, const LinkTwoParams& p, double gamma_bar, const ContourConfig& cfg)
    {
        const std::vector<double> w = weights(p);
        const double r = p.r2, c = p.exponent();
        const double z = std::pow(p.kappa(), r) / (gamma_bar * q);
        double acc = 0.0;
        for (int k = 0; k <= p.N_k; ++k)
        {
            if (w[k] == 0.0)
                continue;
            FoxHSpec h;
            h.m = 2 * k + 4;
            h.n = 1;
            h.upper = {{1.0 - p_B, 1.0}, {1.0, r}};
            h.lower = {{0.0, r}, {p.gg.alpha, r}, {p.gg.beta, r}};
            for (int j = 0; j < 2 * k + 1; ++j)
            {
                h.upper.push_back({c + 1.0, r});
                h.lower.push_back({c, r});
            }
            acc += w[k] * fox_h(h, z, cfg);
        }
        return 0.5 - p.varpi * p.norm_N * r / (2.0 * std::tgamma(p_B) * std::exp(log_gamma_pair(p))) * acc;
    }

    double capacity(const LinkTwoParams& p, double gamma_bar, double c0, const ContourConfig& cfg)
    {
        return hop_capacity(model(p), gamma_bar, c0, cfg);
    }

    double moment(double s, const LinkTwoParams& p, double gamma_bar)
    {
        const double r = p.r2, c = p.exponent();
        if (!(s * r + std::min({p.gg.alpha, p.gg.beta, c}) > 0.0))
            throw DomainError("moment order makes a gamma argument non-positive");
        const std::vector<double> w = weights(p);
        double sum = 0.0;
        for (int k = 0; k <= p.N_k; ++k)
            sum += w[k] * std::pow(s * r + c, -(1.0 + 2.0 * k));
        const double log_val = std::log(p.varpi * p.norm_N * sum) - log_gamma_pair(p) + std::lgamma(s * r + p.gg.alpha) +
                               std::lgamma(s * r + p.gg.beta) +
                               s * r * std::log(p.A02 * p.h_p2 * std::pow(gamma_bar, 1.0 / r) / (p.gg.alpha * p.gg.beta));
        return std::exp(log_val);
    }
} // namespace fsolink::hop2
