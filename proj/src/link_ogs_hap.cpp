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

#include "fsolink/link_ogs_hap.hpp"

#include <algorithm>
#include <cmath>

namespace fsolink::hop1
{
    double ha_pdf(double h, const GGParams& gg)
    {
        if (!(h > 0.0))
            throw DomainError("ha_pdf: h must be positive");
        const double a = gg.alpha, b = gg.beta;
        const double k = bessel_k(a - b, 2.0 * std::sqrt(a * b * h));
        if (k == 0.0)
            return 0.0;
        const double log_pref = std::log(2.0) + 0.5 * (a + b) * std::log(a * b) + (0.5 * (a + b) - 1.0) * std::log(h) -
                                std::lgamma(a) - std::lgamma(b);
        return std::exp(log_pref + std::log(k));
    }

    double hg1_pdf(double h, double eta_s2, double A0)
    {
        if (!(h > 0.0 && h <= A0))
            throw DomainError("hg1_pdf: h outside (0, A0]");
        return eta_s2 / A0 * std::pow(h / A0, eta_s2 - 1.0);
    }

    HopModel model(const LinkOneParams& p)
    {
        const double a = p.gg.alpha, b = p.gg.beta, e = p.eta_s2;
        const double norm = std::log(e) - std::lgamma(a) - std::lgamma(b);
        HopModel m;
        m.log_mellin = [a, b, e, norm](cplx s) {
            return log_gamma_unbranched(a + s) + log_gamma_unbranched(b + s) + norm - std::log(e + s);
        };
        m.edge = -std::min({a, b, e});
        m.kappa = p.kappa();
        m.r = p.r1;
        return m;
    }

    double snr_cdf(double gamma, const LinkOneParams& p, double gamma_bar, const ContourConfig& cfg)
    {
        return hop_cdf(model(p), gamma, gamma_bar, cfg);
    }

    double snr_pdf(double gamma, const LinkOneParams& p, double gamma_bar, const ContourConfig& cfg)
    {
        return hop_pdf(model(p), gamma, gamma_bar, cfg);
    }

    double snr_cdf_meijer(double gamma, const LinkOneParams& p, double gamma_bar, const ContourConfig& cfg)
    {
        if (gamma == 0.0)
            return 0.0;
        const double e = p.eta_s2;
        FoxHSpec g;
        g.m = 4;
        g.n = 0;
        g.upper = {{1.0 + e, 1.0}, {1.0, 1.0}};
        g.lower = {{0.0, 1.0}, {e, 1.0}, {p.gg.alpha, 1.0}, {p.gg.beta, 1.0}};
        const double x = p.kappa() * std::pow(gamma / gamma_bar, 1.0 / p.r1);
        const double pref = std::exp(std::log(e) - std::lgamma(p.gg.alpha) - std::lgamma(p.gg.beta));
        return 1.0 - pref * meijer_g(g, x, cfg);
    }
} // namespace fsolink::hop1
