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

#ifndef FSOLINK_LINK_HAP_USER_HPP
#define FSOLINK_LINK_HAP_USER_HPP

#include <vector>

#include "fsolink/hop.hpp"
#include "fsolink/scenario.hpp"

// Second hop (HAP via OIRS to user): Gamma-Gamma turbulence and Hoyt geometric/misalignment loss.
namespace fsolink::hop2
{
    enum class GmlForm
    {
        series, // truncated, normalized series with N_k terms (the closed-form model)
        exact   // Bessel-I0 density; used as a reference
    };

    double gml_pdf_exact(double h, const LinkTwoParams& p);
    // N_k < 0 uses p.N_k (and p.norm_N).
    double gml_pdf_approx(double h, const LinkTwoParams& p, int N_k = -1);

    // Magnitudes |w_k| N of the series terms, for checking decay.
    std::vector<double> series_terms(const LinkTwoParams& p);

    // Series vs exact density on `points` uniform support points h_i = A02 i / points:
    // mean squared difference and max |approx - exact| / max |exact|.
    struct GmlApproxError
    {
        double l2 = 0.0;
        double sup_relative = 0.0;
    };
    GmlApproxError gml_approx_error(const LinkTwoParams& p, int N_k, int points = 50);

    // Composite gain density h_a * h_g * h_p as a sum of Meijer-G terms.
    double composite_pdf_h2(double h, const LinkTwoParams& p, const ContourConfig& cfg = {});

    HopModel model(const LinkTwoParams& p, GmlForm form = GmlForm::series);

    double snr_pdf(double gamma, const LinkTwoParams& p, double gamma_bar, const ContourConfig& cfg = {});
    double snr_cdf(double gamma, const LinkTwoParams& p, double gamma_bar, const ContourConfig& cfg = {});
    // 1 - sum_k of Meijer-G terms, the per-term form of the CDF.
    double snr_cdf_series(double gamma, const LinkTwoParams& p, double gamma_bar, const ContourConfig& cfg = {});

    double avg_ber(const ModulationScheme& mod, const LinkTwoParams& p, double gamma_bar,
                   const ContourConfig& cfg = {});
    // I(p_B, q) through 1/2 minus the per-term Fox-H sum.
    double ber_term_series(double p_B, double q, const LinkTwoParams& p, double gamma_bar,
                           const ContourConfig& cfg = {});

    double capacity(const LinkTwoParams& p, double gamma_bar, double c0, const ContourConfig& cfg = {});
    double moment(double s, const LinkTwoParams& p, double gamma_bar);
} // namespace fsolink::hop2

#endif
