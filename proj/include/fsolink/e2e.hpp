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

#ifndef FSOLINK_E2E_HPP
#define FSOLINK_E2E_HPP

#include <string>
#include <vector>

#include "fsolink/hop.hpp"
#include "fsolink/scenario.hpp"

// End-to-end statistics of the fixed-gain amplify-and-forward link, gamma = g1 g2 / (g2 + C).
namespace fsolink::e2e
{
    double combine_snr(double g1, double g2, double C);

    struct RelayConfig
    {
        double C = 1.0;
        double gamma_bar_1 = 1.0;
        double gamma_bar_2 = 1.0;
        bool lock_equal = false;

        static RelayConfig locked(double gamma_bar, double C);
        void validate() const;
    };

    // Exact statistics. The CDF is evaluated as F_hop1 minus a double Mellin-Barnes
    // correction, which keeps full relative accuracy deep in the lower tail.
    double cdf(double gamma, const LinkOneParams& p1, const LinkTwoParams& p2, const RelayConfig& relay,
               const ContourConfig& cfg = {});
    double pdf(double gamma, const LinkOneParams& p1, const LinkTwoParams& p2, const RelayConfig& relay,
               const ContourConfig& cfg = {});
    // 1 minus the per-k sum of bivariate Fox-H terms. Slower and limited by cancellation
    // when the CDF is small; used to cross-check cdf().
    double cdf_series(double gamma, const LinkOneParams& p1, const LinkTwoParams& p2, const RelayConfig& relay,
                      const ContourConfig& cfg = {});

    struct AsymptoticTerm
    {
        std::string label;
        double exponent = 0.0; // power of gamma (CDF) or of 1/q (BER)
        double value = 0.0;
    };

    struct Asymptotic
    {
        double value = 0.0;
        std::vector<AsymptoticTerm> terms;
        std::vector<std::string> notes; // perturbations applied to near-degenerate exponents
    };

    // High-SNR expansions. With allow_perturbation false a near-degenerate parameter set
    // throws DegenerateExponentError instead of being nudged.
    Asymptotic cdf_asymptotic(double gamma, const LinkOneParams& p1, const LinkTwoParams& p2,
                              const RelayConfig& relay, bool allow_perturbation = true);
    Asymptotic ber_term_asymptotic(double p_B, double q, const LinkOneParams& p1, const LinkTwoParams& p2,
                                   const RelayConfig& relay, bool allow_perturbation = true);
    Asymptotic avg_ber_asymptotic(const ModulationScheme& mod, const LinkOneParams& p1, const LinkTwoParams& p2,
                                  const RelayConfig& relay, bool allow_perturbation = true);

    struct DiversityReport
    {
        std::vector<std::pair<std::string, double>> candidates;
        double order = 0.0;
        std::string label;
    };

    DiversityReport diversity_order(const LinkOneParams& p1, const LinkTwoParams& p2);

    double ber_term(double p_B, double q, const LinkOneParams& p1, const LinkTwoParams& p2,
                    const RelayConfig& relay, const ContourConfig& cfg = {});
    double avg_ber(const ModulationScheme& mod, const LinkOneParams& p1, const LinkTwoParams& p2,
                   const RelayConfig& relay, const ContourConfig& cfg = {});
    // E[ln(1 + c0 gamma)] in nats
    double capacity(const LinkOneParams& p1, const LinkTwoParams& p2, const RelayConfig& relay, double c0,
                    const ContourConfig& cfg = {});
    double moment(double s, const LinkOneParams& p1, const LinkTwoParams& p2, const RelayConfig& relay,
                  const ContourConfig& cfg = {});

    // Decode-and-forward outage: both hops must clear the threshold.
    double df_outage_reference(double gamma_th, const LinkOneParams& p1, const LinkTwoParams& p2,
                               double gamma_bar_1, double gamma_bar_2, const ContourConfig& cfg = {});

    struct CalibrationPoint
    {
        double gamma_bar = 0.0; // linear, applied to both hops
        double gamma_th = 0.0;  // linear
        double op = 0.0;        // reference outage probability, > 0
    };

    // Relay gain minimizing the squared log-OP error against the reference points.
    // The search runs over [c_lo, c_hi] in log scale.
    double calibrate_c(const std::vector<CalibrationPoint>& points, const LinkOneParams& p1,
                       const LinkTwoParams& p2, double c_lo = 1e-4, double c_hi = 1e4,
                       const ContourConfig& cfg = {});
} // namespace fsolink::e2e

#endif
