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

#ifndef FSOLINK_HOP_HPP
#define FSOLINK_HOP_HPP

#include <functional>

#include "fsolink/specfun.hpp"

namespace fsolink
{
    // A single hop described through the Mellin transform of its normalized gain
    // X = kappa * h, where h is the composite channel gain and gamma = gamma_bar * h^r.
    // All per-hop metrics reduce to one vertical contour over a kernel built from log_mellin.
    struct HopModel
    {
        std::function<cplx(cplx)> log_mellin; // ln E[X^s]
        double edge = 0.0;                    // E[X^s] is finite for Re s > edge (edge < 0)
        double kappa = 1.0;
        int r = 1;

        // E[gamma^s] = c0(gamma_bar)^s * E[X^(r s)]
        double snr_scale(double gamma_bar) const;
        // value of X at which gamma equals the given SNR
        double x_of(double gamma, double gamma_bar) const;
    };

    // Clamp probabilities that overshoot [0, 1] by less than 1e-9; larger excursions throw.
    double checked_probability(double v, const char* what);

    double hop_cdf(const HopModel& hop, double gamma, double gamma_bar, const ContourConfig& cfg = {});
    double hop_pdf(const HopModel& hop, double gamma, double gamma_bar, const ContourConfig& cfg = {});
    // I(p, q) = E[Gamma(p, q gamma)] / (2 Gamma(p))
    double hop_ber_term(const HopModel& hop, double p, double q, double gamma_bar, const ContourConfig& cfg = {});
    // E[ln(1 + c0 gamma)]
    double hop_capacity(const HopModel& hop, double gamma_bar, double c0, const ContourConfig& cfg = {});
    double hop_moment(const HopModel& hop, double s, double gamma_bar);

    // Modulation parameters delta_B, p_B, q_Bm, N_B for the unified BER expression.
    struct ModulationScheme
    {
        enum class Kind
        {
            OOK,
            MQAM,
            MPSK
        };
        Kind kind = Kind::OOK;
        int M = 2;

        static ModulationScheme ook() { return {Kind::OOK, 2}; }
        static ModulationScheme qam(int M);
        static ModulationScheme psk(int M);
        // "ook", "4-qam", "16qam", "8-psk", ...
        static ModulationScheme parse(const std::string& text);

        double delta() const;
        double p() const { return 0.5; }
        int terms() const;
        double q(int m) const; // m = 1..terms()
        int detection_r() const { return kind == Kind::OOK ? 2 : 1; }
        std::string name() const;
    };

    double hop_avg_ber(const HopModel& hop, const ModulationScheme& mod, double gamma_bar,
                       const ContourConfig& cfg = {});
} // namespace fsolink

#endif
