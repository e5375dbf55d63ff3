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

#include "fsolink/hop.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <string>

namespace fsolink
{
    namespace
    {
        constexpr double pi = 3.14159265358979323846;

        bool is_power_of_two(int M) { return M > 0 && (M & (M - 1)) == 0; }
    } // namespace

    double HopModel::snr_scale(double gamma_bar) const { return gamma_bar * std::pow(kappa, -r); }

    double HopModel::x_of(double gamma, double gamma_bar) const { return kappa * std::pow(gamma / gamma_bar, 1.0 / r); }

    double checked_probability(double v, const char* what)
    {
        if (!std::isfinite(v) || v < -1e-9 || v > 1.0 + 1e-9)
            throw NumericalError(std::string(what) + ": value " + std::to_string(v) + " outside [0, 1]");
        return std::clamp(v, 0.0, 1.0);
    }

    double hop_cdf(const HopModel& hop, double gamma, double gamma_bar, const ContourConfig& cfg)
    {
        if (!(gamma_bar > 0.0))
            throw DomainError("average SNR must be positive");
        if (gamma < 0.0)
            throw DomainError("SNR must be non-negative");
        if (gamma == 0.0)
            return 0.0;
        if (std::isinf(gamma))
            return 1.0;
        // F_X(x) = (1/2 pi i) Int M(s) x^-s / (-s) ds,  edge < Re s < 0
        auto kernel = [&hop](cplx s) { return hop.log_mellin(s) - std::log(-s); };
        const double log_x = std::log(hop.x_of(gamma, gamma_bar));
        const double v = mellin_barnes(kernel, {hop.edge, 0.0}, log_x, cfg);
        if (v <= 0.5)
            return checked_probability(v, "hop CDF");
        // upper half: 1 - F_X(x) = (1/2 pi i) Int M(s) x^-s / s ds over Re s > 0, which keeps
        // the values next to 1 ordered
        auto tail = [&hop](cplx s) { return hop.log_mellin(s) - std::log(s); };
        ContourConfig tail_cfg = cfg;
        tail_cfg.abs_tol = std::max(cfg.abs_tol, 1e-3 * cfg.rel_tol);
        return checked_probability(1.0 - std::max(mellin_barnes(tail, {0.0, inf}, log_x, tail_cfg), 0.0), "hop CDF");
    }

    double hop_pdf(const HopModel& hop, double gamma, double gamma_bar, const ContourConfig& cfg)
    {
        if (!(gamma_bar > 0.0))
            throw DomainError("average SNR must be positive");
        if (!(gamma > 0.0))
            throw DomainError("SNR density needs gamma > 0");
        // x f_X(x) = (1/2 pi i) Int M(s) x^-s ds, and f_gamma = x f_X(x) / (r gamma)
        const double xf = mellin_barnes(hop.log_mellin, {hop.edge, inf}, std::log(hop.x_of(gamma, gamma_bar)), cfg);
        return std::max(xf, 0.0) / (hop.r * gamma);
    }

    double hop_ber_term(const HopModel& hop, double p, double q, double gamma_bar, const ContourConfig& cfg)
    {
        if (!(p > 0.0) || !(q > 0.0) || !(gamma_bar > 0.0))
            throw DomainError("BER term needs p, q, gamma_bar > 0");
        // Gamma(p, y) = (1/2 pi i) Int Gamma(p + u) y^-u / u du for Re u > 0, then E[gamma^-u] = c0^-u M(-r u)
        const double r = hop.r;
        auto kernel = [&hop, p, r](cplx u) {
            return log_gamma_unbranched(p + u) - std::log(u) + hop.log_mellin(-r * u);
        };
        const double v = mellin_barnes(kernel, {0.0, -hop.edge / r}, std::log(q * hop.snr_scale(gamma_bar)), cfg);
        return v / (2.0 * std::tgamma(p));
    }

    double hop_capacity(const HopModel& hop, double gamma_bar, double c0, const ContourConfig& cfg)
    {
        if (!(gamma_bar > 0.0) || !(c0 > 0.0))
            throw DomainError("capacity needs gamma_bar, c0 > 0");
        // ln(1 + y) = (1/2 pi i) Int Gamma(w) Gamma(1 - w) / w * y^-w dw over -1 < Re w < 0
        const double r = hop.r;
        auto kernel = [&hop, r](cplx w) {
            return log_gamma_unbranched(w) + log_gamma_unbranched(1.0 - w) - std::log(w) + hop.log_mellin(-r * w);
        };
        const double v = mellin_barnes(kernel, {-1.0, 0.0}, std::log(c0 * hop.snr_scale(gamma_bar)), cfg);
        return std::max(v, 0.0);
    }

    double hop_moment(const HopModel& hop, double s, double gamma_bar)
    {
        if (!(gamma_bar > 0.0))
            throw DomainError("average SNR must be positive");
        if (!(hop.r * s > hop.edge))
            throw DomainError("moment order makes a gamma argument non-positive");
        return std::exp(s * std::log(hop.snr_scale(gamma_bar)) + hop.log_mellin(cplx(hop.r * s, 0.0)).real());
    }

    // ---------------------------------------------------------------------------------

    ModulationScheme ModulationScheme::qam(int M)
    {
        if (!is_power_of_two(M) || M < 4)
            throw DomainError("M-QAM needs M a power of two, M >= 4");
        const int root = static_cast<int>(std::lround(std::sqrt(M)));
        if (root * root != M)
            throw DomainError("M-QAM is tabulated for square constellations only");
        return {Kind::MQAM, M};
    }

    ModulationScheme ModulationScheme::psk(int M)
    {
        if (!is_power_of_two(M) || M < 4)
            throw DomainError("M-PSK needs M a power of two, M >= 4");
        return {Kind::MPSK, M};
    }

    ModulationScheme ModulationScheme::parse(const std::string& text)
    {
        std::string t;
        for (char c : text)
            if (c != '-' && c != '_' && c != ' ')
                t.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
        if (t == "ook")
            return ook();
        auto number = [&](std::size_t suffix) {
            const std::string digits = t.substr(0, t.size() - suffix);
            if (digits.empty() || !std::all_of(digits.begin(), digits.end(), ::isdigit))
                throw DomainError("unknown modulation '" + text + "'");
            return std::stoi(digits);
        };
        if (t.size() > 3 && t.compare(t.size() - 3, 3, "qam") == 0)
            return qam(number(3));
        if (t.size() > 3 && t.compare(t.size() - 3, 3, "psk") == 0)
            return psk(number(3));
        throw DomainError("unknown modulation '" + text + "'");
    }

    double ModulationScheme::delta() const
    {
        const double lg = std::log2(static_cast<double>(M));
        switch (kind)
        {
        case Kind::OOK:
            return 1.0;
        case Kind::MQAM:
            return 4.0 / lg * (1.0 - 1.0 / std::sqrt(static_cast<double>(M)));
        case Kind::MPSK:
            return 2.0 / std::max(lg, 2.0);
        }
        return 1.0;
    }

    int ModulationScheme::terms() const
    {
        switch (kind)
        {
        case Kind::OOK:
            return 1;
        case Kind::MQAM:
            return static_cast<int>(std::lround(std::sqrt(static_cast<double>(M)))) / 2;
        case Kind::MPSK:
            return std::max(M / 4, 1);
        }
        return 1;
    }

    double ModulationScheme::q(int m) const
    {
        if (m < 1 || m > terms())
            throw DomainError("modulation term index out of range");
        const double lg = std::log2(static_cast<double>(M));
        const double odd = 2.0 * m - 1.0;
        switch (kind)
        {
        case Kind::OOK:
            return 0.5;
        case Kind::MQAM:
            return 3.0 * odd * odd / (2.0 * (M - 1.0)) * lg;
        case Kind::MPSK: {
            const double s = std::sin(odd * pi / M);
            return s * s * lg;
        }
        }
        return 0.5;
    }

    std::string ModulationScheme::name() const
    {
        switch (kind)
        {
        case Kind::OOK:
            return "OOK";
        case Kind::MQAM:
            return std::to_string(M) + "-QAM";
        case Kind::MPSK:
            return std::to_string(M) + "-PSK";
        }
        return "?";
    }

    double hop_avg_ber(const HopModel& hop, const ModulationScheme& mod, double gamma_bar, const ContourConfig& cfg)
    {
        double acc = 0.0;
        for (int m = 1; m <= mod.terms(); ++m)
            acc += hop_ber_term(hop, mod.p(), mod.q(m), gamma_bar, cfg);
        // Each I term lies in [0, 1/2]; the unified expression tends to delta * N_B / 2 at vanishing SNR,
        // which is 1/2 for OOK, 4-QAM and 4-PSK and larger for denser constellations.
        const double ber = mod.delta() * acc;
        const double ceiling = 0.5 * mod.delta() * mod.terms();
        if (ber < -1e-9 || ber > ceiling + 1e-6)
            throw NumericalError("average BER " + std::to_string(ber) + " outside its admissible range");
        return std::clamp(ber, 0.0, ceiling);
    }
} // namespace fsolink
