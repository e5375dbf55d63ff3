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

#include "fsolink/specfun.hpp"

#include <array>
#include <cmath>
#include <string>

#include <boost/math/special_functions/bessel.hpp>
#include <boost/math/special_functions/gamma.hpp>

namespace fsolink
{
    namespace
    {
        constexpr double half_log_2pi = 0.91893853320467274178;

        // B_{2k} / (2k (2k-1)), k = 1..8
        constexpr std::array<double, 8> stirling_coef = {
            1.0 / 12.0,          -1.0 / 360.0,     1.0 / 1260.0,        -1.0 / 1680.0,
            1.0 / 1188.0,        -691.0 / 360360.0, 1.0 / 156.0,        -3617.0 / 122400.0};

        bool stirling_ready(cplx z)
        {
            return z.real() >= 8.0 || (z.real() > 0.0 && std::abs(z) >= 12.0);
        }

        cplx stirling(cplx z)
        {
            const cplx inv = 1.0 / z;
            const cplx inv2 = inv * inv;
            cplx series = 0.0;
            for (std::size_t k = stirling_coef.size(); k-- > 0;)
                series = series * inv2 + stirling_coef[k];
            return (z - 0.5) * std::log(z) - z + half_log_2pi + series * inv;
        }

        void check_pole(cplx z)
        {
            if (z.real() <= 0.5 && std::abs(z.imag()) < 1e-12)
            {
                const double nearest = std::round(z.real());
                if (nearest <= 0.0 && std::abs(z.real() - nearest) < 1e-12)
                    throw PoleError("log-gamma evaluated at a pole: z = " + std::to_string(z.real()));
            }
        }
    } // namespace

    cplx complex_log_gamma(cplx z)
    {
        check_pole(z);
        // Shift right with principal logarithms; their sum keeps the principal branch.
        cplx shift_sum = 0.0;
        while (!stirling_ready(z))
        {
            shift_sum += std::log(z);
            z += 1.0;
        }
        return stirling(z) - shift_sum;
    }

    cplx log_gamma_unbranched(cplx z)
    {
        cplx prod = 1.0;
        cplx log_acc = 0.0;
        int count = 0;
        while (!stirling_ready(z))
        {
            prod *= z;
            z += 1.0;
            if (++count == 8)
            {
                log_acc += std::log(prod);
                prod = 1.0;
                count = 0;
            }
        }
        if (count > 0)
            log_acc += std::log(prod);
        return stirling(z) - log_acc;
    }

    double bessel_k(double order, double x)
    {
        if (!(x > 0.0))
            throw DomainError("bessel_k requires x > 0");
        return boost::math::cyl_bessel_k(std::abs(order), x);
    }

    double bessel_i0(double x) { return boost::math::cyl_bessel_i(0.0, std::abs(x)); }

    double erf(double x) { return std::erf(x); }
    double erfc(double x) { return std::erfc(x); }

    double upper_incomplete_gamma(double p, double x)
    {
        if (!(p > 0.0) || !(x >= 0.0))
            throw DomainError("upper_incomplete_gamma requires p > 0 and x >= 0");
        if (x == 0.0)
            return std::tgamma(p);
        return boost::math::tgamma(p, x);
    }
} // namespace fsolink
