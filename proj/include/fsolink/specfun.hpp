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

#ifndef FSOLINK_SPECFUN_HPP
#define FSOLINK_SPECFUN_HPP

#include <cmath>
#include <complex>
#include <functional>
#include <limits>
#include <vector>

#include "fsolink/errors.hpp"

namespace fsolink
{
    using cplx = std::complex<double>;

    inline constexpr double inf = std::numeric_limits<double>::infinity();

    // ---- scalar special functions -------------------------------------------------

    // Principal branch of ln Gamma(z). Throws PoleError near non-positive integers.
    cplx complex_log_gamma(cplx z);

    // ln Gamma(z) up to an unspecified multiple of 2*pi*i. Cheaper; used inside
    // contour integrands where only exp() of the value matters.
    cplx log_gamma_unbranched(cplx z);

    double bessel_k(double order, double x);
    double bessel_i0(double x);
    double erf(double x);
    double erfc(double x);
    double upper_incomplete_gamma(double p, double x);

    // ---- Mellin-Barnes contour quadrature -----------------------------------------
    //
    // Every integral here is  (1/2 pi i) Int_{c - i inf}^{c + i inf} Theta(s) z^{-s} ds
    // along a vertical line.

    enum class OffsetMode
    {
        automatic, // saddle of |Theta(c) z^-c| inside the admissible strip
        midpoint,  // midpoint of the strip (needs both edges finite)
        explicit_value
    };

    struct ContourConfig
    {
        OffsetMode offset_mode = OffsetMode::automatic;
        double offset = 0.0;      // used with explicit_value (second axis: offset2)
        double offset2 = 0.0;
        double half_height = 40.0; // upper bound on |Im s| before truncation
        int nodes = 64;            // minimum number of quadrature nodes per axis
        double rel_tol = 1e-10;
        double abs_tol = 0.0; // also accept |change| below this (for values subtracted from 1)
        int max_refinements = 6;
        bool check_symmetry = false; // also integrate Im s < 0 and report the imaginary residue
    };

    struct ContourReport
    {
        double offset = 0.0;
        double offset2 = 0.0;
        double value = 0.0;
        double imag_residue = 0.0; // |Im| of the complex estimate before discarding
        double abs_integral = 0.0; // integral of |integrand|, the cancellation scale
        double truncation = 0.0;
        double truncation2 = 0.0;
        int refinements = 0;
        long evaluations = 0;
        bool converged = false;
    };

    // A gamma factor Gamma(shift + scale * s) in the standard Fox-H parameter lists.
    struct GammaFactor
    {
        double shift = 0.0;
        double scale = 1.0;
    };

    // H^{m,n}_{p,q}[ z | (a_i, A_i)_{1..p} ; (b_j, B_j)_{1..q} ] with
    //   Theta(s) = prod_{j<=m} G(b_j + B_j s) prod_{i<=n} G(1 - a_i - A_i s)
    //            / ( prod_{j>m} G(1 - b_j - B_j s) prod_{i>n} G(a_i + A_i s) ).
    struct FoxHSpec
    {
        int m = 0;
        int n = 0;
        std::vector<GammaFactor> upper; // (a_i, A_i), size p
        std::vector<GammaFactor> lower; // (b_j, B_j), size q

        void validate() const;
        std::size_t p() const { return upper.size(); }
        std::size_t q() const { return lower.size(); }
    };

    // Open interval of admissible Re(s).
    struct Strip
    {
        double lo = -inf;
        double hi = inf;
        bool empty() const { return !(lo < hi); }
    };

    Strip separating_strip(const FoxHSpec& spec);

    using LogKernel = std::function<cplx(cplx)>;

    // Generic engine. log_theta returns ln Theta(s) (any branch).
    double mellin_barnes(const LogKernel& log_theta, Strip strip, double log_z,
                         const ContourConfig& cfg = {}, ContourReport* report = nullptr);

    double meijer_g(const FoxHSpec& spec, double z, const ContourConfig& cfg = {},
                    ContourReport* report = nullptr);
    double fox_h(const FoxHSpec& spec, double z, const ContourConfig& cfg = {},
                 ContourReport* report = nullptr);

    // ---- two-variable contours -----------------------------------------------------

    // Gamma(shift + coef_t t + coef_w w)
    struct LinearGamma
    {
        double shift = 0.0;
        double coef_t = 0.0;
        double coef_w = 0.0;
        bool numerator = true;
    };

    // Admissible offsets satisfy shift + coef_t c_t + coef_w c_w > 0 for every constraint.
    struct LinearConstraint
    {
        double shift = 0.0;
        double coef_t = 0.0;
        double coef_w = 0.0;
    };

    // Two-variable Fox-H in the same sign convention as the univariate one:
    //   (1/(2 pi i))^2 Int Int  J(t, w) Theta_1(t) Theta_2(w) z1^{-t} z2^{-w} dt dw
    // where J is the product of the joint factors and Theta_1, Theta_2 are the univariate
    // kernels of kernel1 (variable t) and kernel2 (variable w).
    struct BivariateFoxHSpec
    {
        std::vector<LinearGamma> joint;
        FoxHSpec kernel1;
        FoxHSpec kernel2;
    };

    // Separable kernel for the generic two-variable engine. The per-axis parts are
    // evaluated once per node and cached; joint is evaluated per node pair.
    struct Kernel2D
    {
        std::function<cplx(cplx)> log_t;
        std::function<cplx(cplx)> log_w;
        std::function<cplx(cplx, cplx)> log_joint;
        // True when |joint(t, w)| <= |joint(Re t, Re w)| on the contour (a product of
        // numerator gammas); lets the engine skip node pairs that cannot contribute.
        bool joint_peaks_on_real_axis = false;
    };

    double mellin_barnes_2d(const Kernel2D& kernel, const std::vector<LinearConstraint>& constraints,
                            double log_z1, double log_z2, const ContourConfig& cfg = {},
                            ContourReport* report = nullptr);

    double fox_h_bivariate(const BivariateFoxHSpec& spec, double z1, double z2,
                           const ContourConfig& cfg = {}, ContourReport* report = nullptr);

    // ---- small helpers shared by the statistics modules ---------------------------

    inline double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }
    inline double linear_to_db(double x) { return 10.0 * std::log10(x); }

} // namespace fsolink

#endif
