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

#include "fsolink/atmosphere.hpp"

#include <algorithm>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>
#include <complex>
#include <vector>

#include "fsolink/errors.hpp"

namespace fsolink
{
    namespace
    {
        constexpr double pi = 3.14159265358979323846;

        // Integrate f over [a, b], split at the profile's scale heights so each piece is smooth.
        template <class F>
        double integrate_profile(F f, double a, double b, double tol)
        {
            std::vector<double> cuts = {a};
            for (double c : {1000.0, 5000.0, 10000.0})
                if (c > a && c < b)
                    cuts.push_back(c);
            cuts.push_back(b);
            double acc = 0.0;
            for (std::size_t i = 0; i + 1 < cuts.size(); ++i)
                acc += boost::math::quadrature::gauss_kronrod<double, 31>::integrate(f, cuts[i], cuts[i + 1], 15, tol);
            return acc;
        }
    } // namespace

    double BeamState::wave_number() const { return 2.0 * pi / wavelength; }
    double BeamState::Lambda0() const { return 2.0 * distance / (wave_number() * waist0 * waist0); }
    double BeamState::Theta0() const { return collimated ? 1.0 : 1.0 - distance / curvature0; }

    double BeamState::Lambda() const
    {
        const double l0 = Lambda0(), t0 = Theta0();
        return l0 / (l0 * l0 + t0 * t0);
    }

    double BeamState::Theta() const
    {
        const double l0 = Lambda0(), t0 = Theta0();
        return t0 / (t0 * t0 + l0 * l0);
    }

    double cn2(double altitude, const TurbulenceProfile& profile)
    {
        if (altitude < 0.0)
            throw DomainError("cn2: negative altitude");
        const double l = altitude;
        double v = profile.A * std::exp(-l / 1000.0);
        if (profile.fixed_terms)
        {
            const double w = profile.wind_rms / 27.0;
            v += 0.00594 * w * w * std::pow(1e-5 * l, 10) * std::exp(-l / 1000.0);
            v += 2.7e-16 * std::exp(-l / 1500.0);
        }
        return v;
    }

    RytovResult rytov_uplink(double hO, double hH, double zenith, const BeamState& beam,
                             const TurbulenceProfile& profile, double quad_tol)
    {
        if (!(hH > hO) || hO < 0.0)
            throw DomainError("rytov_uplink: need hH > hO >= 0");
        if (!(zenith >= 0.0 && zenith < pi / 2.0))
            throw DomainError("rytov_uplink: zenith outside [0, pi/2)");
        const double lam = beam.Lambda();
        const double tbar = beam.Theta_bar();
        const double lam56 = std::pow(lam, 5.0 / 6.0);
        auto integrand = [&](double l) {
            const double xi = (l - hH) / (hO - hH);
            const std::complex<double> inner(lam * xi * xi, xi * (1.0 - tbar * xi));
            const double bracket = std::pow(inner, 5.0 / 6.0).real() - lam56 * std::pow(xi, 5.0 / 3.0);
            return cn2(l, profile) * bracket;
        };
        const double integral = integrate_profile(integrand, hO, hH, quad_tol);
        const double k = beam.wave_number();
        const double s2 = 8.7 * std::pow(k, 7.0 / 6.0) * std::pow(hH - hO, 5.0 / 6.0) *
                          std::pow(1.0 / std::cos(zenith), 11.0 / 6.0) * integral;
        return {std::max(s2, 0.0), LinkKind::uplink};
    }

    RytovResult rytov_downlink_two_segment(double hH, double hI, double hU, double zenith2, double zenith3,
                                           double wavelength, const TurbulenceProfile& profile, double quad_tol)
    {
        if (!(hH > hI) || hI < hU || hU < 0.0)
            throw DomainError("rytov_downlink_two_segment: need hH > hI >= hU >= 0");
        for (double z : {zenith2, zenith3})
            if (!(z >= 0.0 && z < pi / 2.0))
                throw DomainError("rytov_downlink_two_segment: zenith outside [0, pi/2)");
        const double k = 2.0 * pi / wavelength;
        auto segment = [&](double lo, double hi, double zen) {
            if (!(hi > lo))
                return 0.0;
            const double dh = hi - lo;
            auto f = [&](double l) { return cn2(l, profile) * std::pow((l - lo) / dh, 5.0 / 6.0); };
            return 2.25 * std::pow(k, 7.0 / 6.0) * std::pow(dh, 5.0 / 6.0) *
                   std::pow(1.0 / std::cos(zen), 11.0 / 6.0) * integrate_profile(f, lo, hi, quad_tol);
        };
        return {segment(hI, hH, zenith2) + segment(hU, hI, zenith3), LinkKind::downlink};
    }

    LogVariances log_variances(const RytovResult& rytov, double theta)
    {
        const double s = rytov.sigma_b2;
        if (s < 0.0)
            throw DomainError("log_variances: negative Rytov variance");
        // sigma_B^(12/5) from the variance sigma_B^2
        const double s125 = std::pow(s, 6.0 / 5.0);
        const double large_coef = rytov.link_kind == LinkKind::uplink ? 0.56 * (1.0 + theta) : 1.11;
        return {0.49 * s / std::pow(1.0 + large_coef * s125, 7.0 / 6.0),
                0.51 * s / std::pow(1.0 + 0.69 * s125, 5.0 / 6.0)};
    }

    GGParams gg_params(double sigma_lnX2, double sigma_lnY2)
    {
        if (!(sigma_lnX2 >= 1e-12) || !(sigma_lnY2 >= 1e-12))
            throw DomainError("gg_params: log variances must be positive (alpha, beta would be infinite)");
        return {1.0 / std::expm1(sigma_lnX2), 1.0 / std::expm1(sigma_lnY2)};
    }

    double attenuation_coefficient_per_km(double visibility_m, double wavelength_m, double q_V)
    {
        if (!(visibility_m > 0.0))
            throw DomainError("beer_lambert: visibility must be positive");
        if (!(wavelength_m > 0.0))
            throw DomainError("beer_lambert: wavelength must be positive");
        return 3.912 / (visibility_m / 1000.0) * std::pow(wavelength_m * 1e9 / 550.0, -q_V);
    }

    double beer_lambert(double visibility_m, double wavelength_m, double distance_m, double q_V)
    {
        if (distance_m < 0.0)
            throw DomainError("beer_lambert: negative distance");
        return std::exp(-attenuation_coefficient_per_km(visibility_m, wavelength_m, q_V) * distance_m / 1000.0);
    }

    double beam_radius(double distance, double waist0, double wavelength)
    {
        if (!(waist0 > 0.0) || !(wavelength > 0.0))
            throw DomainError("beam_radius: waist and wavelength must be positive");
        const double r = distance * wavelength / (pi * waist0 * waist0);
        return waist0 * std::sqrt(1.0 + r * r);
    }

    double solve_reflected_waist(double theta_i, double theta_r, double d_HI, double waist0, double wavelength)
    {
        for (double a : {theta_i, theta_r})
            if (!(a >= 0.0 && a < pi / 2.0))
                throw DomainError("solve_reflected_waist: angles must lie in [0, pi/2)");
        if (!(d_HI > 0.0))
            throw DomainError("solve_reflected_waist: distance must be positive");
        const double target = std::cos(theta_r) / std::cos(theta_i) * beam_radius(d_HI, waist0, wavelength);
        // w(d, w0) is minimal at w0 = sqrt(d lambda / pi), where it equals sqrt(2) times that waist.
        const double w_opt = std::sqrt(d_HI * wavelength / pi);
        const double r_min = std::sqrt(2.0) * w_opt;
        if (target < r_min * (1.0 - 1e-14))
            throw NoSolutionError("solve_reflected_waist: target radius is below the smallest radius reachable at d_HI");
        double lo, hi;
        const bool far_side = waist0 >= w_opt;
        if (far_side)
        {
            lo = w_opt;
            hi = std::max(target, w_opt) * 2.0;
        }
        else
        {
            lo = w_opt * 1e-12;
            hi = w_opt;
        }
        auto g = [&](double w) { return beam_radius(d_HI, w, wavelength) - target; };
        for (int it = 0; it < 200 && (hi - lo) > 1e-15 * hi; ++it)
        {
            const double mid = 0.5 * (lo + hi);
            const bool above = g(mid) > 0.0;
            // radius grows with w on the far side and shrinks with w on the near side
            if (above == far_side)
                hi = mid;
            else
                lo = mid;
        }
        return 0.5 * (lo + hi);
    }
} // namespace fsolink
