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

#ifndef FSOLINK_ATMOSPHERE_HPP
#define FSOLINK_ATMOSPHERE_HPP

#include <limits>

#include "fsolink/errors.hpp"

namespace fsolink
{
    // Hufnagel-Valley Cn^2 profile.
    struct TurbulenceProfile
    {
        double A = 1.7e-13;     // Cn^2 at ground level [m^-2/3]
        double wind_rms = 30.0; // [m/s]
        // Set to false to drop the two fixed HV terms (with A = 0 this gives a turbulence-free path).
        bool fixed_terms = true;
    };

    // Gaussian beam launch state. Curvature is either collimated (F0 = inf) or a finite radius.
    struct BeamState
    {
        double waist0 = 1e-3;     // [m]
        double wavelength = 1550e-9;
        double distance = 1.0;    // [m]
        bool collimated = true;
        double curvature0 = std::numeric_limits<double>::infinity(); // F0 [m], ignored when collimated

        double wave_number() const;
        double Lambda0() const;
        double Theta0() const;
        double Lambda() const;
        double Theta() const;
        double Theta_bar() const { return 1.0 - Theta(); }
    };

    enum class LinkKind
    {
        uplink,
        downlink
    };

    struct RytovResult
    {
        double sigma_b2 = 0.0;
        LinkKind link_kind = LinkKind::uplink;
    };

    struct LogVariances
    {
        double sigma_lnX2 = 0.0;
        double sigma_lnY2 = 0.0;
    };

    struct GGParams
    {
        double alpha = 1.0;
        double beta = 1.0;
    };

    double cn2(double altitude, const TurbulenceProfile& profile);

    // quad_tol is the relative tolerance of the adaptive Gauss-Kronrod quadrature.
    RytovResult rytov_uplink(double hO, double hH, double zenith, const BeamState& beam,
                             const TurbulenceProfile& profile, double quad_tol = 1e-8);

    RytovResult rytov_downlink_two_segment(double hH, double hI, double hU, double zenith2, double zenith3,
                                           double wavelength, const TurbulenceProfile& profile,
                                           double quad_tol = 1e-8);

    // theta is the receiver curvature parameter, only used for uplinks.
    LogVariances log_variances(const RytovResult& rytov, double theta = 0.0);

    GGParams gg_params(double sigma_lnX2, double sigma_lnY2);

    // Beer-Lambert transmittance. SI inputs; the empirical law itself is in km and nm.
    double attenuation_coefficient_per_km(double visibility_m, double wavelength_m, double q_V);
    double beer_lambert(double visibility_m, double wavelength_m, double distance_m, double q_V = 1.3);

    double beam_radius(double distance, double waist0, double wavelength);

    // Waist w such that beam_radius(d_HI, w) = cos(theta_r) / cos(theta_i) * beam_radius(d_HI, waist0),
    // taken on the same side of the far-field optimum as waist0.
    double solve_reflected_waist(double theta_i, double theta_r, double d_HI, double waist0, double wavelength);
} // namespace fsolink

#endif
