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

#ifndef FSOLINK_SCENARIO_HPP
#define FSOLINK_SCENARIO_HPP

#include <iosfwd>
#include <optional>
#include <string>

#include "fsolink/atmosphere.hpp"

namespace fsolink
{
    // Default system parameters. Lengths in meters, angles in radians.
    struct SystemConfig
    {
        double H_O = 10.0, H_H = 18000.0, H_I = 80.0, H_U = 1.0;
        double Y_H = 0.0, Y_I = -1000.0, Y_U = -1020.0;
        double theta_i = 3.14159265358979323846 / 6.0;
        double theta_r = 3.0 * 3.14159265358979323846 / 8.0;
        double phi_r = 3.14159265358979323846;
        double theta_rl = 0.0;
        double r_a = 5e-3;
        double a_l = 2.5e-3;
        double omega_b = 15e-3;
        double sigma_S0 = 5e-3;
        double omega_01 = 1e-3;
        double lambda = 1550e-9;
        double V = 10e3;
        double wind = 30.0;
        double A = 1.7e-13;
        bool collimated = true;
        double F0 = std::numeric_limits<double>::infinity();
        double zeta_1 = 60.0 * 3.14159265358979323846 / 180.0;
        double zeta_p = 1.0;
        double kappa = 0.43e-3;
        double sigma_s = 1.25e-3, sigma_r = 1.25e-3, sigma_l = 1.25e-3;
        int N_k = 5;
        double gamma_th_db = 2.0;
        int r1 = 1, r2 = 1;
        double C = 1.0;
        std::optional<double> c0; // unset: 1 for heterodyne, e/(2 pi) for IM/DD
        double q_V = 1.3;
        // Beam radius at the receiving lens for the direct path (4 a_l by default).
        double w_lens = 10e-3;
        // Initial HAP waist. When positive, lens-plane radii are propagated from it instead of w_lens.
        double omega_02 = 0.0;

        void validate() const;
        double capacity_constant() const;
    };

    // Read "key = value" lines over the defaults. Angles in degrees, everything else SI.
    SystemConfig load_config(const std::string& path);
    SystemConfig parse_config(std::istream& in, const std::string& origin = "<stream>");

    struct Geometry
    {
        double X_H = 0.0;
        double d_OH = 0.0, d_HI = 0.0, d_IU = 0.0;
        double zeta_2 = 0.0, zeta_3 = 0.0;
    };

    Geometry distances(const SystemConfig& cfg);

    struct PointingParams
    {
        double eta_s2 = 0.0;
        double A01 = 0.0;
        double v_e = 0.0;
    };

    PointingParams pointing_params(const SystemConfig& cfg);

    struct LinkOneParams
    {
        double eta_s2 = 1.0;
        double A01 = 1.0;
        double h_p1 = 1.0;
        GGParams gg;
        int r1 = 1;
        double d_OH = 0.0;
        double sigma_b2 = 0.0;

        // scale of the normalized gain in every Mellin kernel
        double kappa() const { return gg.alpha * gg.beta / (A01 * h_p1); }
    };

    struct GmlParams
    {
        double sigma_u1_sq = 0.0, sigma_u2_sq = 0.0;
        double q_g = 1.0;
        double Omega = 0.0;
        double t_g = 0.0;
        double nu1 = 0.0, nu2 = 0.0;
        double A02 = 1.0;
        double varpi = 1.0;
    };

    GmlParams gml_params(const SystemConfig& cfg, const Geometry& geo);

    struct LinkTwoParams
    {
        double varpi = 1.0;
        double q_g = 1.0;
        double A02 = 1.0;
        double t_g = 0.0;
        double Omega = 0.0;
        double sigma_u1_sq = 0.0, sigma_u2_sq = 0.0;
        double nu1 = 0.0, nu2 = 0.0;
        double h_p2 = 1.0;
        GGParams gg;
        int r2 = 1;
        int N_k = 5;
        double norm_N = 1.0;
        double d_HI = 0.0, d_IU = 0.0;
        double sigma_b2 = 0.0;

        double kappa() const { return gg.alpha * gg.beta / (A02 * h_p2); }
        // (1 + q^2) varpi / (2 q): the power-law exponent of the GML density
        double exponent() const { return (1.0 + q_g * q_g) * varpi / (2.0 * q_g); }
        // (1 - q^2) varpi / (4 q): the series ratio
        double rho() const { return (1.0 - q_g * q_g) * varpi / (4.0 * q_g); }
    };

    // Weight of term k in the truncated GML series: Gamma(1+2k) / (k!)^2 * rho^(2k).
    double series_weight(int k, double rho);

    double normalization_constant(double q_g, double varpi, int N_k);

    struct Bundle
    {
        LinkOneParams one;
        LinkTwoParams two;
        Geometry geometry;
    };

    Bundle assemble(const SystemConfig& cfg);
} // namespace fsolink

#endif
