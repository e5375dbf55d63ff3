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

#include "fsolink/scenario.hpp"

#include <cmath>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>

#include "fsolink/errors.hpp"
#include "fsolink/specfun.hpp"

namespace fsolink
{
    namespace
    {
        constexpr double pi = 3.14159265358979323846;
        constexpr double deg = pi / 180.0;

        std::string trim(const std::string& s)
        {
            const auto b = s.find_first_not_of(" \t\r");
            if (b == std::string::npos)
                return {};
            const auto e = s.find_last_not_of(" \t\r");
            return s.substr(b, e - b + 1);
        }

        double parse_number(const std::string& key, const std::string& text)
        {
            try
            {
                std::size_t used = 0;
                const double v = std::stod(text, &used);
                if (used != text.size())
                    throw std::invalid_argument(text);
                return v;
            }
            catch (const std::exception&)
            {
                throw ConfigError("config key '" + key + "': cannot parse '" + text + "' as a number");
            }
        }

        int parse_int(const std::string& key, const std::string& text)
        {
            const double v = parse_number(key, text);
            if (v != std::floor(v))
                throw ConfigError("config key '" + key + "': expected an integer, got '" + text + "'");
            return static_cast<int>(v);
        }
    } // namespace

    void SystemConfig::validate() const
    {
        auto positive = [](double v, const char* name) {
            if (!(v > 0.0) || !std::isfinite(v))
                throw ConfigError(std::string("config key '") + name + "' must be positive and finite");
        };
        if (!(H_H > H_I && H_I > H_U && H_U >= 0.0))
            throw ConfigError("config: need H_H > H_I > H_U >= 0");
        if (!(H_H > H_O && H_O >= 0.0))
            throw ConfigError("config: need H_H > H_O >= 0");
        positive(r_a, "r_a");
        positive(a_l, "a_l");
        positive(omega_b, "omega_b");
        positive(sigma_S0, "sigma_S0");
        positive(omega_01, "omega_01");
        positive(lambda, "lambda");
        positive(V, "V");
        positive(w_lens, "w_lens");
        positive(C, "C");
        if (!(wind >= 0.0))
            throw ConfigError("config key 'wind' must be non-negative");
        if (!(A >= 0.0))
            throw ConfigError("config key 'A' must be non-negative");
        if (!collimated && !(F0 != 0.0 && std::isfinite(F0)))
            throw ConfigError("config key 'F0' must be 'inf' or a finite non-zero radius");
        if (!(zeta_1 >= 0.0 && zeta_1 < pi / 2.0))
            throw ConfigError("config key 'zeta_1' must lie in [0, 90) degrees");
        for (auto [v, name] : {std::pair{theta_i, "theta_i"}, std::pair{theta_r, "theta_r"}})
            if (!(v >= 0.0 && v < pi / 2.0))
                throw ConfigError(std::string("config key '") + name + "' must lie in [0, 90) degrees");
        if (std::abs(phi_r - pi) > 1e-12)
            throw ConfigError("config key 'phi_r': only 180 degrees is supported");
        if (std::abs(theta_rl) > 1e-12)
            throw ConfigError("config key 'theta_rl': only 0 degrees is supported");
        if (!(zeta_p > 0.0 && zeta_p <= 1.0))
            throw ConfigError("config key 'zeta_p' must lie in (0, 1]");
        if (!(kappa >= 0.0))
            throw ConfigError("config key 'kappa' must be non-negative");
        if (!(sigma_s >= 0.0 && sigma_r >= 0.0 && sigma_l >= 0.0))
            throw ConfigError("config: jitter standard deviations must be non-negative");
        if (!(sigma_s + sigma_l > 0.0))
            throw ConfigError("config: sigma_s and sigma_l cannot both be zero");
        if (N_k < 0 || N_k > 64)
            throw ConfigError("config key 'N_k' must lie in [0, 64]");
        if ((r1 != 1 && r1 != 2) || (r2 != 1 && r2 != 2))
            throw ConfigError("config keys 'r1', 'r2' must be 1 (heterodyne) or 2 (IM/DD)");
        if (c0 && !(*c0 > 0.0))
            throw ConfigError("config key 'c0' must be positive");
        if (!(q_V >= 0.0) || !std::isfinite(q_V))
            throw ConfigError("config key 'q_V' must be non-negative");
        if (!(omega_02 >= 0.0))
            throw ConfigError("config key 'omega_02' must be non-negative");
    }

    double SystemConfig::capacity_constant() const
    {
        if (c0)
            return *c0;
        return r2 == 1 ? 1.0 : std::exp(1.0) / (2.0 * pi);
    }

    SystemConfig parse_config(std::istream& in, const std::string& origin)
    {
        SystemConfig cfg;
        using Setter = std::function<void(const std::string&, const std::string&)>;
        std::map<std::string, Setter> setters;
        auto real = [&](const char* name, double SystemConfig::*field, double scale = 1.0) {
            setters[name] = [&cfg, field, scale](const std::string& k, const std::string& v) {
                cfg.*field = parse_number(k, v) * scale;
            };
        };
        auto integer = [&](const char* name, int SystemConfig::*field) {
            setters[name] = [&cfg, field](const std::string& k, const std::string& v) { cfg.*field = parse_int(k, v); };
        };
        real("H_O", &SystemConfig::H_O);
        real("H_H", &SystemConfig::H_H);
        real("H_I", &SystemConfig::H_I);
        real("H_U", &SystemConfig::H_U);
        real("Y_H", &SystemConfig::Y_H);
        real("Y_I", &SystemConfig::Y_I);
        real("Y_U", &SystemConfig::Y_U);
        real("theta_i", &SystemConfig::theta_i, deg);
        real("theta_r", &SystemConfig::theta_r, deg);
        real("phi_r", &SystemConfig::phi_r, deg);
        real("theta_rl", &SystemConfig::theta_rl, deg);
        real("r_a", &SystemConfig::r_a);
        real("a_l", &SystemConfig::a_l);
        real("omega_b", &SystemConfig::omega_b);
        real("sigma_S0", &SystemConfig::sigma_S0);
        real("omega_01", &SystemConfig::omega_01);
        real("lambda", &SystemConfig::lambda);
        real("V", &SystemConfig::V);
        real("wind", &SystemConfig::wind);
        real("A", &SystemConfig::A);
        real("zeta_1", &SystemConfig::zeta_1, deg);
        real("zeta_p", &SystemConfig::zeta_p);
        real("kappa", &SystemConfig::kappa);
        real("sigma_s", &SystemConfig::sigma_s);
        real("sigma_r", &SystemConfig::sigma_r);
        real("sigma_l", &SystemConfig::sigma_l);
        real("gamma_th_db", &SystemConfig::gamma_th_db);
        real("C", &SystemConfig::C);
        real("q_V", &SystemConfig::q_V);
        real("w_lens", &SystemConfig::w_lens);
        real("omega_02", &SystemConfig::omega_02);
        integer("N_k", &SystemConfig::N_k);
        integer("r1", &SystemConfig::r1);
        integer("r2", &SystemConfig::r2);
        setters["F0"] = [&cfg](const std::string& k, const std::string& v) {
            if (v == "inf" || v == "infinity")
            {
                cfg.collimated = true;
                cfg.F0 = std::numeric_limits<double>::infinity();
            }
            else
            {
                cfg.collimated = false;
                cfg.F0 = parse_number(k, v);
            }
        };
        setters["c0"] = [&cfg](const std::string& k, const std::string& v) { cfg.c0 = parse_number(k, v); };

        std::string line;
        int lineno = 0;
        while (std::getline(in, line))
        {
            ++lineno;
            const auto hash = line.find('#');
            if (hash != std::string::npos)
                line.erase(hash);
            line = trim(line);
            if (line.empty())
                continue;
            const auto eq = line.find('=');
            if (eq == std::string::npos)
                throw ConfigError(origin + ":" + std::to_string(lineno) + ": expected 'key = value'");
            const std::string key = trim(line.substr(0, eq));
            const std::string value = trim(line.substr(eq + 1));
            const auto it = setters.find(key);
            if (it == setters.end())
                throw ConfigError(origin + ":" + std::to_string(lineno) + ": unknown config key '" + key + "'");
            it->second(key, value);
        }
        cfg.validate();
        return cfg;
    }

    SystemConfig load_config(const std::string& path)
    {
        std::ifstream in(path);
        if (!in)
            throw ConfigError("cannot open config file '" + path + "'");
        return parse_config(in, path);
    }

    Geometry distances(const SystemConfig& cfg)
    {
        if (!(cfg.zeta_1 >= 0.0 && cfg.zeta_1 < pi / 2.0))
            throw GeometryError("zenith angle zeta_1 must lie in [0, 90) degrees");
        Geometry g;
        const double rise = cfg.H_H - cfg.H_O;
        g.X_H = rise * std::tan(cfg.zeta_1);
        g.d_OH = rise / std::cos(cfg.zeta_1);
        // OIRS and user share the HAP's x coordinate; only y offsets and heights differ.
        const double dy2 = cfg.Y_I - cfg.Y_H, dh2 = cfg.H_H - cfg.H_I;
        const double dy3 = cfg.Y_U - cfg.Y_I, dh3 = cfg.H_I - cfg.H_U;
        if (!(dh2 > 0.0) || !(dh3 > 0.0))
            throw GeometryError("HAP, OIRS and user heights must strictly decrease");
        g.d_HI = std::hypot(dy2, dh2);
        g.d_IU = std::hypot(dy3, dh3);
        g.zeta_2 = std::atan2(std::abs(dy2), dh2);
        g.zeta_3 = std::atan2(std::abs(dy3), dh3);
        return g;
    }

    PointingParams pointing_params(const SystemConfig& cfg)
    {
        PointingParams p;
        p.v_e = cfg.r_a * std::sqrt(pi / 2.0) / cfg.omega_b;
        const double e = std::erf(p.v_e);
        p.A01 = e * e;
        // equivalent beam width: w_eq^2 = w_b^2 sqrt(pi A01) / (2 v_e exp(-v_e^2))
        const double w_eq2 = cfg.omega_b * cfg.omega_b * std::sqrt(pi * p.A01) /
                             (2.0 * p.v_e * std::exp(-p.v_e * p.v_e));
        p.eta_s2 = w_eq2 / (4.0 * cfg.sigma_S0 * cfg.sigma_S0);
        return p;
    }

    GmlParams gml_params(const SystemConfig& cfg, const Geometry& geo)
    {
        GmlParams g;
        const double ci = std::cos(cfg.theta_i), cr = std::cos(cfg.theta_r);
        const double sir = std::sin(cfg.theta_i + cfg.theta_r);
        const double ss = cfg.sigma_s * cfg.sigma_s, sr = cfg.sigma_r * cfg.sigma_r, sl = cfg.sigma_l * cfg.sigma_l;
        g.sigma_u1_sq = cr * cr / (ci * ci) * ss + sir * sir / (ci * ci) * sr + sl;
        g.sigma_u2_sq = ss + sl;
        g.q_g = std::sqrt(std::min(g.sigma_u1_sq, g.sigma_u2_sq) / std::max(g.sigma_u1_sq, g.sigma_u2_sq));
        g.Omega = g.sigma_u1_sq + g.sigma_u2_sq;

        double w_direct, w_reflected;
        if (cfg.omega_02 > 0.0)
        {
            double w_hat;
            try
            {
                w_hat = solve_reflected_waist(cfg.theta_i, cfg.theta_r, geo.d_HI, cfg.omega_02, cfg.lambda);
            }
            catch (const NoSolutionError& e)
            {
                throw GeometryError(e.what());
            }
            const double d = geo.d_HI + geo.d_IU;
            w_direct = beam_radius(d, cfg.omega_02, cfg.lambda);
            w_reflected = beam_radius(d, w_hat, cfg.lambda);
        }
        else
        {
            w_direct = cfg.w_lens;
            w_reflected = cr / ci * cfg.w_lens;
        }
        g.nu1 = cfg.a_l / w_reflected * std::sqrt(pi / 2.0);
        g.nu2 = cfg.a_l / w_direct * std::sqrt(pi / 2.0);
        const double e1 = std::erf(g.nu1), e2 = std::erf(g.nu2);
        g.A02 = e1 * e2;
        g.t_g = pi * cfg.a_l * cfg.a_l / (4.0 * g.nu1 * g.nu2) *
                std::sqrt(pi * e1 * e2 / (g.nu1 * g.nu2 * std::exp(-(g.nu1 * g.nu1 + g.nu2 * g.nu2))));
        g.varpi = (1.0 + g.q_g * g.q_g) * g.t_g / (4.0 * g.q_g * g.Omega);
        return g;
    }

    double series_weight(int k, double rho)
    {
        if (k == 0)
            return 1.0;
        return std::exp(std::lgamma(1.0 + 2.0 * k) - 2.0 * std::lgamma(k + 1.0)) * std::pow(rho, 2 * k);
    }

    double normalization_constant(double q_g, double varpi, int N_k)
    {
        if (!(q_g > 0.0 && q_g <= 1.0) || !(varpi > 0.0) || N_k < 0)
            throw DomainError("normalization_constant: need q_g in (0, 1], varpi > 0, N_k >= 0");
        const double q2 = q_g * q_g;
        const double lead = 2.0 * q_g / (1.0 + q2);
        // varpi cancels in the ratio of the series and exponent coefficients
        const double x = (1.0 - q2) * varpi / (2.0 * (1.0 + q2) * varpi);
        double sum = 0.0, prev = 0.0;
        for (int k = 0; k <= N_k; ++k)
        {
            const double term = lead * series_weight(k, x);
            if (k > 0 && prev > 0.0 && term > prev)
                throw SeriesDivergenceError("normalization series terms stopped shrinking");
            sum += term;
            prev = term;
        }
        return 1.0 / sum;
    }

    Bundle assemble(const SystemConfig& cfg)
    {
        cfg.validate();
        Bundle b;
        b.geometry = distances(cfg);
        const Geometry& geo = b.geometry;
        TurbulenceProfile profile{cfg.A, cfg.wind, true};

        LinkOneParams& one = b.one;
        const PointingParams pp = pointing_params(cfg);
        one.eta_s2 = pp.eta_s2;
        one.A01 = pp.A01;
        one.h_p1 = beer_lambert(cfg.V, cfg.lambda, geo.d_OH, cfg.q_V);
        BeamState beam;
        beam.waist0 = cfg.omega_01;
        beam.wavelength = cfg.lambda;
        beam.distance = geo.d_OH;
        beam.collimated = cfg.collimated;
        beam.curvature0 = cfg.F0;
        const RytovResult up = rytov_uplink(cfg.H_O, cfg.H_H, cfg.zeta_1, beam, profile);
        const LogVariances lv1 = log_variances(up, beam.Theta());
        one.gg = gg_params(lv1.sigma_lnX2, lv1.sigma_lnY2);
        one.r1 = cfg.r1;
        one.d_OH = geo.d_OH;
        one.sigma_b2 = up.sigma_b2;

        LinkTwoParams& two = b.two;
        const GmlParams g = gml_params(cfg, geo);
        two.varpi = g.varpi;
        two.q_g = g.q_g;
        two.A02 = g.A02;
        two.t_g = g.t_g;
        two.Omega = g.Omega;
        two.sigma_u1_sq = g.sigma_u1_sq;
        two.sigma_u2_sq = g.sigma_u2_sq;
        two.nu1 = g.nu1;
        two.nu2 = g.nu2;
        two.h_p2 = cfg.zeta_p * std::pow(10.0, -cfg.kappa * (geo.d_HI + geo.d_IU) / 10.0);
        const RytovResult down =
            rytov_downlink_two_segment(cfg.H_H, cfg.H_I, cfg.H_U, geo.zeta_2, geo.zeta_3, cfg.lambda, profile);
        const LogVariances lv2 = log_variances(down);
        two.gg = gg_params(lv2.sigma_lnX2, lv2.sigma_lnY2);
        two.r2 = cfg.r2;
        two.N_k = cfg.N_k;
        two.norm_N = normalization_constant(g.q_g, g.varpi, cfg.N_k);
        two.d_HI = geo.d_HI;
        two.d_IU = geo.d_IU;
        two.sigma_b2 = down.sigma_b2;
        return b;
    }
} // namespace fsolink
