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

#include <cmath>

#include "doctest.h"
#include "fsolink/atmosphere.hpp"
#include "fsolink/scenario.hpp"

using namespace fsolink;

namespace
{
    constexpr double pi = 3.14159265358979323846;

    BeamState default_uplink_beam(double zenith)
    {
        BeamState b;
        b.waist0 = 1e-3;
        b.wavelength = 1550e-9;
        b.distance = (18000.0 - 10.0) / std::cos(zenith);
        return b;
    }
} // namespace

TEST_CASE("cn2 profile")
{
    TurbulenceProfile p;
    CHECK(cn2(0.0, p) == doctest::Approx(1.7027e-13).epsilon(1e-12));
    CHECK(cn2(1e6, p) < 1e-30);
    CHECK_THROWS_AS(cn2(-1.0, p), DomainError);

    // term by term at 1 km
    const double l = 1000.0;
    const double hand = 0.00594 * (30.0 / 27.0) * (30.0 / 27.0) * 1e-20 * std::exp(-1.0) +
                        2.7e-16 * std::exp(-l / 1500.0) + 1.7e-13 * std::exp(-l / 100.0);
    CHECK(cn2(l, p) == doctest::Approx(hand).epsilon(1e-12));
}

TEST_CASE("uplink Rytov variance")
{
    TurbulenceProfile calm;
    calm.A = 0.0;
    calm.fixed_terms = false;
    const double z = pi / 3.0;
    CHECK(rytov_uplink(10.0, 18000.0, z, default_uplink_beam(z), calm).sigma_b2 == 0.0);

    TurbulenceProfile p;
    const double v = rytov_uplink(10.0, 18000.0, z, default_uplink_beam(z), p).sigma_b2;
    const double fine = rytov_uplink(10.0, 18000.0, z, default_uplink_beam(z), p, 1e-11).sigma_b2;
    CHECK(v > 0.0);
    CHECK(std::abs(v - fine) < 1e-6 * fine);

    double prev = 0.0;
    for (int deg = 0; deg <= 70; deg += 5)
    {
        const double zz = deg * pi / 180.0;
        const double s = rytov_uplink(10.0, 18000.0, zz, default_uplink_beam(zz), p).sigma_b2;
        CHECK(s > prev);
        prev = s;
    }
    CHECK_THROWS_AS(rytov_uplink(10.0, 18000.0, pi / 2.0, default_uplink_beam(0.0), p), DomainError);
}

TEST_CASE("downlink two-segment Rytov variance")
{
    TurbulenceProfile calm;
    calm.A = 0.0;
    calm.fixed_terms = false;
    CHECK(rytov_downlink_two_segment(18000.0, 80.0, 1.0, 0.05, 0.3, 1550e-9, calm).sigma_b2 == 0.0);

    TurbulenceProfile p;
    const double v = rytov_downlink_two_segment(18000.0, 80.0, 1.0, 0.05, 0.3, 1550e-9, p).sigma_b2;
    const double fine = rytov_downlink_two_segment(18000.0, 80.0, 1.0, 0.05, 0.3, 1550e-9, p, 1e-11).sigma_b2;
    CHECK(v > 0.0);
    CHECK(std::abs(v - fine) < 1e-6 * fine);

    // the second segment shrinks to nothing as the user height approaches the IRS height
    const double first = rytov_downlink_two_segment(18000.0, 80.0, 80.0, 0.05, 0.3, 1550e-9, p).sigma_b2;
    const double near = rytov_downlink_two_segment(18000.0, 80.0, 80.0 - 1e-6, 0.05, 0.3, 1550e-9, p).sigma_b2;
    CHECK(std::abs(near - first) < 1e-9 * first);
    CHECK(first < v);
    CHECK_THROWS_AS(rytov_downlink_two_segment(80.0, 18000.0, 1.0, 0.05, 0.3, 1550e-9, p), DomainError);
}

TEST_CASE("log variances")
{
    const auto zero = log_variances({0.0, LinkKind::downlink});
    CHECK(zero.sigma_lnX2 == 0.0);
    CHECK(zero.sigma_lnY2 == 0.0);

    const auto down = log_variances({1.0, LinkKind::downlink});
    CHECK(down.sigma_lnX2 == doctest::Approx(0.49 / std::pow(2.11, 7.0 / 6.0)).epsilon(1e-12));
    CHECK(down.sigma_lnX2 == doctest::Approx(0.2046).epsilon(1e-3));
    CHECK(down.sigma_lnY2 == doctest::Approx(0.51 / std::pow(1.69, 5.0 / 6.0)).epsilon(1e-12));
    CHECK(down.sigma_lnY2 == doctest::Approx(0.3294).epsilon(1e-3));

    const auto up = log_variances({1.0, LinkKind::uplink}, 1.0);
    CHECK(up.sigma_lnX2 == doctest::Approx(0.49 / std::pow(2.12, 7.0 / 6.0)).epsilon(1e-12));
}

TEST_CASE("Gamma-Gamma parameters")
{
    const auto gg = gg_params(0.1, 0.05);
    CHECK(gg.alpha == doctest::Approx(9.50833).epsilon(1e-6));
    CHECK(gg.beta == doctest::Approx(19.50417).epsilon(1e-6));
    CHECK_THROWS_AS(gg_params(1e-13, 0.1), DomainError);
    CHECK_THROWS_AS(gg_params(0.1, 0.0), DomainError);
    CHECK_THROWS_AS(gg_params(log_variances({0.0, LinkKind::uplink}).sigma_lnX2, 0.1), DomainError);
    double prev = 1e300;
    for (double s = 0.01; s < 3.0; s *= 1.5)
    {
        const double a = gg_params(s, 0.1).alpha;
        CHECK(a < prev);
        prev = a;
    }
}

TEST_CASE("Beer-Lambert loss")
{
    CHECK(beer_lambert(10e3, 1550e-9, 0.0) == 1.0);
    CHECK(beer_lambert(10e3, 1550e-9, 1000.0, 1.6) == doctest::Approx(std::exp(-0.07454)).epsilon(1e-4));
    CHECK(beer_lambert(10e3, 1550e-9, 1000.0, 1.6) == doctest::Approx(0.92817).epsilon(1e-5));
    double prev = 1.0;
    for (double d = 100.0; d < 1e5; d *= 2.0)
    {
        const double h = beer_lambert(10e3, 1550e-9, d);
        CHECK(h < prev);
        prev = h;
    }
    CHECK_THROWS_AS(beer_lambert(0.0, 1550e-9, 10.0), DomainError);
}

TEST_CASE("Gaussian beam radius")
{
    const double w0 = 1e-3, lam = 1550e-9;
    CHECK(beam_radius(0.0, w0, lam) == w0);
    const double far = 1e7;
    CHECK(beam_radius(far, w0, lam) == doctest::Approx(far * lam / (pi * w0)).epsilon(1e-9));
    double prev = 0.0;
    for (double d = 1.0; d < 1e6; d *= 3.0)
    {
        const double w = beam_radius(d, w0, lam);
        CHECK(w > prev);
        prev = w;
    }
}

TEST_CASE("reflected beam waist")
{
    const double lam = 1550e-9;
    CHECK(solve_reflected_waist(0.4, 0.4, 1000.0, 5e-3, lam) == doctest::Approx(5e-3).epsilon(1e-10));

    // short link where the 22.5/30 degree radius contraction is attainable
    const double ti = pi / 6.0, tr = 3.0 * pi / 8.0, d = 5.0, w0 = 10e-3;
    const double w = solve_reflected_waist(ti, tr, d, w0, lam);
    const double target = std::cos(tr) / std::cos(ti) * beam_radius(d, w0, lam);
    CHECK(std::abs(beam_radius(d, w, lam) - target) < 1e-10 * target);

    // over the Table II HAP-IRS path the same contraction of a 10 mm footprint is out of reach:
    // the smallest radius any waist gives at that range is about 133 mm
    const double d_hi = distances(SystemConfig{}).d_HI;
    const double w_min = std::sqrt(2.0 * d_hi * lam / pi);
    CHECK(w_min > 0.13);
    CHECK_THROWS_AS(solve_reflected_waist(ti, tr, d_hi, std::sqrt(d_hi * lam / pi), lam), NoSolutionError);

    // a wide launch waist at full distance solves, with the forward residual at 1e-10
    const double wl = solve_reflected_waist(ti, tr, d_hi, 0.5, lam);
    const double tl = std::cos(tr) / std::cos(ti) * beam_radius(d_hi, 0.5, lam);
    CHECK(std::abs(beam_radius(d_hi, wl, lam) - tl) < 1e-10 * tl);
}
