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

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>

#include "doctest.h"
#include "fsolink/link_ogs_hap.hpp"
#include "fsolink/montecarlo.hpp"

using namespace fsolink;

namespace
{
    using GK = boost::math::quadrature::gauss_kronrod<double, 61>;

    // Integral over (0, inf) after u = ln h.
    template <class F>
    double log_axis_integral(F f, double lo = -40.0, double hi = 8.0)
    {
        auto g = [&](double u) { return f(std::exp(u)) * std::exp(u); };
        return GK::integrate(g, lo, hi, 12, 1e-12);
    }

    double gamma_unit_mean_pdf(double x, double a)
    {
        return std::exp(a * std::log(a) + (a - 1.0) * std::log(x) - a * x - std::lgamma(a));
    }
} // namespace

TEST_CASE("Gamma-Gamma density")
{
    const GGParams gg{3.08, 1.05};
    CHECK(std::abs(log_axis_integral([&](double h) { return hop1::ha_pdf(h, gg); }) - 1.0) < 1e-8);
    CHECK(std::abs(log_axis_integral([&](double h) { return h * hop1::ha_pdf(h, gg); }) - 1.0) < 1e-8);
    CHECK_THROWS_AS(hop1::ha_pdf(0.0, gg), DomainError);

    // product of two unit-mean Gamma variates: f(h) = Int f_a(x) f_b(h/x) / x dx
    const GGParams g2{9.5, 19.5};
    const double h = 1.0;
    const double conv = log_axis_integral(
        [&](double x) { return gamma_unit_mean_pdf(x, g2.alpha) * gamma_unit_mean_pdf(h / x, g2.beta) / x; }, -8.0,
        4.0);
    CHECK(hop1::ha_pdf(h, g2) == doctest::Approx(conv).epsilon(1e-9));
}

TEST_CASE("pointing-error density")
{
    const double e2 = 2.53, A0 = 0.2;
    auto lin = [&](double lo, double hi, auto f) { return GK::integrate(f, lo, hi, 12, 1e-13); };
    CHECK(std::abs(lin(0.0, A0, [&](double h) { return hop1::hg1_pdf(h, e2, A0); }) - 1.0) < 1e-10);
    CHECK(lin(0.0, A0, [&](double h) { return h * hop1::hg1_pdf(h, e2, A0); }) ==
          doctest::Approx(A0 * e2 / (e2 + 1.0)).epsilon(1e-10));
    CHECK(hop1::hg1_pdf(0.05, 1.0, A0) == doctest::Approx(1.0 / A0).epsilon(1e-14));
    CHECK(hop1::hg1_pdf(0.17, 1.0, A0) == doctest::Approx(1.0 / A0).epsilon(1e-14));
    CHECK_THROWS_AS(hop1::hg1_pdf(0.25, e2, A0), DomainError);
    CHECK_THROWS_AS(hop1::hg1_pdf(-0.1, e2, A0), DomainError);
}

TEST_CASE("first-hop SNR CDF")
{
    const Bundle b = assemble(SystemConfig{});
    const double gb = db_to_linear(35.0);
    CHECK(hop1::snr_cdf(0.0, b.one, gb) == 0.0);
    CHECK(hop1::snr_cdf(1e-14, b.one, gb) < 1e-9);
    CHECK(hop1::snr_cdf(gb * 1e3, b.one, gb) > 1.0 - 1e-6);

    const double gt = db_to_linear(2.0);
    const double f = hop1::snr_cdf(gt, b.one, gb);
    CHECK(hop1::snr_cdf_meijer(gt, b.one, gb) == doctest::Approx(f).epsilon(1e-8));

    // monotone in gamma on a 50-point grid, non-increasing in the average SNR
    double prev = 0.0;
    for (int i = 0; i < 50; ++i)
    {
        const double g = db_to_linear(-20.0 + 80.0 * i / 49.0);
        const double v = hop1::snr_cdf(g, b.one, gb);
        CHECK(v >= prev);
        prev = v;
    }
    prev = 1.0;
    for (double db = 0.0; db <= 60.0; db += 5.0)
    {
        const double v = hop1::snr_cdf(gt, b.one, db_to_linear(db));
        CHECK(v <= prev);
        prev = v;
    }

    const auto est = mc::stream_estimates(mc::hop1_sampler(b.one, gb), 10'000'000, 11, {mc::op_statistic(gt)});
    CHECK(std::abs(est[0].mean - f) < 3.0 * est[0].std_error);
    CHECK(f >= est[0].ci_low);
    CHECK(f <= est[0].ci_high);
}

TEST_CASE("first-hop SNR density")
{
    const Bundle b = assemble(SystemConfig{});
    const double gb = db_to_linear(35.0);
    const double total = log_axis_integral([&](double g) { return hop1::snr_pdf(g, b.one, gb); }, -25.0, 14.0);
    CHECK(std::abs(total - 1.0) < 1e-6);

    for (double db = -10.0; db <= 40.0; db += 5.0)
    {
        const double g = db_to_linear(db);
        CHECK(hop1::snr_pdf(g, b.one, gb) >= 0.0);
        const double h = 1e-4 * g;
        const double fd = (hop1::snr_cdf(g + h, b.one, gb) - hop1::snr_cdf(g - h, b.one, gb)) / (2.0 * h);
        CHECK(hop1::snr_pdf(g, b.one, gb) == doctest::Approx(fd).epsilon(1e-5));
    }

    // histogram of simulated SNRs against the density in log-spaced bins
    const auto samples = mc::simulate_hop1(b.one, gb, 1'000'000, 5);
    std::vector<double> edges;
    for (double db = -10.0; db <= 24.0; db += 2.0)
        edges.push_back(db_to_linear(db));
    auto prob = [&](double lo, double hi) { return hop1::snr_cdf(hi, b.one, gb) - hop1::snr_cdf(lo, b.one, gb); };
    CHECK(mc::chi_square_test(samples, edges, prob) > 0.01);
}
