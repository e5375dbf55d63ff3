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
#include "fsolink/link_hap_user.hpp"
#include "fsolink/link_ogs_hap.hpp"
#include "fsolink/montecarlo.hpp"

using namespace fsolink;

namespace
{
    using GK = boost::math::quadrature::gauss_kronrod<double, 61>;
    constexpr double pi = 3.14159265358979323846;

    template <class F>
    double log_axis_integral(F f, double lo, double hi)
    {
        auto g = [&](double u) { return f(std::exp(u)) * std::exp(u); };
        return GK::integrate(g, lo, hi, 12, 1e-12);
    }

    SystemConfig symmetric_config()
    {
        SystemConfig c;
        c.theta_r = c.theta_i;
        c.sigma_r = 0.0;
        c.sigma_s = c.sigma_l = 1e-3;
        return c;
    }

} // namespace

TEST_CASE("exact GML density")
{
    const Bundle s = assemble(symmetric_config());
    REQUIRE(s.two.q_g == doctest::Approx(1.0).epsilon(1e-14));
    for (double f : {0.01, 0.3, 0.9})
    {
        const double h = f * s.two.A02;
        const double power = s.two.varpi / s.two.A02 * std::pow(f, s.two.varpi - 1.0);
        CHECK(hop2::gml_pdf_exact(h, s.two) == doctest::Approx(power).epsilon(1e-12));
        CHECK(hop2::gml_pdf_approx(h, s.two) == doctest::Approx(hop2::gml_pdf_exact(h, s.two)).epsilon(1e-12));
    }

    const Bundle b = assemble(SystemConfig{});
    CHECK(hop2::gml_pdf_exact(b.two.A02, b.two) == doctest::Approx(b.two.varpi / b.two.A02).epsilon(1e-14));
    CHECK_THROWS_AS(hop2::gml_pdf_exact(1.01 * b.two.A02, b.two), DomainError);
    CHECK_THROWS_AS(hop2::gml_pdf_approx(0.0, b.two), DomainError);
}

TEST_CASE("series approximation converges")
{
    for (double theta_i : {SystemConfig{}.theta_i, pi / 3.0})
    {
        SystemConfig c;
        c.theta_i = theta_i;
        const Bundle b = assemble(c);
        double prev = inf;
        for (int nk = 0; nk <= 8; ++nk)
        {
            const double e = hop2::gml_approx_error(b.two, nk).l2;
            CHECK(e < prev);
            prev = e;
        }
        const auto terms = hop2::series_terms(b.two);
        CHECK(hop2::gml_approx_error(b.two, 8).sup_relative < 1e-4);
        for (std::size_t k = 1; k < terms.size(); ++k)
            CHECK(terms[k] < terms[k - 1]);
    }
}

TEST_CASE("composite channel density")
{
    const Bundle b = assemble(SystemConfig{});
    const LinkTwoParams& p = b.two;
    const double top = std::log(p.A02 * p.h_p2) + 4.0;
    const double total = log_axis_integral([&](double h) { return hop2::composite_pdf_h2(h, p); }, top - 40.0, top);
    CHECK(std::abs(total - 1.0) < 1e-6);

    // conditioning on the GML factor: f(h) = Int f_g(g) f_a(h / (h_p g)) / (h_p g) dg
    for (int i = 0; i < 10; ++i)
    {
        const double h = p.A02 * p.h_p2 * std::pow(10.0, -2.0 + 0.3 * i);
        auto integrand = [&](double u) {
            const double g = p.A02 * std::exp(u);
            return g * hop2::gml_pdf_approx(g, p) * hop1::ha_pdf(h / (p.h_p2 * g), p.gg) / (p.h_p2 * g);
        };
        const double oracle = GK::integrate(integrand, -50.0, 0.0, 12, 1e-12);
        CHECK(hop2::composite_pdf_h2(h, p) == doctest::Approx(oracle).epsilon(1e-7));
    }

    // symmetric jitter: the classical pointing-error x Gamma-Gamma composite
    const Bundle s = assemble(symmetric_config());
    LinkOneParams classic;
    classic.eta_s2 = s.two.varpi;
    classic.A01 = s.two.A02;
    classic.h_p1 = s.two.h_p2;
    classic.gg = s.two.gg;
    classic.r1 = 1;
    for (double f : {1e-3, 0.05, 0.4, 1.2})
    {
        const double h = f * s.two.A02 * s.two.h_p2;
        CHECK(hop2::composite_pdf_h2(h, s.two) == doctest::Approx(hop1::snr_pdf(h, classic, 1.0)).epsilon(1e-8));
    }
}

TEST_CASE("second-hop SNR statistics")
{
    SystemConfig c;
    c.r2 = 2;
    const Bundle b = assemble(c);
    const double gb = db_to_linear(40.0), gt = db_to_linear(2.0);
    CHECK(hop2::snr_cdf(0.0, b.two, gb) == 0.0);
    CHECK(hop2::snr_cdf(gb * 1e4, b.two, gb) > 1.0 - 1e-6);
    const double f = hop2::snr_cdf(gt, b.two, gb);
    CHECK(hop2::snr_cdf_series(gt, b.two, gb) == doctest::Approx(f).epsilon(1e-8));

    double prev = 0.0;
    for (int i = 0; i < 50; ++i)
    {
        const double v = hop2::snr_cdf(db_to_linear(-20.0 + 80.0 * i / 49.0), b.two, gb);
        CHECK(v >= prev);
        prev = v;
    }
    const double top = std::log(gb) + 3.0;
    const double total = log_axis_integral([&](double g) { return hop2::snr_pdf(g, b.two, gb); }, top - 45.0, top);
    CHECK(std::abs(total - 1.0) < 1e-6);

    const auto est = mc::stream_estimates(mc::hop2_sampler(b.two, gb), 10'000'000, 3, {mc::op_statistic(gt)});
    CHECK(f >= est[0].ci_low);
    CHECK(f <= est[0].ci_high);
}

TEST_CASE("second-hop average BER")
{
    const Bundle het = assemble(SystemConfig{});
    SystemConfig ic;
    ic.r2 = 2;
    const Bundle imdd = assemble(ic);
    const auto ook = ModulationScheme::ook();

    CHECK(std::abs(hop2::avg_ber(ook, imdd.two, db_to_linear(-60.0)) - 0.5) < 1e-3);
    const double g30 = db_to_linear(30.0);
    const double q4 = hop2::avg_ber(ModulationScheme::qam(4), het.two, g30);
    const double q16 = hop2::avg_ber(ModulationScheme::qam(16), het.two, g30);
    const double q64 = hop2::avg_ber(ModulationScheme::qam(64), het.two, g30);
    CHECK(q4 < q16);
    CHECK(q16 < q64);

    const double i_fused = hop_ber_term(hop2::model(imdd.two), 0.5, 0.5, g30);
    CHECK(hop2::ber_term_series(0.5, 0.5, imdd.two, g30) == doctest::Approx(i_fused).epsilon(1e-8));

    const double ber = hop2::avg_ber(ook, imdd.two, g30);
    const auto est = mc::stream_estimates(mc::hop2_sampler(imdd.two, g30), 10'000'000, 4, {mc::ber_statistic(ook)});
    CHECK(std::abs(est[0].mean - ber) < 3.0 * est[0].std_error);
}

TEST_CASE("second-hop capacity and moments")
{
    const Bundle b = assemble(SystemConfig{});
    const double g30 = db_to_linear(30.0);
    CHECK(hop2::capacity(b.two, db_to_linear(-40.0), 1.0) < 1e-3);

    const double cap = hop2::capacity(b.two, g30, 1.0);
    const double m1 = hop2::moment(1.0, b.two, g30);
    const double m2 = hop2::moment(2.0, b.two, g30);
    CHECK(cap <= std::log1p(m1));
    CHECK(m2 >= m1 * m1);
    CHECK(std::abs(hop2::moment(1e-7, b.two, g30) - 1.0) < 1e-6);
    CHECK(hop2::moment(1.0, b.two, g30) == doctest::Approx(hop_moment(hop2::model(b.two), 1.0, g30)).epsilon(1e-12));

    const auto est = mc::stream_estimates(mc::hop2_sampler(b.two, g30), 10'000'000, 6,
                                          {mc::capacity_statistic(1.0), mc::moment_statistic(1.0)});
    CHECK(std::abs(est[0].mean - cap) < 3.0 * est[0].std_error);
    CHECK(std::abs(est[1].mean - m1) < 3.0 * est[1].std_error);
}
