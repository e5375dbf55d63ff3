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
#include <algorithm>
#include <cmath>
#include <cstdlib>

#include "doctest.h"
#include "fsolink/link_hap_user.hpp"
#include "fsolink/link_ogs_hap.hpp"
#include "fsolink/montecarlo.hpp"

using namespace fsolink;

namespace
{
    using GK = boost::math::quadrature::gauss_kronrod<double, 31>;

    std::vector<double> draw(std::size_t n, std::uint64_t seed, const std::function<double(mc::Engine&)>& f)
    {
        return mc::simulate(f, n, seed);
    }

    struct Moments
    {
        double mean, var;
    };

    Moments moments(const std::vector<double>& x)
    {
        double m = 0.0;
        for (double v : x)
            m += v;
        m /= static_cast<double>(x.size());
        double s = 0.0;
        for (double v : x)
            s += (v - m) * (v - m);
        return {m, s / static_cast<double>(x.size() - 1)};
    }

    void setenv_threads(const char* v)
    {
        if (v)
            ::setenv("FSO_LINK_LAB_THREADS", v, 1);
        else
            ::unsetenv("FSO_LINK_LAB_THREADS");
    }
} // namespace

TEST_CASE("gamma-gamma sampler")
{
    const GGParams gg{4.2, 2.3};
    const auto x = draw(1'000'000, 3, [&](mc::Engine& e) { return mc::sample_gg(gg, e); });
    const auto m = moments(x);
    const double var = (1.0 + 1.0 / gg.alpha) * (1.0 + 1.0 / gg.beta) - 1.0;
    CHECK(std::abs(m.mean - 1.0) < 4.0 * std::sqrt(var / 1e6));
    CHECK(m.var == doctest::Approx(var).epsilon(0.02));
    CHECK(*std::min_element(x.begin(), x.end()) > 0.0);

    std::vector<double> edges;
    for (double h = 0.05; h < 4.0; h += 0.15)
        edges.push_back(h);
    auto prob = [&](double a, double b) {
        return GK::integrate([&](double h) { return hop1::ha_pdf(h, gg); }, a, b, 5, 1e-12);
    };
    CHECK(mc::chi_square_test(x, edges, prob) > 0.01);
}

TEST_CASE("first-hop pointing sampler")
{
    const double A0 = 0.5;
    const auto u = draw(1'000'000, 4, [&](mc::Engine& e) { return mc::sample_hg1(1.0, A0, e); });
    CHECK(mc::ks_test(u, [&](double h) { return std::clamp(h / A0, 0.0, 1.0); }) > 0.01);
    // a wrong law is rejected
    CHECK(mc::ks_test(u, [&](double h) { return std::clamp(h * h / (A0 * A0), 0.0, 1.0); }) < 1e-6);

    const double eta2 = 2.7;
    const auto x = draw(1'000'000, 5, [&](mc::Engine& e) { return mc::sample_hg1(eta2, A0, e); });
    CHECK(*std::max_element(x.begin(), x.end()) <= A0);
    CHECK(*std::min_element(x.begin(), x.end()) >= 0.0);
    const double mean = A0 * eta2 / (1.0 + eta2);
    CHECK(moments(x).mean == doctest::Approx(mean).epsilon(2e-3));
    CHECK(mc::ks_test(x, [&](double h) { return std::pow(std::clamp(h / A0, 0.0, 1.0), eta2); }) > 0.01);
}

TEST_CASE("second-hop pointing sampler")
{
    const Bundle b = assemble(SystemConfig{});
    const auto& p = b.two;
    const auto x = draw(1'000'000, 6, [&](mc::Engine& e) { return mc::sample_hg2(p, e); });
    CHECK(*std::max_element(x.begin(), x.end()) <= p.A02);
    CHECK(*std::min_element(x.begin(), x.end()) > 0.0);

    // tabulated distribution function of the exact density, via u = ln(A02 / h)
    const int n_tab = 400;
    const double u_max = 60.0 / p.exponent();
    std::vector<double> us(n_tab + 1), tail(n_tab + 1, 0.0);
    for (int i = 0; i <= n_tab; ++i)
        us[i] = u_max * i / n_tab;
    auto g = [&](double u) {
        const double h = p.A02 * std::exp(-u);
        return h * hop2::gml_pdf_exact(h, p);
    };
    for (int i = n_tab - 1; i >= 0; --i)
        tail[i] = tail[i + 1] + GK::integrate(g, us[i], us[i + 1], 5, 1e-13);
    CHECK(tail[0] == doctest::Approx(1.0).epsilon(1e-8));
    auto cdf = [&](double h) {
        if (h >= p.A02)
            return 1.0;
        const double u = std::log(p.A02 / h);
        if (u >= u_max)
            return 0.0;
        const double pos = u / u_max * n_tab;
        const int i = std::min(static_cast<int>(pos), n_tab - 1);
        return tail[i + 1] + GK::integrate(g, u, us[i + 1], 5, 1e-13);
    };
    CHECK(mc::ks_test(x, cdf) > 0.01);

    // equal jitter variances: -ln(h / A02) is exponential with mean 4 sigma^2 / t_g
    LinkTwoParams sym = p;
    sym.sigma_u2_sq = sym.sigma_u1_sq;
    const double rate = sym.t_g / (4.0 * sym.sigma_u1_sq);
    const auto y = draw(1'000'000, 7, [&](mc::Engine& e) { return mc::sample_hg2(sym, e); });
    CHECK(mc::ks_test(y, [&](double h) { return std::pow(std::clamp(h / sym.A02, 0.0, 1.0), rate); }) > 0.01);
}

TEST_CASE("deterministic channel switches")
{
    const Bundle b = assemble(SystemConfig{});
    const double gb = db_to_linear(20.0);
    const auto a = mc::simulate_hop1(b.one, gb, 1000, 1, {false, false});
    for (double v : a)
        CHECK(v == doctest::Approx(gb * std::pow(b.one.h_p1, b.one.r1)).epsilon(1e-15));
    const auto c = mc::simulate_hop2(b.two, gb, 1000, 1, {false, false});
    for (double v : c)
        CHECK(v == doctest::Approx(gb * std::pow(b.two.h_p2, b.two.r2)).epsilon(1e-15));

    // turbulence only: unit-mean fading around the deterministic level
    const auto t = mc::simulate_hop1(b.one, gb, 400'000, 2, {true, false});
    CHECK(moments(t).mean == doctest::Approx(gb * b.one.h_p1).epsilon(3e-3));
    const auto e = mc::simulate_e2e(b.one, b.two, e2e::RelayConfig::locked(gb, 1.0), 10, 3, {false, false});
    const double g1 = gb * b.one.h_p1, g2 = gb * b.two.h_p2;
    for (double v : e)
        CHECK(v == doctest::Approx(g1 * g2 / (g2 + 1.0)).epsilon(1e-14));
}

TEST_CASE("reproducibility")
{
    const Bundle b = assemble(SystemConfig{});
    const double gb = db_to_linear(30.0);
    const std::size_t n = 3 * mc::chunk_size + 123;
    const auto relay = e2e::RelayConfig::locked(gb, 1.0);

    const char* old = std::getenv("FSO_LINK_LAB_THREADS");
    const std::string saved = old ? old : "";
    setenv_threads("1");
    CHECK(mc::worker_count() == 1);
    const auto one = mc::simulate_e2e(b.one, b.two, relay, n, 42);
    const auto est1 = mc::stream_estimates(mc::e2e_sampler(b.one, b.two, relay), n, 42, {mc::moment_statistic(1.0)});
    setenv_threads("4");
    CHECK(mc::worker_count() == 4);
    const auto four = mc::simulate_e2e(b.one, b.two, relay, n, 42);
    const auto est4 = mc::stream_estimates(mc::e2e_sampler(b.one, b.two, relay), n, 42, {mc::moment_statistic(1.0)});
    setenv_threads(old ? saved.c_str() : nullptr);

    REQUIRE(one.size() == n);
    CHECK(one == four);
    CHECK(est1[0].mean == est4[0].mean);
    CHECK(est1[0].std_error == est4[0].std_error);
    CHECK(est1[0].mean == doctest::Approx(mc::estimate_moment(one, 1.0).mean).epsilon(1e-12));
    CHECK(mc::simulate_e2e(b.one, b.two, relay, n, 43) != one);

    const mc::RngStream s0{42, 0}, s1{42, 1};
    auto e0 = s0.engine(), e0b = s0.engine(), e1 = s1.engine();
    CHECK(e0() == e0b());
    CHECK(e0() != e1());
}

TEST_CASE("estimators")
{
    const std::vector<double> high(1000, 10.0), low(1000, 0.1);
    const auto none = mc::estimate_op(high, 1.0);
    CHECK(none.mean == 0.0);
    CHECK(none.std_error == 0.0);
    CHECK(none.ci_low == 0.0);
    CHECK(none.ci_high > 0.0);
    CHECK(none.ci_high < 0.01);
    const auto all = mc::estimate_op(low, 1.0);
    CHECK(all.mean == 1.0);
    CHECK(all.std_error == 0.0);
    CHECK(all.ci_high == 1.0);
    CHECK(all.n == 1000);

    const auto m = mc::estimate_moment(high, 2.0);
    CHECK(m.mean == doctest::Approx(100.0));
    CHECK(m.std_error == 0.0);
    CHECK(mc::estimate_capacity(high, 1.0).mean == doctest::Approx(std::log(11.0)).epsilon(1e-15));
    const auto ber = mc::estimate_ber(high, ModulationScheme::ook());
    CHECK(ber.mean > 0.0);
    CHECK(ber.mean < 0.5);
    CHECK(mc::estimate_ber(std::vector<double>(10, 1e300), ModulationScheme::qam(16)).mean == 0.0);
    const auto zero = mc::estimate_op(std::vector<double>(100, 0.0), 1.0);
    CHECK(zero.mean == 1.0);
    CHECK(zero.std_error == 0.0);

    // a known proportion: 30 % of a uniform grid
    std::vector<double> grid(10000);
    for (std::size_t i = 0; i < grid.size(); ++i)
        grid[i] = (i + 0.5) / grid.size();
    const auto e = mc::estimate_op(grid, 0.3);
    CHECK(e.mean == doctest::Approx(0.3));
    CHECK(e.ci_low < 0.3);
    CHECK(e.ci_high > 0.3);
    CHECK(e.std_error == doctest::Approx(std::sqrt(0.3 * 0.7 / 1e4)).epsilon(1e-3));

    CHECK_THROWS_AS(mc::estimate_op({}, 1.0), EmptySampleError);
    CHECK_THROWS_AS(mc::ks_test({}, [](double) { return 0.0; }), EmptySampleError);
    CHECK_THROWS_AS(mc::simulate([](mc::Engine&) { return 1.0; }, 0, 1), DomainError);
}

TEST_CASE("jitter variance identities")
{
    const auto r = mc::gml_identity_residuals(assemble(SystemConfig{}).two);
    CHECK(r.first < 1e-10);
    CHECK(r.second < 1e-10);
    SystemConfig c;
    c.zeta_1 = 0.3;
    const auto s = mc::gml_identity_residuals(assemble(c).two);
    CHECK(s.first < 1e-10);
    CHECK(s.second < 1e-10);
}
