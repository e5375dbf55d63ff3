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

#include "fsolink/montecarlo.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <string>
#include <thread>

#include <boost/math/distributions/chi_squared.hpp>
#include <boost/math/distributions/normal.hpp>
#include <boost/math/special_functions/gamma.hpp>

namespace fsolink::mc
{
    namespace
    {
        // Welford state of one chunk; merged with the parallel formula in chunk order.
        struct Moments
        {
            double n = 0.0, mean = 0.0, m2 = 0.0;

            void add(double x)
            {
                n += 1.0;
                const double d = x - mean;
                mean += d / n;
                m2 += d * (x - mean);
            }

            void merge(const Moments& o)
            {
                if (o.n == 0.0)
                    return;
                const double total = n + o.n;
                const double d = o.mean - mean;
                mean += d * o.n / total;
                m2 += o.m2 + d * d * n * o.n / total;
                n = total;
            }
        };

        // Calls body(chunk_index) for every chunk on a small pool of threads.
        void for_each_chunk(std::size_t chunks, const std::function<void(std::size_t)>& body)
        {
            const unsigned workers = std::min<std::size_t>(worker_count(), std::max<std::size_t>(chunks, 1));
            std::atomic<std::size_t> next{0};
            std::exception_ptr failure;
            std::atomic<bool> failed{false};
            auto run = [&] {
                for (;;)
                {
                    const std::size_t c = next.fetch_add(1);
                    if (c >= chunks || failed.load())
                        return;
                    try
                    {
                        body(c);
                    }
                    catch (...)
                    {
                        if (!failed.exchange(true))
                            failure = std::current_exception();
                        return;
                    }
                }
            };
            if (workers <= 1)
                run();
            else
            {
                std::vector<std::thread> pool;
                for (unsigned i = 0; i < workers; ++i)
                    pool.emplace_back(run);
                for (auto& t : pool)
                    t.join();
            }
            if (failure)
                std::rethrow_exception(failure);
        }

        double z_value(double confidence)
        {
            if (!(confidence > 0.0 && confidence < 1.0))
                throw DomainError("confidence level must lie in (0, 1)");
            return boost::math::quantile(boost::math::normal(), 0.5 + 0.5 * confidence);
        }

        Estimate finish(const Moments& m, bool proportion, double confidence)
        {
            if (m.n == 0.0)
                throw EmptySampleError("estimate needs at least one sample");
            const double z = z_value(confidence);
            Estimate e;
            e.n = static_cast<std::uint64_t>(m.n);
            e.mean = m.mean;
            if (proportion)
            {
                const double p = std::clamp(m.mean, 0.0, 1.0);
                const double n = m.n;
                e.mean = p;
                e.std_error = std::sqrt(p * (1.0 - p) / n);
                const double denom = 1.0 + z * z / n;
                const double centre = (p + z * z / (2.0 * n)) / denom;
                const double half = z / denom * std::sqrt(p * (1.0 - p) / n + z * z / (4.0 * n * n));
                e.ci_low = std::max(0.0, std::min(centre - half, p));
                e.ci_high = std::min(1.0, std::max(centre + half, p));
            }
            else
            {
                const double var = m.n > 1.0 ? m.m2 / (m.n - 1.0) : 0.0;
                e.std_error = std::sqrt(std::max(var, 0.0) / m.n);
                e.ci_low = e.mean - z * e.std_error;
                e.ci_high = e.mean + z * e.std_error;
            }
            return e;
        }

        double gamma_unit_mean(double shape, Engine& rng)
        {
            std::gamma_distribution<double> g(shape, 1.0 / shape);
            return g(rng);
        }
    } // namespace

    Engine RngStream::engine() const
    {
        std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                          static_cast<std::uint32_t>(stream_id), static_cast<std::uint32_t>(stream_id >> 32)};
        return Engine(seq);
    }

    unsigned worker_count()
    {
        unsigned n = std::max(1u, std::thread::hardware_concurrency());
        if (const char* env = std::getenv("FSO_LINK_LAB_THREADS"))
        {
            char* end = nullptr;
            const long cap = std::strtol(env, &end, 10);
            if (end != env && cap >= 1)
                n = static_cast<unsigned>(std::min(cap, 256L));
        }
        return n;
    }

    double sample_gg(const GGParams& gg, Engine& rng)
    {
        return gamma_unit_mean(gg.alpha, rng) * gamma_unit_mean(gg.beta, rng);
    }

    double sample_hg1(double eta_s2, double A0, Engine& rng)
    {
        // inverse CDF of f(h) = eta^2 h^(eta^2 - 1) / A0^eta^2 on (0, A0]
        std::uniform_real_distribution<double> u(0.0, 1.0);
        double v;
        do
            v = u(rng);
        while (v == 0.0);
        return A0 * std::pow(v, 1.0 / eta_s2);
    }

    double sample_hg2(const LinkTwoParams& p, Engine& rng)
    {
        std::normal_distribution<double> n1(0.0, std::sqrt(p.sigma_u1_sq)), n2(0.0, std::sqrt(p.sigma_u2_sq));
        const double u1 = n1(rng), u2 = n2(rng);
        return p.A02 * std::exp(-2.0 * (u1 * u1 + u2 * u2) / p.t_g);
    }

    Sampler hop1_sampler(const LinkOneParams& p, double gamma_bar, ChannelSwitches sw)
    {
        return [p, gamma_bar, sw](Engine& rng) {
            const double ha = sw.turbulence ? sample_gg(p.gg, rng) : 1.0;
            const double hg = sw.misalignment ? sample_hg1(p.eta_s2, p.A01, rng) : 1.0;
            return gamma_bar * std::pow(p.h_p1 * ha * hg, p.r1);
        };
    }

    Sampler hop2_sampler(const LinkTwoParams& p, double gamma_bar, ChannelSwitches sw)
    {
        return [p, gamma_bar, sw](Engine& rng) {
            const double ha = sw.turbulence ? sample_gg(p.gg, rng) : 1.0;
            const double hg = sw.misalignment ? sample_hg2(p, rng) : 1.0;
            return gamma_bar * std::pow(p.h_p2 * ha * hg, p.r2);
        };
    }

    Sampler e2e_sampler(const LinkOneParams& p1, const LinkTwoParams& p2, const e2e::RelayConfig& relay,
                        ChannelSwitches sw)
    {
        relay.validate();
        Sampler a = hop1_sampler(p1, relay.gamma_bar_1, sw);
        Sampler b = hop2_sampler(p2, relay.gamma_bar_2, sw);
        const double C = relay.C;
        return [a, b, C](Engine& rng) {
            const double g1 = a(rng);
            const double g2 = b(rng);
            return e2e::combine_snr(g1, g2, C);
        };
    }

    std::vector<double> simulate(const Sampler& sampler, std::size_t n, std::uint64_t seed)
    {
        if (n == 0)
            throw DomainError("simulation needs n >= 1");
        std::vector<double> out(n);
        const std::size_t chunks = (n + chunk_size - 1) / chunk_size;
        for_each_chunk(chunks, [&](std::size_t c) {
            Engine rng = RngStream{seed, c}.engine();
            const std::size_t end = std::min(n, (c + 1) * chunk_size);
            for (std::size_t i = c * chunk_size; i < end; ++i)
                out[i] = sampler(rng);
        });
        return out;
    }

    std::vector<double> simulate_hop1(const LinkOneParams& p, double gamma_bar, std::size_t n, std::uint64_t seed,
                                      ChannelSwitches sw)
    {
        return simulate(hop1_sampler(p, gamma_bar, sw), n, seed);
    }

    std::vector<double> simulate_hop2(const LinkTwoParams& p, double gamma_bar, std::size_t n, std::uint64_t seed,
                                      ChannelSwitches sw)
    {
        return simulate(hop2_sampler(p, gamma_bar, sw), n, seed);
    }

    std::vector<double> simulate_e2e(const LinkOneParams& p1, const LinkTwoParams& p2, const e2e::RelayConfig& relay,
                                     std::size_t n, std::uint64_t seed, ChannelSwitches sw)
    {
        return simulate(e2e_sampler(p1, p2, relay, sw), n, seed);
    }

    Statistic op_statistic(double gamma_th)
    {
        return {[gamma_th](double g) { return g < gamma_th ? 1.0 : 0.0; }, true};
    }

    Statistic ber_statistic(const ModulationScheme& mod)
    {
        std::vector<double> qs;
        for (int m = 1; m <= mod.terms(); ++m)
            qs.push_back(mod.q(m));
        const double p = mod.p(), delta = mod.delta();
        return {[qs, p, delta](double g) {
                    double acc = 0.0;
                    for (double q : qs)
                        acc += p == 0.5 ? std::erfc(std::sqrt(q * g)) : boost::math::gamma_q(p, q * g);
                    return 0.5 * delta * acc;
                },
                false};
    }

    Statistic capacity_statistic(double c0)
    {
        if (!(c0 > 0.0))
            throw DomainError("capacity needs c0 > 0");
        return {[c0](double g) { return std::log1p(c0 * g); }, false};
    }

    Statistic moment_statistic(double s)
    {
        return {[s](double g) { return std::pow(g, s); }, false};
    }

    Estimate estimate(const std::vector<double>& samples, const Statistic& stat, double confidence)
    {
        if (samples.empty())
            throw EmptySampleError("estimate needs at least one sample");
        // chunked like the streaming path so both give identical numbers
        Moments total;
        for (std::size_t c = 0; c * chunk_size < samples.size(); ++c)
        {
            Moments m;
            const std::size_t end = std::min(samples.size(), (c + 1) * chunk_size);
            for (std::size_t i = c * chunk_size; i < end; ++i)
                m.add(stat.f(samples[i]));
            total.merge(m);
        }
        return finish(total, stat.proportion, confidence);
    }

    Estimate estimate_op(const std::vector<double>& samples, double gamma_th, double confidence)
    {
        return estimate(samples, op_statistic(gamma_th), confidence);
    }

    Estimate estimate_ber(const std::vector<double>& samples, const ModulationScheme& mod, double confidence)
    {
        return estimate(samples, ber_statistic(mod), confidence);
    }

    Estimate estimate_capacity(const std::vector<double>& samples, double c0, double confidence)
    {
        return estimate(samples, capacity_statistic(c0), confidence);
    }

    Estimate estimate_moment(const std::vector<double>& samples, double s, double confidence)
    {
        return estimate(samples, moment_statistic(s), confidence);
    }

    std::vector<Estimate> stream_estimates(const Sampler& sampler, std::size_t n, std::uint64_t seed,
                                           const std::vector<Statistic>& stats, double confidence)
    {
        if (n == 0)
            throw EmptySampleError("estimate needs at least one sample");
        const std::size_t chunks = (n + chunk_size - 1) / chunk_size;
        std::vector<std::vector<Moments>> parts(chunks, std::vector<Moments>(stats.size()));
        for_each_chunk(chunks, [&](std::size_t c) {
            Engine rng = RngStream{seed, c}.engine();
            const std::size_t count = std::min(n, (c + 1) * chunk_size) - c * chunk_size;
            auto& mine = parts[c];
            for (std::size_t i = 0; i < count; ++i)
            {
                const double g = sampler(rng);
                for (std::size_t k = 0; k < stats.size(); ++k)
                    mine[k].add(stats[k].f(g));
            }
        });
        std::vector<Estimate> out;
        for (std::size_t k = 0; k < stats.size(); ++k)
        {
            Moments total;
            for (const auto& part : parts)
                total.merge(part[k]);
            out.push_back(finish(total, stats[k].proportion, confidence));
        }
        return out;
    }

    double ks_test(std::vector<double> samples, const std::function<double(double)>& cdf)
    {
        if (samples.empty())
            throw EmptySampleError("KS test needs samples");
        std::sort(samples.begin(), samples.end());
        const double n = static_cast<double>(samples.size());
        double d = 0.0;
        for (std::size_t i = 0; i < samples.size(); ++i)
        {
            const double f = cdf(samples[i]);
            d = std::max({d, (i + 1.0) / n - f, f - i / n});
        }
        // Kolmogorov limit law with the Stephens small-sample correction
        const double sn = std::sqrt(n);
        const double lambda = (sn + 0.12 + 0.11 / sn) * d;
        double q = 0.0;
        for (int j = 1; j <= 100; ++j)
        {
            const double term = 2.0 * ((j % 2) ? 1.0 : -1.0) * std::exp(-2.0 * j * j * lambda * lambda);
            q += term;
            if (std::abs(term) < 1e-12)
                break;
        }
        return std::clamp(q, 0.0, 1.0);
    }

    double chi_square_test(const std::vector<double>& samples, const std::vector<double>& edges,
                           const std::function<double(double, double)>& bin_probability)
    {
        if (samples.empty())
            throw EmptySampleError("chi-square test needs samples");
        if (edges.size() < 3 || !std::is_sorted(edges.begin(), edges.end()))
            throw DomainError("chi-square test needs at least two sorted bins");
        const std::size_t bins = edges.size() - 1;
        std::vector<double> counts(bins, 0.0);
        for (double x : samples)
        {
            if (x < edges.front() || x >= edges.back())
                continue;
            const auto it = std::upper_bound(edges.begin(), edges.end(), x);
            counts[static_cast<std::size_t>(it - edges.begin()) - 1] += 1.0;
        }
        const double n = static_cast<double>(samples.size());
        double stat = 0.0;
        int used = 0;
        double rest_obs = n, rest_exp = n;
        for (std::size_t i = 0; i < bins; ++i)
        {
            const double expected = n * bin_probability(edges[i], edges[i + 1]);
            rest_obs -= counts[i];
            rest_exp -= expected;
            if (expected <= 0.0)
                continue;
            stat += (counts[i] - expected) * (counts[i] - expected) / expected;
            ++used;
        }
        // mass outside the binned range forms one more cell
        if (rest_exp > 5.0)
        {
            stat += (rest_obs - rest_exp) * (rest_obs - rest_exp) / rest_exp;
            ++used;
        }
        if (used < 2)
            throw DomainError("chi-square test needs at least two populated bins");
        boost::math::chi_squared dist(used - 1);
        return boost::math::cdf(boost::math::complement(dist, stat));
    }

    std::pair<double, double> gml_identity_residuals(const LinkTwoParams& p)
    {
        const double s1 = p.sigma_u1_sq, s2 = p.sigma_u2_sq;
        const double lhs1 = p.exponent();
        const double rhs1 = p.t_g * (s1 + s2) / (8.0 * s1 * s2);
        const double lhs2 = 2.0 * p.rho(); // (1 - q^2) varpi / (2 q)
        const double rhs2 = p.t_g * std::abs(s1 - s2) / (8.0 * s1 * s2);
        auto rel = [](double a, double b) {
            const double scale = std::max(std::abs(a), std::abs(b));
            return scale == 0.0 ? 0.0 : std::abs(a - b) / scale;
        };
        return {rel(lhs1, rhs1), rel(lhs2, rhs2)};
    }
} // namespace fsolink::mc
