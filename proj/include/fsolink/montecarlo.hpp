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

#ifndef FSOLINK_MONTECARLO_HPP
#define FSOLINK_MONTECARLO_HPP

#include <cstdint>
#include <functional>
#include <random>
#include <vector>

#include "fsolink/e2e.hpp"
#include "fsolink/hop.hpp"
#include "fsolink/scenario.hpp"

// Physics-level simulator used as the oracle for the closed forms.
namespace fsolink::mc
{
    using Engine = std::mt19937_64;

    inline constexpr std::size_t chunk_size = std::size_t{1} << 16;

    // Substream of a seed; identical (seed, stream_id) give identical sequences.
    struct RngStream
    {
        std::uint64_t seed = 0;
        std::uint64_t stream_id = 0;
        Engine engine() const;
    };

    double sample_gg(const GGParams& gg, Engine& rng);
    double sample_hg1(double eta_s2, double A0, Engine& rng);
    double sample_hg2(const LinkTwoParams& p, Engine& rng);

    // Switches for deterministic-channel checks: a disabled factor is replaced by 1.
    struct ChannelSwitches
    {
        bool turbulence = true;
        bool misalignment = true;
    };

    using Sampler = std::function<double(Engine&)>;

    Sampler hop1_sampler(const LinkOneParams& p, double gamma_bar, ChannelSwitches sw = {});
    Sampler hop2_sampler(const LinkTwoParams& p, double gamma_bar, ChannelSwitches sw = {});
    Sampler e2e_sampler(const LinkOneParams& p1, const LinkTwoParams& p2, const e2e::RelayConfig& relay,
                        ChannelSwitches sw = {});

    // Draws n SNR values in fixed chunks of chunk_size, chunk i using substream i.
    // The result does not depend on the number of worker threads.
    std::vector<double> simulate(const Sampler& sampler, std::size_t n, std::uint64_t seed);
    std::vector<double> simulate_hop1(const LinkOneParams& p, double gamma_bar, std::size_t n, std::uint64_t seed,
                                      ChannelSwitches sw = {});
    std::vector<double> simulate_hop2(const LinkTwoParams& p, double gamma_bar, std::size_t n, std::uint64_t seed,
                                      ChannelSwitches sw = {});
    std::vector<double> simulate_e2e(const LinkOneParams& p1, const LinkTwoParams& p2, const e2e::RelayConfig& relay,
                                     std::size_t n, std::uint64_t seed, ChannelSwitches sw = {});

    struct Estimate
    {
        double mean = 0.0;
        double std_error = 0.0;
        double ci_low = 0.0;
        double ci_high = 0.0;
        std::uint64_t n = 0;
    };

    // A per-sample statistic; proportions get Wilson intervals, everything else normal ones.
    struct Statistic
    {
        std::function<double(double)> f;
        bool proportion = false;
    };

    Statistic op_statistic(double gamma_th);
    // delta * sum_m Gamma(p, q_m gamma) / (2 Gamma(p)), the conditional BER
    Statistic ber_statistic(const ModulationScheme& mod);
    Statistic capacity_statistic(double c0);
    Statistic moment_statistic(double s);

    Estimate estimate(const std::vector<double>& samples, const Statistic& stat, double confidence = 0.99);
    Estimate estimate_op(const std::vector<double>& samples, double gamma_th, double confidence = 0.99);
    Estimate estimate_ber(const std::vector<double>& samples, const ModulationScheme& mod, double confidence = 0.99);
    Estimate estimate_capacity(const std::vector<double>& samples, double c0, double confidence = 0.99);
    Estimate estimate_moment(const std::vector<double>& samples, double s, double confidence = 0.99);

    // Same estimators without storing the samples; used for the 1e8-sample runs.
    std::vector<Estimate> stream_estimates(const Sampler& sampler, std::size_t n, std::uint64_t seed,
                                           const std::vector<Statistic>& stats, double confidence = 0.99);

    // Worker limit: FSO_LINK_LAB_THREADS when set, else hardware concurrency. Never above the chunk count.
    unsigned worker_count();

    // Goodness of fit. Both return p-values.
    double ks_test(std::vector<double> samples, const std::function<double(double)>& cdf);
    // counts in bins [edges[i], edges[i+1]) against expected probabilities
    double chi_square_test(const std::vector<double>& samples, const std::vector<double>& edges,
                           const std::function<double(double, double)>& bin_probability);

    // Relative residuals of the two identities linking the Hoyt jitter variances to the GML
    // series coefficients; both should vanish for an assembled LinkTwoParams.
    std::pair<double, double> gml_identity_residuals(const LinkTwoParams& p);
} // namespace fsolink::mc

#endif
