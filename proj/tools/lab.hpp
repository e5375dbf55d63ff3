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

#ifndef FSOLINK_LAB_HPP
#define FSOLINK_LAB_HPP

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "fsolink/e2e.hpp"
#include "fsolink/scenario.hpp"

// Front-end pieces shared by the command-line tool and the acceptance runner.
namespace fsolink::lab
{
    struct CurvePoint
    {
        double x_db = 0.0;
        double analytic = 0.0;
        std::optional<double> asymptotic;
        std::optional<double> mc_mean, mc_ci_low, mc_ci_high;
        std::map<std::string, std::string> meta;
    };

    // from:to:step in dB, inclusive of `to` when it falls on the grid
    struct Grid
    {
        double from = 0.0, to = 60.0, step = 5.0;
        static Grid parse(const std::string& text);
        std::vector<double> points() const;
    };

    enum class Metric
    {
        op,
        ber,
        capacity,
        moment
    };
    enum class Scope
    {
        hop2,
        e2e
    };

    Metric parse_metric(const std::string& s);
    Scope parse_scope(const std::string& s);

    struct CurveRequest
    {
        Metric metric = Metric::op;
        Scope scope = Scope::e2e;
        Grid grid;
        std::size_t samples = 0;
        std::uint64_t seed = 1;
        bool asymptotic = false;
        ModulationScheme modulation = ModulationScheme::ook();
        double s = 1.0;
    };

    // One point per grid abscissa; the abscissa is the average SNR of every hop.
    std::vector<CurvePoint> compute_curve(const SystemConfig& cfg, const CurveRequest& req);

    int count_disagreements(const std::vector<CurvePoint>& pts);

    // `preamble` lines are written as "# ..." comments ahead of the header row.
    void write_csv(std::ostream& out, const std::vector<CurvePoint>& pts, const std::vector<std::string>& preamble);
    void write_json(std::ostream& out, const std::vector<CurvePoint>& pts);

    // A plain numeric table for figure output; empty cells are written blank.
    struct Table
    {
        std::string name;
        std::vector<std::string> columns;
        std::vector<std::vector<std::optional<double>>> rows;
    };
    void write_table_csv(std::ostream& out, const Table& t, const std::vector<std::string>& preamble);

    // The fluctuation cases of the second-hop figures, as multiples of a_l / 2.
    struct Fluctuation
    {
        double s, r, l;
        std::string label() const;
        SystemConfig apply(SystemConfig c) const;
    };
    const std::vector<Fluctuation>& hop2_cases();

    struct FigureOptions
    {
        Grid grid;
        std::size_t samples = 0;
        std::uint64_t seed = 1;
    };
    std::vector<std::string> figure_ids();
    // Throws UnknownFigureError for an unknown id.
    std::vector<Table> figure(const std::string& id, const SystemConfig& base, const FigureOptions& opt);

    struct CheckResult
    {
        std::string name;
        bool passed = false;
        std::string detail;
    };

    struct SuiteOptions
    {
        std::uint64_t seed = 7;
        std::size_t gof_samples = 1'000'000;
        std::size_t smoke_samples = 1'000'000;
        bool smoke = true;
    };
    // Identity, normalization, monotonicity, sampler and reproducibility checks at the given config.
    std::vector<CheckResult> property_suite(const SystemConfig& cfg, const SuiteOptions& opt);

    // Process entry point: returns the exit code.
    int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);
} // namespace fsolink::lab

#endif
