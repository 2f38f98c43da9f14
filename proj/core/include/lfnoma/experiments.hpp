// SPDX-License-Identifier: Apache-2.0
//
// lfnoma - limited-feedback NOMA analysis and simulation for mmWave downlinks
// Copyright (C) 2026 The lfnoma authors
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

#pragma once

// Experiment configuration, sweep runners and CSV output.

#include "lfnoma/analytics.hpp"
#include "lfnoma/montecarlo.hpp"
#include "lfnoma/scenario.hpp"

#include <array>
#include <cstddef>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace lfnoma {

enum class CurveType { Noma, Oma, FullCsi };

/// One line of a rate plot: a NOMA strategy, OMA on that strategy's UEs, or
/// the full-CSI benchmark. Labels: 2B, 1B-A, 1B-D, C-A, C-D, OMA-<kind>, FULL.
struct Curve {
    CurveType type = CurveType::Noma;
    StrategyKind kind = StrategyKind::TwoBit;

    std::string label() const;
    /// Throws std::invalid_argument on an unknown label.
    static Curve parse(std::string_view label);

    friend bool operator==(const Curve&, const Curve&) = default;
};

/// Axes of the two-dimensional and auxiliary sweeps.
struct GridAxes {
    double snr_db = 50.0;
    std::vector<double> c_theta{0.0, 0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9, 1.0};
    std::vector<double> c_d{0.0, 0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9, 1.0};
    std::vector<double> beta_sq_strong{0.05, 0.1, 0.15, 0.2, 0.25, 0.3, 0.35, 0.4, 0.45, 0.49};
    std::vector<double> d_max_m{10, 15, 20, 25, 30, 35, 40, 45, 50};
    std::vector<double> delta_rad{deg_to_rad(2),  deg_to_rad(4),  deg_to_rad(6),  deg_to_rad(8),  deg_to_rad(10),
                                  deg_to_rad(12), deg_to_rad(14), deg_to_rad(16), deg_to_rad(18), deg_to_rad(20)};

    friend bool operator==(const GridAxes&, const GridAxes&) = default;
};

struct ExperimentConfig {
    Scenario scenario = default_scenario();
    std::vector<double> snr_db{0, 5, 10, 15, 20, 25, 30, 35, 40, 45, 50, 55, 60};
    std::vector<Curve> curves{{CurveType::Noma, StrategyKind::TwoBit},
                              {CurveType::Noma, StrategyKind::OneBitAngle},
                              {CurveType::Noma, StrategyKind::OneBitDistance},
                              {CurveType::Noma, StrategyKind::CombinedAngle},
                              {CurveType::Noma, StrategyKind::CombinedDistance}};
    TrialPlan trials{};
    QuadratureConfig quadrature{};
    GridAxes grid{};
    std::string output_path;

    void validate() const;

    friend bool operator==(const ExperimentConfig&, const ExperimentConfig&) = default;
};

/// Parse or validation failure; line() is 1-based, 0 when not tied to a line.
class ConfigError : public std::runtime_error {
public:
    ConfigError(std::size_t line, const std::string& message);
    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

/// Flat `section.key = value` text; `#` starts a comment. Unspecified keys
/// keep their defaults.
ExperimentConfig parse_config(std::string_view text);
ExperimentConfig load_config(const std::string& path);

/// Every key, angles in radians, doubles printed to round-trip exactly.
std::string serialize_config(const ExperimentConfig& cfg);

using Cell = std::variant<std::monostate, double, std::string>;

struct SweepResult {
    std::vector<std::string> columns;
    std::vector<std::vector<Cell>> rows;
    /// (expected, estimate, standard error) column triples compared by verify().
    std::vector<std::array<std::size_t, 3>> checks;
    /// Smallest standard error verify() will use: the estimate's resolution
    /// (largest per-trial value / trials), so an all-zero sample cannot claim
    /// more precision than the trial count allows.
    double se_floor = 0.0;

    std::size_t column(std::string_view name) const;
};

struct RunOptions {
    bool analytic_only = false;
};

/// Columns: snr_db, strategy, analytic_rate, mc_rate, mc_se, analytic_rate_marginal.
SweepResult run_snr_sweep(const ExperimentConfig& cfg, const RunOptions& opt = {});

/// Analytic rate per (c_theta, c_d) cell for every NOMA curve, at grid.snr_db.
SweepResult run_threshold_grid(const ExperimentConfig& cfg, const RunOptions& opt = {});

/// beta_S^2 sweep at grid.snr_db with beta_W^2 = 1 - beta_S^2.
SweepResult run_power_sweep(const ExperimentConfig& cfg, const RunOptions& opt = {});

/// Analytic rate per (d_max, delta) cell and NOMA curve, plus the best label
/// among {2B, 1B-A, 1B-D} and among all curves present.
SweepResult run_geometry_map(const ExperimentConfig& cfg, const RunOptions& opt = {});

/// Branch occurrence over grid.c_theta for 2B and the combined curves:
/// closed form, enumeration oracle and simulated frequency.
SweepResult run_occurrence_report(const ExperimentConfig& cfg, const RunOptions& opt = {});

struct VerifyReport {
    std::size_t checked = 0;
    std::vector<std::string> failures;

    bool ok() const noexcept { return failures.empty(); }
};

/// |expected - estimate| <= n_se * max(se, se_floor) + abs_tol on every row with both values.
VerifyReport verify(const SweepResult& result, double n_se = 3.0, double abs_tol = 1e-9);

/// 12 significant digits, empty cells for missing values. A timestamp comment
/// precedes the header unless `deterministic`.
void write_csv(std::ostream& os, const SweepResult& result, bool deterministic);
std::string to_csv(const SweepResult& result, bool deterministic = true);

} // namespace lfnoma
