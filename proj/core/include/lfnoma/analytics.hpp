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

// Numerical effective-gain CDFs, outage probabilities, closed-form branch
// occurrence probabilities and the hybrid sum rate that combines them.

#include "lfnoma/channel.hpp"
#include "lfnoma/geometry.hpp"
#include "lfnoma/scenario.hpp"
#include "lfnoma/strategy.hpp"

#include <array>
#include <cstddef>
#include <optional>
#include <vector>

namespace lfnoma {

enum class GroupRole { Strong, Weak };
enum class FeedbackType { TwoBit, Angle, Distance };

/// A (group, feedback) pair naming one conditional gain distribution.
struct CdfSpec {
    GroupRole group = GroupRole::Strong;
    FeedbackType feedback = FeedbackType::TwoBit;

    friend bool operator==(const CdfSpec&, const CdfSpec&) = default;
};

inline constexpr std::array<CdfSpec, 6> kAllCdfSpecs = {{
    {GroupRole::Strong, FeedbackType::TwoBit},
    {GroupRole::Weak, FeedbackType::TwoBit},
    {GroupRole::Strong, FeedbackType::Angle},
    {GroupRole::Weak, FeedbackType::Angle},
    {GroupRole::Strong, FeedbackType::Distance},
    {GroupRole::Weak, FeedbackType::Distance},
}};

Group group_of(const CdfSpec& spec) noexcept;

/// Angular part of an integration region, relative to theta_bar.
enum class AngularBand {
    Inner,  // |theta - theta_bar| <= theta_th
    Flanks, // theta_th <= |theta - theta_bar| <= delta/2, two sub-rectangles
    Full,   // the whole sector width
};

struct GainRegion {
    double r_lo = 0.0;
    double r_hi = 0.0;
    AngularBand band = AngularBand::Full;

    /// Integral of r dr dtheta over the region.
    double xi(const UserRegion& region, const Thresholds& th) const noexcept;
};

GainRegion gain_region(const CdfSpec& spec, const UserRegion& region, const Thresholds& th) noexcept;
GainRegion gain_region(Quadrant q, const UserRegion& region, const Thresholds& th) noexcept;
/// The whole sector; its CDF is the unconditional gain CDF.
GainRegion full_region(const UserRegion& region) noexcept;

struct QuadratureConfig {
    std::size_t nodes_radial = 256;
    std::size_t nodes_angular = 256;
    double refinement_tolerance = 1e-6;
    std::size_t max_nodes = 2048; // cap for the doubling loop, per axis

    void validate() const;

    friend bool operator==(const QuadratureConfig&, const QuadratureConfig&) = default;
};

/// CDF of the effective gain of a UE placed uniformly over a GainRegion.
/// Radial and angular factors are tabulated once, so each evaluation costs one
/// exponential per quadrature node. Evaluation doubles both node counts until
/// successive results differ by at most the refinement tolerance.
class GainCdf {
public:
    GainCdf(const GainRegion& gain_region, const UserRegion& region, const Thresholds& th, const ArrayConfig& array,
            const LinkBudget& budget, const QuadratureConfig& quad = {});

    /// F(x); x < 0 throws std::domain_error. An empty region (xi = 0) reports 1.
    double operator()(double x) const;

    /// Unnormalised integral at the converged resolution.
    double integral(double x) const;
    double xi() const noexcept { return xi_; }

    /// Single evaluation at a fixed resolution, no refinement.
    double evaluate_at(double x, std::size_t nodes_radial, std::size_t nodes_angular) const;

private:
    struct Grid {
        std::vector<double> path_loss;  // radial nodes: PL(r) / sigma^2
        std::vector<double> r_weight;   // radial weights times the Jacobian r
        std::vector<double> inv_kernel; // angular nodes: 1 / F_M
        std::vector<double> t_weight;
    };

    Grid build(std::size_t nr, std::size_t nt) const;
    static double sum(const Grid& g, double x);

    GainRegion gain_region_;
    UserRegion region_;
    Thresholds th_;
    ArrayConfig array_;
    LinkBudget budget_;
    QuadratureConfig quad_;
    double xi_ = 0.0;
    Grid base_;
    Grid fine_;
};

/// One-shot F_s^t(x) for a (group, feedback) spec.
double ecg_cdf(double x, const CdfSpec& spec, const UserRegion& region, const Thresholds& th,
               const ArrayConfig& array, const LinkBudget& budget, const QuadratureConfig& quad = {});

/// SINR thresholds of the NOMA pair; `feasible` is false when
/// beta_W^2 - eps_W beta_S^2 <= 0, in which case the weak UE always fails.
struct NomaThresholds {
    double eta_weak = 0.0;
    double eta_strong = 0.0;
    bool feasible = true;
};

NomaThresholds noma_thresholds(const PowerSplit& split, const TargetRates& targets) noexcept;

struct NomaOutage {
    double strong = 1.0;
    double weak = 1.0;
};

/// P_S = F_S(max(eta_W, eta_S) / rho), P_W = F_W(eta_W / rho).
NomaOutage noma_outage(const GainCdf& strong, const GainCdf& weak, double snr, const PowerSplit& split,
                       const TargetRates& targets);
NomaOutage noma_outage(const CdfSpec& strong, const CdfSpec& weak, const Scenario& sc,
                       const QuadratureConfig& quad = {});

/// F(eps_SUT / rho).
double sut_outage(const GainCdf& cdf, double snr, const TargetRates& targets);
double sut_outage(const CdfSpec& spec, const Scenario& sc, const QuadratureConfig& quad = {});

/// Probability masses of the four quadrants for a uniformly placed UE.
struct QuadrantMasses {
    std::array<double, kNumQuadrants> mass{};

    static QuadrantMasses from(double p_theta, double p_d) noexcept;
    double operator[](Quadrant q) const noexcept { return mass[static_cast<std::size_t>(q)]; }
};

/// Branch occurrence probabilities of one strategy. Branches the strategy
/// never takes hold 0; the entries sum to 1.
struct OccurrenceProbs {
    StrategyKind kind = StrategyKind::TwoBit;
    std::array<double, kNumBranches> p{};

    double operator[](Branch b) const noexcept { return p[static_cast<std::size_t>(b)]; }
    double& operator[](Branch b) noexcept { return p[static_cast<std::size_t>(b)]; }
    double total() const noexcept;
};

/// Closed-form occurrence probabilities for K ~ Poisson(mu) UEs.
OccurrenceProbs occurrence(StrategyKind kind, double mu, double p_theta, double p_d) noexcept;

/// Branches a strategy can take, in reporting order.
std::vector<Branch> branches_of(StrategyKind kind);

/// Conditional outage probabilities given a branch. NOMA branches use
/// `strong`/`weak`, SUT branches use `sut`.
struct BranchOutage {
    double strong = 1.0;
    double weak = 1.0;
    double sut = 1.0;
};

struct BranchOutages {
    std::array<BranchOutage, kNumBranches> b{};

    const BranchOutage& operator[](Branch br) const noexcept { return b[static_cast<std::size_t>(br)]; }
    BranchOutage& operator[](Branch br) noexcept { return b[static_cast<std::size_t>(br)]; }
};

/// How the one-bit stage of a combined strategy is modelled.
enum class BranchModel {
    /// Mixture over the quadrants the scheduled UE can actually come from,
    /// given that two-bit pairing has failed.
    Exact,
    /// The one-bit group CDFs, ignoring the conditioning on the two-bit stage.
    GroupMarginal,
};

BranchOutages branch_outages(StrategyKind kind, const Scenario& sc, const QuadratureConfig& quad = {},
                             BranchModel model = BranchModel::Exact);

struct RateReport {
    StrategyKind kind = StrategyKind::TwoBit;
    OccurrenceProbs occurrence{};
    BranchOutages outages{};
    /// Expected sum rate given that a branch is taken.
    std::array<double, kNumBranches> conditional_rate{};
    /// Pr(K >= 2) times the conditional rate of the kind's NOMA stage.
    double rate_noma = 0.0;
    /// Pr(K >= 1) times the conditional rate of each SUT branch.
    std::array<double, kNumBranches> rate_sut{};
    /// Occurrence-weighted sum of conditional branch rates.
    double hybrid = 0.0;
    /// Combined kinds only: the same sum with GroupMarginal outages.
    std::optional<double> hybrid_group_marginal;
};

/// Composes a RateReport from occurrence probabilities and branch outages.
RateReport hybrid_rate(StrategyKind kind, const OccurrenceProbs& occ, const BranchOutages& outages,
                       const TargetRates& targets, double mu);

/// Full analytic pipeline for one scenario.
RateReport analytic_hybrid_rate(StrategyKind kind, const Scenario& sc, const QuadratureConfig& quad = {});

} // namespace lfnoma
