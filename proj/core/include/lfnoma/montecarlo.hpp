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

// Monte Carlo simulation of the feedback strategies over Poisson deployments,
// the OMA and full-CSI baselines, and the exhaustive-enumeration oracle for
// branch occurrence probabilities.

#include "lfnoma/analytics.hpp"
#include "lfnoma/rng.hpp"
#include "lfnoma/scenario.hpp"
#include "lfnoma/strategy.hpp"

#include <array>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <vector>

namespace lfnoma {

struct TrialPlan {
    std::uint64_t num_trials = 100000;
    std::uint64_t base_seed = 20260101;
    std::uint64_t chunk_size = 4096;
    /// Worker threads; 0 picks std::thread::hardware_concurrency(). Results do
    /// not depend on this value.
    unsigned workers = 0;

    void validate() const;
    std::uint64_t num_chunks() const noexcept;
    /// Trials handled by chunk i; the last chunk may be short.
    std::uint64_t chunk_trials(std::uint64_t i) const noexcept;

    friend bool operator==(const TrialPlan&, const TrialPlan&) = default;
};

struct Estimate {
    double mean = 0.0;
    double std_error = 0.0;
    std::uint64_t num_samples = 0;
};

/// Running (sum, sum of squares, count) triple.
struct Accumulator {
    double sum = 0.0;
    double sum_sq = 0.0;
    std::uint64_t count = 0;

    void add(double v) noexcept
    {
        sum += v;
        sum_sq += v * v;
        ++count;
    }
    void merge(const Accumulator& o) noexcept
    {
        sum += o.sum;
        sum_sq += o.sum_sq;
        count += o.count;
    }
    /// Mean and sample standard deviation over sqrt(n).
    Estimate estimate() const noexcept;
};

/// Calls fn(chunk_index, trials_in_chunk, rng) for every chunk of the plan,
/// possibly concurrently. rng is derived from (base_seed, chunk_index).
/// Callers write per-chunk results to slots indexed by chunk and reduce them in
/// index order afterwards, which makes results independent of scheduling.
void for_each_chunk(const TrialPlan& plan,
                    const std::function<void(std::uint64_t, std::uint64_t, RandomStream&)>& fn);

/// Binomial estimate from a success count.
Estimate proportion(std::uint64_t hits, std::uint64_t n) noexcept;

struct BranchCounts {
    std::uint64_t trials = 0;
    std::uint64_t strong_fail = 0; // NOMA branches
    std::uint64_t weak_fail = 0;
    std::uint64_t sut_fail = 0;    // SUT branches
};

struct StrategyStats {
    StrategyKind kind = StrategyKind::TwoBit;
    Accumulator rate;
    std::array<BranchCounts, kNumBranches> branch{};

    Estimate hybrid_rate() const noexcept { return rate.estimate(); }
    Estimate frequency(Branch b) const noexcept;
    Estimate strong_outage(Branch b) const noexcept;
    Estimate weak_outage(Branch b) const noexcept;
    Estimate sut_outage(Branch b) const noexcept;
};

struct SimulationRequest {
    std::vector<StrategyKind> kinds;
    /// Kinds whose chosen UEs are also scored under half-resource OMA.
    std::vector<StrategyKind> oma_kinds;
    bool full_csi = false;
};

struct SimulationResult {
    std::vector<StrategyStats> strategies; // same order as request.kinds
    std::vector<Accumulator> oma;          // same order as request.oma_kinds
    Accumulator full_csi;

    const StrategyStats& stats(StrategyKind kind) const;
};

/// One pass over the plan's deployments scoring every requested strategy.
/// Deployments are shared; each kind draws its uniform picks from its own
/// stream, so a kind's statistics do not depend on what else is requested and
/// OMA sees exactly the UEs its NOMA counterpart scheduled.
SimulationResult simulate(const Scenario& sc, const SimulationRequest& request, const TrialPlan& plan);

Estimate simulate_hybrid_rate(const Scenario& sc, StrategyKind kind, const TrialPlan& plan);

struct OccurrenceFrequencies {
    StrategyKind kind = StrategyKind::TwoBit;
    std::array<std::uint64_t, kNumBranches> counts{};
    std::uint64_t trials = 0;

    Estimate operator[](Branch b) const noexcept;
};

OccurrenceFrequencies simulate_occurrence(const Scenario& sc, StrategyKind kind, const TrialPlan& plan);

/// Per-branch conditional outage counts.
StrategyStats simulate_branch_outage(const Scenario& sc, StrategyKind kind, const TrialPlan& plan);

/// Half-resource OMA for the UEs `kind` schedules: on NOMA branches UE s
/// contributes R_s iff log2(1 + rho g_s) / 2 > R_s; other branches score as
/// in simulate_hybrid_rate.
Estimate baseline_oma_rate(const Scenario& sc, StrategyKind kind, const TrialPlan& plan);

/// Full-CSI NOMA pairing the 1st and 10th strongest UEs; K < 10 scores 0.
Estimate baseline_fullcsi_rate(const Scenario& sc, const TrialPlan& plan);

inline constexpr std::size_t kFullCsiWeakRank = 10;

/// Full-CSI decision: ranks 1 and kFullCsiWeakRank by gain, else no transmission.
TransmissionDecision full_csi_decision(std::span<const double> gains);

/// Effective gains of a deployment, indexed like it.
std::vector<double> deployment_gains(const Deployment& users, const Scenario& sc);

/// n effective-gain draws of a UE conditioned to lie in `group`, by rejection
/// from the group's distance band. Throws std::invalid_argument if the group
/// has zero probability.
std::vector<double> sample_group_gains(const Scenario& sc, Group group, std::size_t n, RandomStream& rng);

/// n effective-gain draws of a UE placed uniformly over the whole region.
std::vector<double> sample_region_gains(const Scenario& sc, std::size_t n, RandomStream& rng);

struct OracleOccurrence {
    OccurrenceProbs probs{};
    /// Pr(K > k_max), the Poisson mass the enumeration leaves out.
    double tail_bound = 0.0;
};

/// Occurrence probabilities by exhaustive enumeration of the quadrant counts
/// (multinomial given K), averaged over Poisson(mu) truncated at k_max. The
/// branch rule is re-derived from the emptiness pattern independently of
/// decide().
OracleOccurrence oracle_occurrence(StrategyKind kind, double mu, double p_theta, double p_d, int k_max = 60);

/// Same enumeration for a fixed number of UEs K.
OccurrenceProbs oracle_occurrence_given_k(StrategyKind kind, int k, double p_theta, double p_d);

} // namespace lfnoma
