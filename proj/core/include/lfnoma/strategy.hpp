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

// Feedback quantisation, strong/weak grouping, pairing and SUT fallback.

#include "lfnoma/channel.hpp"
#include "lfnoma/geometry.hpp"
#include "lfnoma/rng.hpp"

#include <array>
#include <cstddef>
#include <span>
#include <string_view>
#include <variant>
#include <vector>

namespace lfnoma {

struct FeedbackBits {
    bool angle_bit = false;    // |theta_bar - theta| <= theta_th
    bool distance_bit = false; // d <= d_th

    friend bool operator==(const FeedbackBits&, const FeedbackBits&) = default;
};

/// The four cells cut out of the sector by the two one-bit quantisers.
enum class Quadrant {
    StrongTwoBit, // in-beam and near
    WeakTwoBit,   // out-of-beam and far
    StrongBar,    // out-of-beam and near
    WeakBar,      // in-beam and far
};
inline constexpr std::size_t kNumQuadrants = 4;

enum class StrategyKind { TwoBit, OneBitAngle, OneBitDistance, CombinedAngle, CombinedDistance };
inline constexpr std::array<StrategyKind, 5> kAllStrategies = {
    StrategyKind::TwoBit, StrategyKind::OneBitAngle, StrategyKind::OneBitDistance,
    StrategyKind::CombinedAngle, StrategyKind::CombinedDistance};

/// Short label used in CSV output: 2B, 1B-A, 1B-D, C-A, C-D.
std::string_view strategy_label(StrategyKind kind) noexcept;
bool is_combined(StrategyKind kind) noexcept;
bool uses_angle_bit(StrategyKind kind) noexcept;

enum class Group { StrongTwoBit, WeakTwoBit, StrongAngle, WeakAngle, StrongDistance, WeakDistance };
std::string_view group_label(Group g) noexcept;
bool contains(Group g, Quadrant q) noexcept;

struct PowerSplit {
    double beta_sq_strong = 0.4;
    double beta_sq_weak = 0.6;

    /// Split with beta_S^2 = s and beta_W^2 = 1 - s.
    static PowerSplit from_strong_fraction(double s);
    void validate() const;

    friend bool operator==(const PowerSplit&, const PowerSplit&) = default;
};

struct TargetRates {
    double r_strong = 8.0; // bps/Hz
    double r_weak = 1.0;
    double r_sut = 8.0;

    double eps_strong() const noexcept;
    double eps_weak() const noexcept;
    double eps_sut() const noexcept;
    void validate() const;

    friend bool operator==(const TargetRates&, const TargetRates&) = default;
};

FeedbackBits quantize(const UserEquipment& ue, const Thresholds& th, double theta_bar) noexcept;
Quadrant classify(const FeedbackBits& bits) noexcept;
Quadrant classify(const UserEquipment& ue, const Thresholds& th, double theta_bar) noexcept;

struct QuadrantSets {
    std::array<std::vector<std::size_t>, kNumQuadrants> members;

    const std::vector<std::size_t>& operator[](Quadrant q) const { return members[static_cast<std::size_t>(q)]; }
    std::vector<std::size_t>& operator[](Quadrant q) { return members[static_cast<std::size_t>(q)]; }
};

struct GroupSets {
    std::vector<std::size_t> strong;
    std::vector<std::size_t> weak;
    // Only populated for StrategyKind::TwoBit: the UEs neither group covers.
    std::vector<std::size_t> strong_bar;
    std::vector<std::size_t> weak_bar;
};

QuadrantSets partition(const Deployment& users, const Thresholds& th, double theta_bar);

/// Strong and weak groups for the kind's feedback type. Combined kinds report
/// their one-bit groups; the two-bit groups come from StrategyKind::TwoBit.
GroupSets form_groups(const Deployment& users, const Thresholds& th, double theta_bar, StrategyKind kind);

enum class PairingSource { TwoBit, OneBit };

struct NomaPair {
    std::size_t strong = 0;
    std::size_t weak = 0;
    PairingSource source = PairingSource::TwoBit;
};

struct SingleUser {
    std::size_t index = 0;
    Group source = Group::StrongTwoBit;
};

struct NoTransmission {};

using TransmissionDecision = std::variant<NoTransmission, NomaPair, SingleUser>;

/// Outcome class of a decision, the unit in which occurrence is counted.
enum class Branch {
    NomaTwoBit,
    NomaOneBit,
    SutStrongTwoBit,
    SutWeakTwoBit,
    SutStrongOneBit,
    SutWeakOneBit,
    None,
};
inline constexpr std::size_t kNumBranches = 7;
std::string_view branch_label(Branch b) noexcept;
Branch branch_of(const TransmissionDecision& decision) noexcept;

/// Pairing/SUT logic on one deployment. Members are picked uniformly at random
/// from the selected group using `rng`.
TransmissionDecision decide(const Deployment& users, const Thresholds& th, double theta_bar, StrategyKind kind,
                            RandomStream& rng);

/// Same rule driven only by which quadrants are non-empty; the pick is the
/// first member of the chosen group. Used by enumeration oracles and tests.
Branch decide_branch(const std::array<bool, kNumQuadrants>& nonempty, StrategyKind kind) noexcept;

struct NomaSinr {
    double weak_msg_at_strong = 0.0; // SINR_{W->S}
    double own_at_strong = 0.0;      // SINR_{S->S}, after SIC
    double weak_msg_at_weak = 0.0;   // SINR_{W->W}
};

NomaSinr noma_sinr(double gain_strong, double gain_weak, double snr, const PowerSplit& split) noexcept;
double sut_snr(double gain, double snr) noexcept;

struct SinrReport {
    std::variant<std::monostate, NomaSinr, double> value;
};

/// SINRs of the scheduled UEs; `gains` is indexed like the deployment.
SinrReport sinr(const TransmissionDecision& decision, std::span<const double> gains, const LinkBudget& budget,
                const PowerSplit& split);

struct RealizedOutcome {
    bool strong_ok = false; // NOMA strong UE decoded both messages
    bool weak_ok = false;   // NOMA weak UE decoded its message
    bool sut_ok = false;
    double rate = 0.0;
};

RealizedOutcome realized_outcome(const TransmissionDecision& decision, std::span<const double> gains,
                                 const LinkBudget& budget, const PowerSplit& split, const TargetRates& targets);

/// Sum of the target rates of the UEs that are not in outage.
double realized_rate(const TransmissionDecision& decision, std::span<const double> gains, const LinkBudget& budget,
                     const PowerSplit& split, const TargetRates& targets);

} // namespace lfnoma
