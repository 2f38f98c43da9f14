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

#include "lfnoma/strategy.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace lfnoma {

namespace {

constexpr std::size_t idx(Quadrant q) noexcept { return static_cast<std::size_t>(q); }

struct Selection {
    Branch branch = Branch::None;
    Group first = Group::StrongTwoBit;  // strong group for NOMA, scheduled group for SUT
    Group second = Group::WeakTwoBit;   // weak group for NOMA
};

bool group_nonempty(Group g, const std::array<bool, kNumQuadrants>& nonempty) noexcept
{
    for (std::size_t q = 0; q < kNumQuadrants; ++q)
        if (nonempty[q] && contains(g, static_cast<Quadrant>(q)))
            return true;
    return false;
}

Branch sut_branch(Group g) noexcept
{
    switch (g) {
    case Group::StrongTwoBit: return Branch::SutStrongTwoBit;
    case Group::WeakTwoBit: return Branch::SutWeakTwoBit;
    case Group::StrongAngle:
    case Group::StrongDistance: return Branch::SutStrongOneBit;
    case Group::WeakAngle:
    case Group::WeakDistance: return Branch::SutWeakOneBit;
    }
    return Branch::None;
}

Selection select(const std::array<bool, kNumQuadrants>& nonempty, StrategyKind kind) noexcept
{
    auto has = [&](Group g) { return group_nonempty(g, nonempty); };

    Group strong = Group::StrongTwoBit;
    Group weak = Group::WeakTwoBit;
    const bool angle = uses_angle_bit(kind);
    if (kind != StrategyKind::TwoBit) {
        strong = angle ? Group::StrongAngle : Group::StrongDistance;
        weak = angle ? Group::WeakAngle : Group::WeakDistance;
    }

    if (is_combined(kind)) {
        if (has(Group::StrongTwoBit) && has(Group::WeakTwoBit))
            return {Branch::NomaTwoBit, Group::StrongTwoBit, Group::WeakTwoBit};
        if (has(strong) && has(weak))
            return {Branch::NomaOneBit, strong, weak};
        for (Group g : {Group::StrongTwoBit, strong, weak})
            if (has(g))
                return {sut_branch(g), g, g};
        return {};
    }

    if (has(strong) && has(weak))
        return {kind == StrategyKind::TwoBit ? Branch::NomaTwoBit : Branch::NomaOneBit, strong, weak};
    for (Group g : {strong, weak})
        if (has(g))
            return {sut_branch(g), g, g};
    return {};
}

std::vector<std::size_t> members_of(Group g, const QuadrantSets& sets)
{
    std::vector<std::size_t> out;
    for (std::size_t q = 0; q < kNumQuadrants; ++q)
        if (contains(g, static_cast<Quadrant>(q)))
            out.insert(out.end(), sets.members[q].begin(), sets.members[q].end());
    return out;
}

std::size_t pick_uniform(const std::vector<std::size_t>& group, RandomStream& rng)
{
    auto i = static_cast<std::size_t>(uniform01(rng) * static_cast<double>(group.size()));
    return group[std::min(i, group.size() - 1)];
}

} // namespace

std::string_view strategy_label(StrategyKind kind) noexcept
{
    switch (kind) {
    case StrategyKind::TwoBit: return "2B";
    case StrategyKind::OneBitAngle: return "1B-A";
    case StrategyKind::OneBitDistance: return "1B-D";
    case StrategyKind::CombinedAngle: return "C-A";
    case StrategyKind::CombinedDistance: return "C-D";
    }
    return "?";
}

bool is_combined(StrategyKind kind) noexcept
{
    return kind == StrategyKind::CombinedAngle || kind == StrategyKind::CombinedDistance;
}

bool uses_angle_bit(StrategyKind kind) noexcept
{
    return kind == StrategyKind::OneBitAngle || kind == StrategyKind::CombinedAngle;
}

std::string_view group_label(Group g) noexcept
{
    switch (g) {
    case Group::StrongTwoBit: return "S-2B";
    case Group::WeakTwoBit: return "W-2B";
    case Group::StrongAngle: return "S-A";
    case Group::WeakAngle: return "W-A";
    case Group::StrongDistance: return "S-D";
    case Group::WeakDistance: return "W-D";
    }
    return "?";
}

bool contains(Group g, Quadrant q) noexcept
{
    switch (g) {
    case Group::StrongTwoBit: return q == Quadrant::StrongTwoBit;
    case Group::WeakTwoBit: return q == Quadrant::WeakTwoBit;
    case Group::StrongAngle: return q == Quadrant::StrongTwoBit || q == Quadrant::WeakBar;
    case Group::WeakAngle: return q == Quadrant::WeakTwoBit || q == Quadrant::StrongBar;
    case Group::StrongDistance: return q == Quadrant::StrongTwoBit || q == Quadrant::StrongBar;
    case Group::WeakDistance: return q == Quadrant::WeakTwoBit || q == Quadrant::WeakBar;
    }
    return false;
}

PowerSplit PowerSplit::from_strong_fraction(double s)
{
    PowerSplit p{s, 1.0 - s};
    p.validate();
    return p;
}

void PowerSplit::validate() const
{
    if (!(beta_sq_strong > 0.0) || !(beta_sq_weak > 0.0))
        throw std::invalid_argument("PowerSplit: power fractions must be positive");
    if (std::abs(beta_sq_strong + beta_sq_weak - 1.0) > 1e-12)
        throw std::invalid_argument("PowerSplit: power fractions must sum to 1");
    if (beta_sq_weak < beta_sq_strong)
        throw std::invalid_argument("PowerSplit: the weak UE must receive at least as much power as the strong UE");
}

double TargetRates::eps_strong() const noexcept { return std::exp2(r_strong) - 1.0; }
double TargetRates::eps_weak() const noexcept { return std::exp2(r_weak) - 1.0; }
double TargetRates::eps_sut() const noexcept { return std::exp2(r_sut) - 1.0; }

void TargetRates::validate() const
{
    if (!(r_strong > 0.0) || !(r_weak > 0.0) || !(r_sut > 0.0))
        throw std::invalid_argument("TargetRates: target rates must be positive");
}

FeedbackBits quantize(const UserEquipment& ue, const Thresholds& th, double theta_bar) noexcept
{
    return {std::abs(theta_bar - ue.angle) <= th.theta_th, ue.distance <= th.d_th};
}

Quadrant classify(const FeedbackBits& bits) noexcept
{
    if (bits.angle_bit)
        return bits.distance_bit ? Quadrant::StrongTwoBit : Quadrant::WeakBar;
    return bits.distance_bit ? Quadrant::StrongBar : Quadrant::WeakTwoBit;
}

Quadrant classify(const UserEquipment& ue, const Thresholds& th, double theta_bar) noexcept
{
    return classify(quantize(ue, th, theta_bar));
}

QuadrantSets partition(const Deployment& users, const Thresholds& th, double theta_bar)
{
    QuadrantSets sets;
    for (std::size_t i = 0; i < users.size(); ++i)
        sets.members[idx(classify(users[i], th, theta_bar))].push_back(i);
    return sets;
}

GroupSets form_groups(const Deployment& users, const Thresholds& th, double theta_bar, StrategyKind kind)
{
    GroupSets out;
    for (std::size_t i = 0; i < users.size(); ++i) {
        const FeedbackBits bits = quantize(users[i], th, theta_bar);
        if (kind == StrategyKind::TwoBit) {
            switch (classify(bits)) {
            case Quadrant::StrongTwoBit: out.strong.push_back(i); break;
            case Quadrant::WeakTwoBit: out.weak.push_back(i); break;
            case Quadrant::StrongBar: out.strong_bar.push_back(i); break;
            case Quadrant::WeakBar: out.weak_bar.push_back(i); break;
            }
            continue;
        }
        const bool strong = uses_angle_bit(kind) ? bits.angle_bit : bits.distance_bit;
        (strong ? out.strong : out.weak).push_back(i);
    }
    return out;
}

std::string_view branch_label(Branch b) noexcept
{
    switch (b) {
    case Branch::NomaTwoBit: return "noma_2b";
    case Branch::NomaOneBit: return "noma_1b";
    case Branch::SutStrongTwoBit: return "sut_s_2b";
    case Branch::SutWeakTwoBit: return "sut_w_2b";
    case Branch::SutStrongOneBit: return "sut_s_1b";
    case Branch::SutWeakOneBit: return "sut_w_1b";
    case Branch::None: return "none";
    }
    return "?";
}

Branch branch_of(const TransmissionDecision& decision) noexcept
{
    if (const auto* pair = std::get_if<NomaPair>(&decision))
        return pair->source == PairingSource::TwoBit ? Branch::NomaTwoBit : Branch::NomaOneBit;
    if (const auto* single = std::get_if<SingleUser>(&decision))
        return sut_branch(single->source);
    return Branch::None;
}

Branch decide_branch(const std::array<bool, kNumQuadrants>& nonempty, StrategyKind kind) noexcept
{
    return select(nonempty, kind).branch;
}

TransmissionDecision decide(const Deployment& users, const Thresholds& th, double theta_bar, StrategyKind kind,
                            RandomStream& rng)
{
    const QuadrantSets sets = partition(users, th, theta_bar);
    std::array<bool, kNumQuadrants> nonempty{};
    for (std::size_t q = 0; q < kNumQuadrants; ++q)
        nonempty[q] = !sets.members[q].empty();

    const Selection s = select(nonempty, kind);
    switch (s.branch) {
    case Branch::None:
        return NoTransmission{};
    case Branch::NomaTwoBit:
    case Branch::NomaOneBit: {
        const auto strong = members_of(s.first, sets);
        const auto weak = members_of(s.second, sets);
        NomaPair pair;
        pair.strong = pick_uniform(strong, rng);
        pair.weak = pick_uniform(weak, rng);
        pair.source = s.branch == Branch::NomaTwoBit ? PairingSource::TwoBit : PairingSource::OneBit;
        return pair;
    }
    default:
        return SingleUser{pick_uniform(members_of(s.first, sets), rng), s.first};
    }
}

NomaSinr noma_sinr(double gain_strong, double gain_weak, double snr, const PowerSplit& split) noexcept
{
    const double bs = split.beta_sq_strong;
    const double bw = split.beta_sq_weak;

    // Decoding the weak UE's message treats the strong UE's share as noise.
    auto weak_msg = [&](double g) {
        if (snr == 0.0 || g == 0.0)
            return 0.0;
        if (std::isinf(g))
            return bs > 0.0 ? bw / bs : g;
        return snr * g * bw / (snr * g * bs + 1.0);
    };
    auto own_strong = [&](double g) {
        if (snr == 0.0 || g == 0.0 || bs == 0.0)
            return 0.0;
        return snr * g * bs;
    };

    return {weak_msg(gain_strong), own_strong(gain_strong), weak_msg(gain_weak)};
}

double sut_snr(double gain, double snr) noexcept
{
    if (snr == 0.0 || gain == 0.0)
        return 0.0;
    return snr * gain;
}

SinrReport sinr(const TransmissionDecision& decision, std::span<const double> gains, const LinkBudget& budget,
                const PowerSplit& split)
{
    SinrReport r;
    if (const auto* pair = std::get_if<NomaPair>(&decision))
        r.value = noma_sinr(gains[pair->strong], gains[pair->weak], budget.snr_linear, split);
    else if (const auto* single = std::get_if<SingleUser>(&decision))
        r.value = sut_snr(gains[single->index], budget.snr_linear);
    return r;
}

RealizedOutcome realized_outcome(const TransmissionDecision& decision, std::span<const double> gains,
                                 const LinkBudget& budget, const PowerSplit& split, const TargetRates& targets)
{
    RealizedOutcome out;
    if (const auto* pair = std::get_if<NomaPair>(&decision)) {
        const double gs = gains[pair->strong];
        const double gw = gains[pair->weak];
        const NomaSinr s = noma_sinr(gs, gw, budget.snr_linear, split);
        out.strong_ok = std::isinf(gs) ||
                        (s.weak_msg_at_strong > targets.eps_weak() && s.own_at_strong > targets.eps_strong());
        out.weak_ok = std::isinf(gw) || s.weak_msg_at_weak > targets.eps_weak();
        out.rate = (out.strong_ok ? targets.r_strong : 0.0) + (out.weak_ok ? targets.r_weak : 0.0);
    } else if (const auto* single = std::get_if<SingleUser>(&decision)) {
        const double g = gains[single->index];
        out.sut_ok = std::isinf(g) || std::log2(1.0 + sut_snr(g, budget.snr_linear)) > targets.r_sut;
        out.rate = out.sut_ok ? targets.r_sut : 0.0;
    }
    return out;
}

double realized_rate(const TransmissionDecision& decision, std::span<const double> gains, const LinkBudget& budget,
                     const PowerSplit& split, const TargetRates& targets)
{
    return realized_outcome(decision, gains, budget, split, targets).rate;
}

} // namespace lfnoma
