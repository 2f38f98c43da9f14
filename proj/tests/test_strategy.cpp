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

#include <catch_amalgamated.hpp>

#include <cmath>
#include <limits>
#include <optional>

using namespace lfnoma;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {

const UserRegion kRegion(0.0, 45.0, deg_to_rad(15.0), 0.0);
const Thresholds kTh = thresholds_from_coefficients(kRegion, 0.2, 0.1); // 9 m, 0.75 deg

UserEquipment in_quadrant(Quadrant q)
{
    const double in = 0.0, out = deg_to_rad(5.0), near = 5.0, far = 30.0;
    switch (q) {
    case Quadrant::StrongTwoBit: return {near, in, 1.0};
    case Quadrant::WeakTwoBit: return {far, out, 1.0};
    case Quadrant::StrongBar: return {near, out, 1.0};
    case Quadrant::WeakBar: return {far, in, 1.0};
    }
    return {};
}

Deployment deployment_of(bool s2b, bool w2b, bool sbar, bool wbar)
{
    Deployment d;
    if (s2b)
        d.push_back(in_quadrant(Quadrant::StrongTwoBit));
    if (w2b)
        d.push_back(in_quadrant(Quadrant::WeakTwoBit));
    if (sbar)
        d.push_back(in_quadrant(Quadrant::StrongBar));
    if (wbar)
        d.push_back(in_quadrant(Quadrant::WeakBar));
    return d;
}

// One deployment-scenario row: which quadrants hold UEs, whether combined
// NOMA pairs with angle (A) / distance (D) feedback, and otherwise the group
// the single scheduled UE comes from (nullopt: nobody is scheduled).
struct ScenarioRow {
    int id;
    bool s2b, w2b, sbar, wbar;
    bool noma_a, noma_d;
    std::optional<Group> sut_a, sut_d;
};

const ScenarioRow kRows[] = {
    {1, false, false, false, false, false, false, std::nullopt, std::nullopt},
    {2, false, false, false, true, false, false, Group::StrongAngle, Group::WeakDistance},
    {3, false, false, true, false, false, false, Group::WeakAngle, Group::StrongDistance},
    {4, false, false, true, true, true, true, std::nullopt, std::nullopt},
    {5, false, true, false, false, false, false, Group::WeakAngle, Group::WeakDistance},
    {6, false, true, false, true, true, false, std::nullopt, Group::WeakDistance},
    {7, false, true, true, false, false, true, Group::WeakAngle, std::nullopt},
    {8, false, true, true, true, true, true, std::nullopt, std::nullopt},
    {9, true, false, false, false, false, false, Group::StrongTwoBit, Group::StrongTwoBit},
    {10, true, false, false, true, false, true, Group::StrongTwoBit, std::nullopt},
    {11, true, false, true, false, true, false, std::nullopt, Group::StrongTwoBit},
    {12, true, false, true, true, true, true, std::nullopt, std::nullopt},
};

void check_row(const ScenarioRow& row, StrategyKind kind, bool noma, const std::optional<Group>& sut)
{
    RandomStream rng = derive_stream(1, static_cast<std::uint64_t>(row.id));
    const Deployment users = deployment_of(row.s2b, row.w2b, row.sbar, row.wbar);
    const TransmissionDecision d = decide(users, kTh, 0.0, kind, rng);
    INFO("row " << row.id << ", " << strategy_label(kind));
    if (noma) {
        const auto* pair = std::get_if<NomaPair>(&d);
        REQUIRE(pair != nullptr);
        CHECK(pair->source == PairingSource::OneBit);
        CHECK(branch_of(d) == Branch::NomaOneBit);
    } else if (sut) {
        const auto* single = std::get_if<SingleUser>(&d);
        REQUIRE(single != nullptr);
        CHECK(single->source == *sut);
        CHECK(contains(*sut, classify(users[single->index], kTh, 0.0)));
    } else {
        CHECK(std::holds_alternative<NoTransmission>(d));
    }
}

} // namespace

TEST_CASE("quantiser bits and quadrants", "[strategy]")
{
    for (Quadrant q : {Quadrant::StrongTwoBit, Quadrant::WeakTwoBit, Quadrant::StrongBar, Quadrant::WeakBar})
        CHECK(classify(in_quadrant(q), kTh, 0.0) == q);

    // Points on a threshold report the strong level.
    const FeedbackBits edge = quantize({kTh.d_th, kTh.theta_th, 1.0}, kTh, 0.0);
    CHECK(edge.distance_bit);
    CHECK(edge.angle_bit);
    CHECK(classify(FeedbackBits{true, false}) == Quadrant::WeakBar);
    CHECK(classify(FeedbackBits{false, true}) == Quadrant::StrongBar);
}

TEST_CASE("groups are unions of quadrants", "[strategy]")
{
    CHECK(contains(Group::StrongAngle, Quadrant::StrongTwoBit));
    CHECK(contains(Group::StrongAngle, Quadrant::WeakBar));
    CHECK(contains(Group::WeakAngle, Quadrant::StrongBar));
    CHECK(contains(Group::StrongDistance, Quadrant::StrongBar));
    CHECK(contains(Group::WeakDistance, Quadrant::WeakBar));
    CHECK_FALSE(contains(Group::StrongTwoBit, Quadrant::WeakBar));

    const Deployment users = deployment_of(true, true, true, true);
    const GroupSets a = form_groups(users, kTh, 0.0, StrategyKind::OneBitAngle);
    CHECK(a.strong.size() == 2);
    CHECK(a.weak.size() == 2);
    const GroupSets two = form_groups(users, kTh, 0.0, StrategyKind::TwoBit);
    CHECK(two.strong.size() == 1);
    CHECK(two.weak.size() == 1);
    CHECK(two.strong_bar.size() == 1);
    CHECK(two.weak_bar.size() == 1);
}

TEST_CASE("deployment-scenario table for combined NOMA", "[strategy]")
{
    for (const ScenarioRow& row : kRows) {
        if (row.s2b && row.w2b)
            continue;
        check_row(row, StrategyKind::CombinedAngle, row.noma_a, row.sut_a);
        check_row(row, StrategyKind::CombinedDistance, row.noma_d, row.sut_d);
    }
}

TEST_CASE("two-bit pairing takes precedence in combined NOMA", "[strategy]")
{
    RandomStream rng = derive_stream(3, 0);
    for (StrategyKind kind : {StrategyKind::CombinedAngle, StrategyKind::CombinedDistance, StrategyKind::TwoBit}) {
        const TransmissionDecision d = decide(deployment_of(true, true, true, true), kTh, 0.0, kind, rng);
        REQUIRE(std::holds_alternative<NomaPair>(d));
        CHECK(std::get<NomaPair>(d).source == PairingSource::TwoBit);
    }
}

TEST_CASE("decide and decide_branch agree on every emptiness pattern", "[strategy]")
{
    RandomStream rng = derive_stream(5, 0);
    for (unsigned pattern = 0; pattern < 16; ++pattern) {
        const std::array<bool, 4> nonempty = {(pattern & 1u) != 0, (pattern & 2u) != 0, (pattern & 4u) != 0,
                                              (pattern & 8u) != 0};
        const Deployment users = deployment_of(nonempty[0], nonempty[1], nonempty[2], nonempty[3]);
        for (StrategyKind kind : kAllStrategies)
            CHECK(branch_of(decide(users, kTh, 0.0, kind, rng)) == decide_branch(nonempty, kind));
    }
}

TEST_CASE("uniform pick within the selected group", "[strategy]")
{
    // Three strong two-bit UEs and one weak: each strong UE is paired a third of the time.
    Deployment users(3, in_quadrant(Quadrant::StrongTwoBit));
    users.push_back(in_quadrant(Quadrant::WeakTwoBit));
    RandomStream rng = derive_stream(9, 0);
    std::array<int, 3> hits{};
    constexpr int n = 30000;
    for (int i = 0; i < n; ++i) {
        const auto pair = std::get<NomaPair>(decide(users, kTh, 0.0, StrategyKind::TwoBit, rng));
        REQUIRE(pair.weak == 3);
        ++hits[pair.strong];
    }
    for (int h : hits)
        CHECK(std::abs(h / static_cast<double>(n) - 1.0 / 3.0) < 5.0 * std::sqrt(2.0 / 9.0 / n));
}

TEST_CASE("power split and target validation", "[strategy]")
{
    CHECK_NOTHROW(PowerSplit{}.validate());
    CHECK_THROWS_AS((PowerSplit{0.6, 0.4}.validate()), std::invalid_argument);
    CHECK_THROWS_AS((PowerSplit{0.0, 1.0}.validate()), std::invalid_argument);
    CHECK_THROWS_AS((PowerSplit{0.3, 0.6}.validate()), std::invalid_argument);
    const PowerSplit s = PowerSplit::from_strong_fraction(0.25);
    CHECK(s.beta_sq_weak == 0.75);

    const TargetRates t{};
    CHECK(t.eps_strong() == 255.0);
    CHECK(t.eps_weak() == 1.0);
    CHECK(t.eps_sut() == 255.0);
}

TEST_CASE("SIC SINR expressions", "[strategy]")
{
    const PowerSplit split{0.4, 0.6};
    const NomaSinr s = noma_sinr(2e-3, 1e-4, 1e5, split);
    CHECK_THAT(s.weak_msg_at_strong, WithinRel(200.0 * 0.6 / (200.0 * 0.4 + 1.0), 1e-14));
    CHECK_THAT(s.own_at_strong, WithinRel(80.0, 1e-14));
    CHECK_THAT(s.weak_msg_at_weak, WithinRel(10.0 * 0.6 / (10.0 * 0.4 + 1.0), 1e-14));

    const double inf = std::numeric_limits<double>::infinity();
    CHECK_THAT(noma_sinr(inf, 1.0, 1.0, split).weak_msg_at_strong, WithinRel(1.5, 1e-15));
    CHECK(noma_sinr(1.0, 1.0, 0.0, split).weak_msg_at_weak == 0.0);
    CHECK(sut_snr(0.5, 10.0) == 5.0);
}

TEST_CASE("realized outcome scores the decoded targets", "[strategy]")
{
    const LinkBudget budget = LinkBudget::from_snr_db(50.0);
    const PowerSplit split{0.4, 0.6};
    const TargetRates targets{};

    // eta_S = 637.5 and eta_W = 5 in units of rho g.
    const std::vector<double> gains = {700.0 / 1e5, 6.0 / 1e5, 600.0 / 1e5, 4.0 / 1e5};
    auto rate = [&](std::size_t s, std::size_t w) {
        return realized_rate(NomaPair{s, w, PairingSource::TwoBit}, gains, budget, split, targets);
    };
    CHECK(rate(0, 1) == 9.0);
    CHECK(rate(2, 1) == 1.0);
    CHECK(rate(0, 3) == 8.0);
    CHECK(rate(2, 3) == 0.0);

    CHECK(realized_rate(SingleUser{0, Group::StrongTwoBit}, gains, budget, split, targets) == 8.0);
    CHECK(realized_rate(SingleUser{2, Group::StrongTwoBit}, gains, budget, split, targets) == 8.0);
    CHECK(realized_rate(SingleUser{3, Group::WeakTwoBit}, gains, budget, split, targets) == 0.0);
    CHECK(realized_rate(NoTransmission{}, gains, budget, split, targets) == 0.0);

    const std::vector<double> unbounded = {std::numeric_limits<double>::infinity(), 1.0};
    CHECK(realized_outcome(NomaPair{0, 1, PairingSource::TwoBit}, unbounded, budget, split, targets).strong_ok);
}

TEST_CASE("labels", "[strategy]")
{
    CHECK(strategy_label(StrategyKind::TwoBit) == "2B");
    CHECK(strategy_label(StrategyKind::OneBitAngle) == "1B-A");
    CHECK(strategy_label(StrategyKind::OneBitDistance) == "1B-D");
    CHECK(strategy_label(StrategyKind::CombinedAngle) == "C-A");
    CHECK(strategy_label(StrategyKind::CombinedDistance) == "C-D");
    CHECK(branch_label(Branch::NomaOneBit) == "noma_1b");
}
