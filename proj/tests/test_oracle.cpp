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

#include "lfnoma/analytics.hpp"
#include "lfnoma/montecarlo.hpp"

#include <catch_amalgamated.hpp>

#include <cmath>
#include <random>

using namespace lfnoma;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

TEST_CASE("fixed-K enumeration by hand", "[oracle]")
{
    // Three UEs, each in the strong angle group with probability 1/2: NOMA
    // needs both groups occupied, 1 - 2 (1/2)^3 = 0.75.
    const OccurrenceProbs o = oracle_occurrence_given_k(StrategyKind::OneBitAngle, 3, 0.5, 0.3);
    CHECK_THAT(o[Branch::NomaOneBit], WithinAbs(0.75, 1e-15));
    CHECK_THAT(o[Branch::SutStrongOneBit], WithinAbs(0.125, 1e-15));
    CHECK_THAT(o[Branch::SutWeakOneBit], WithinAbs(0.125, 1e-15));

    const OccurrenceProbs none = oracle_occurrence_given_k(StrategyKind::CombinedDistance, 0, 0.5, 0.5);
    CHECK(none[Branch::None] == 1.0);

    for (StrategyKind k : kAllStrategies)
        for (int n : {1, 2, 7, 25})
            CHECK_THAT(oracle_occurrence_given_k(k, n, 0.3, 0.7).total(), WithinAbs(1.0, 1e-13));
}

TEST_CASE("all mass in one quadrant", "[oracle]")
{
    const double mu = 2.0;
    for (StrategyKind k : kAllStrategies) {
        for (auto [pt, pd] : {std::pair{1.0, 1.0}, std::pair{0.0, 0.0}, std::pair{1.0, 0.0}, std::pair{0.0, 1.0}}) {
            const OracleOccurrence o = oracle_occurrence(k, mu, pt, pd);
            const OccurrenceProbs c = occurrence(k, mu, pt, pd);
            for (std::size_t b = 0; b < kNumBranches; ++b)
                CHECK_THAT(o.probs.p[b], WithinAbs(c.p[b], 1e-12));
        }
    }
}

TEST_CASE("enumeration agrees with the closed forms", "[oracle]")
{
    std::mt19937_64 rng(17);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    std::vector<std::array<double, 3>> points = {{2.6507188014663878, 0.1, 0.04}};
    for (int i = 0; i < 20; ++i)
        points.push_back({0.1 + 9.9 * u(rng), u(rng), u(rng)});

    for (const auto& [mu, pt, pd] : points) {
        for (StrategyKind k : kAllStrategies) {
            const OracleOccurrence o = oracle_occurrence(k, mu, pt, pd, 60);
            const OccurrenceProbs c = occurrence(k, mu, pt, pd);
            for (std::size_t b = 0; b < kNumBranches; ++b)
                REQUIRE_THAT(o.probs.p[b], WithinAbs(c.p[b], 1e-9));
        }
    }
}

TEST_CASE("truncation tail is reported", "[oracle]")
{
    const OracleOccurrence o = oracle_occurrence(StrategyKind::TwoBit, 2.6507188014663878, 0.1, 0.04, 60);
    // Pr(K > 60) for the reference mean, from an independent survival-function evaluation.
    CHECK_THAT(o.tail_bound, WithinRel(9.715126317451897e-60, 1e-9));

    const OracleOccurrence short_sum = oracle_occurrence(StrategyKind::TwoBit, 5.0, 0.3, 0.3, 5);
    CHECK_THAT(short_sum.probs.total() + short_sum.tail_bound, WithinAbs(1.0, 1e-13));
    CHECK_THROWS_AS(oracle_occurrence(StrategyKind::TwoBit, 1.0, 0.5, 0.5, 0), std::invalid_argument);
}
