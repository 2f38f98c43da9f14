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

#include "lfnoma/montecarlo.hpp"

#include <array>
#include <cmath>
#include <stdexcept>
#include <vector>

namespace lfnoma {

namespace {

// Emptiness pattern over (S2B, W2B, S-bar, W-bar), bit q set when quadrant q
// holds at least one UE.
using PatternProbs = std::array<double, 16>;

constexpr bool has(unsigned pattern, Quadrant q) noexcept
{
    return (pattern >> static_cast<unsigned>(q)) & 1u;
}

// Scheduling outcome written out from the feedback tables, kept apart from
// the production selection code on purpose.
Branch pattern_branch(StrategyKind kind, unsigned pattern) noexcept
{
    const bool s2b = has(pattern, Quadrant::StrongTwoBit);
    const bool w2b = has(pattern, Quadrant::WeakTwoBit);
    const bool sbar = has(pattern, Quadrant::StrongBar);
    const bool wbar = has(pattern, Quadrant::WeakBar);

    if (kind == StrategyKind::TwoBit) {
        if (s2b && w2b)
            return Branch::NomaTwoBit;
        if (s2b)
            return Branch::SutStrongTwoBit;
        if (w2b)
            return Branch::SutWeakTwoBit;
        return Branch::None;
    }

    // Angle: near-and-out-of-beam UEs report "weak", far-and-in-beam report "strong".
    const bool angle = kind == StrategyKind::OneBitAngle || kind == StrategyKind::CombinedAngle;
    const bool strong_t = s2b || (angle ? wbar : sbar);
    const bool weak_t = w2b || (angle ? sbar : wbar);

    if (kind == StrategyKind::OneBitAngle || kind == StrategyKind::OneBitDistance) {
        if (strong_t && weak_t)
            return Branch::NomaOneBit;
        if (strong_t)
            return Branch::SutStrongOneBit;
        if (weak_t)
            return Branch::SutWeakOneBit;
        return Branch::None;
    }

    if (s2b && w2b)
        return Branch::NomaTwoBit;
    if (strong_t && weak_t)
        return Branch::NomaOneBit;
    if (s2b)
        return Branch::SutStrongTwoBit;
    if (strong_t)
        return Branch::SutStrongOneBit;
    if (weak_t)
        return Branch::SutWeakOneBit;
    return Branch::None;
}

// Pr(emptiness pattern | K = k) by summing the multinomial over all count
// vectors (n0, n1, n2, n3) with n0 + n1 + n2 + n3 = k.
PatternProbs pattern_probs_given_k(int k, const std::array<double, 4>& mass)
{
    std::vector<double> factorial(static_cast<std::size_t>(k) + 1, 1.0);
    for (int i = 1; i <= k; ++i)
        factorial[i] = factorial[i - 1] * i;
    std::array<std::vector<double>, 4> power;
    for (std::size_t q = 0; q < 4; ++q) {
        power[q].assign(static_cast<std::size_t>(k) + 1, 1.0);
        for (int i = 1; i <= k; ++i)
            power[q][i] = power[q][i - 1] * mass[q];
    }

    PatternProbs out{};
    for (int n0 = 0; n0 <= k; ++n0) {
        for (int n1 = 0; n0 + n1 <= k; ++n1) {
            for (int n2 = 0; n0 + n1 + n2 <= k; ++n2) {
                const int n3 = k - n0 - n1 - n2;
                const double coef = factorial[k] / (factorial[n0] * factorial[n1] * factorial[n2] * factorial[n3]);
                const double p = coef * power[0][n0] * power[1][n1] * power[2][n2] * power[3][n3];
                const unsigned pattern = (n0 > 0 ? 1u : 0u) | (n1 > 0 ? 2u : 0u) | (n2 > 0 ? 4u : 0u) |
                                         (n3 > 0 ? 8u : 0u);
                out[pattern] += p;
            }
        }
    }
    return out;
}

std::array<double, 4> masses(double p_theta, double p_d)
{
    const QuadrantMasses m = QuadrantMasses::from(p_theta, p_d);
    return {m[Quadrant::StrongTwoBit], m[Quadrant::WeakTwoBit], m[Quadrant::StrongBar], m[Quadrant::WeakBar]};
}

OccurrenceProbs to_branches(StrategyKind kind, const PatternProbs& pp)
{
    OccurrenceProbs o;
    o.kind = kind;
    for (unsigned pattern = 0; pattern < pp.size(); ++pattern)
        o[pattern_branch(kind, pattern)] += pp[pattern];
    return o;
}

} // namespace

OccurrenceProbs oracle_occurrence_given_k(StrategyKind kind, int k, double p_theta, double p_d)
{
    if (k < 0)
        throw std::invalid_argument("oracle_occurrence_given_k: k must be non-negative");
    return to_branches(kind, pattern_probs_given_k(k, masses(p_theta, p_d)));
}

OracleOccurrence oracle_occurrence(StrategyKind kind, double mu, double p_theta, double p_d, int k_max)
{
    if (k_max < 1)
        throw std::invalid_argument("oracle_occurrence: k_max must be at least 1");
    if (!(mu >= 0.0))
        throw std::invalid_argument("oracle_occurrence: mu must be non-negative");

    const std::array<double, 4> m = masses(p_theta, p_d);
    PatternProbs total{};
    double pmf = std::exp(-mu);
    for (int k = 0; k <= k_max; ++k) {
        if (k > 0)
            pmf *= mu / k;
        const PatternProbs given = pattern_probs_given_k(k, m);
        for (std::size_t i = 0; i < total.size(); ++i)
            total[i] += pmf * given[i];
    }

    // Poisson tail summed term by term until the terms stop contributing.
    double tail = 0.0;
    for (int k = k_max + 1; k < k_max + 100000; ++k) {
        pmf *= mu / k;
        tail += pmf;
        if (pmf <= tail * 1e-17 || pmf == 0.0)
            break;
    }

    OracleOccurrence out;
    out.probs = to_branches(kind, total);
    out.tail_bound = tail;
    return out;
}

} // namespace lfnoma
