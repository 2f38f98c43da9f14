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

#include "lfnoma/channel.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <numeric>
#include <stdexcept>
#include <thread>

namespace lfnoma {

void TrialPlan::validate() const
{
    if (num_trials < 1)
        throw std::invalid_argument("TrialPlan: need at least one trial");
    if (chunk_size < 1)
        throw std::invalid_argument("TrialPlan: chunk size must be positive");
}

std::uint64_t TrialPlan::num_chunks() const noexcept
{
    return chunk_size == 0 ? 0 : (num_trials + chunk_size - 1) / chunk_size;
}

std::uint64_t TrialPlan::chunk_trials(std::uint64_t i) const noexcept
{
    const std::uint64_t start = i * chunk_size;
    return start >= num_trials ? 0 : std::min(chunk_size, num_trials - start);
}

Estimate Accumulator::estimate() const noexcept
{
    Estimate e;
    e.num_samples = count;
    if (count == 0)
        return e;
    const double n = static_cast<double>(count);
    e.mean = sum / n;
    if (count > 1) {
        const double var = std::max(0.0, (sum_sq - n * e.mean * e.mean) / (n - 1.0));
        e.std_error = std::sqrt(var / n);
    }
    return e;
}

Estimate proportion(std::uint64_t hits, std::uint64_t n) noexcept
{
    Estimate e;
    e.num_samples = n;
    if (n == 0)
        return e;
    const double p = static_cast<double>(hits) / static_cast<double>(n);
    e.mean = p;
    e.std_error = std::sqrt(p * (1.0 - p) / static_cast<double>(n));
    return e;
}

void for_each_chunk(const TrialPlan& plan,
                    const std::function<void(std::uint64_t, std::uint64_t, RandomStream&)>& fn)
{
    plan.validate();
    const std::uint64_t chunks = plan.num_chunks();
    unsigned workers = plan.workers != 0 ? plan.workers : std::max(1u, std::thread::hardware_concurrency());
    workers = static_cast<unsigned>(std::min<std::uint64_t>(workers, chunks));

    auto run_one = [&](std::uint64_t i) {
        RandomStream rng = derive_stream(plan.base_seed, i);
        fn(i, plan.chunk_trials(i), rng);
    };

    if (workers <= 1) {
        for (std::uint64_t i = 0; i < chunks; ++i)
            run_one(i);
        return;
    }

    std::atomic<std::uint64_t> next{0};
    std::exception_ptr error;
    std::mutex error_mutex;
    {
        std::vector<std::jthread> pool;
        pool.reserve(workers);
        for (unsigned w = 0; w < workers; ++w) {
            pool.emplace_back([&] {
                for (std::uint64_t i = next++; i < chunks; i = next++) {
                    try {
                        run_one(i);
                    } catch (...) {
                        std::lock_guard lock(error_mutex);
                        if (!error)
                            error = std::current_exception();
                        next = chunks;
                    }
                }
            });
        }
    }
    if (error)
        std::rethrow_exception(error);
}

Estimate StrategyStats::frequency(Branch b) const noexcept
{
    const std::uint64_t n = rate.count;
    return proportion(branch[static_cast<std::size_t>(b)].trials, n);
}

Estimate StrategyStats::strong_outage(Branch b) const noexcept
{
    const auto& c = branch[static_cast<std::size_t>(b)];
    return proportion(c.strong_fail, c.trials);
}

Estimate StrategyStats::weak_outage(Branch b) const noexcept
{
    const auto& c = branch[static_cast<std::size_t>(b)];
    return proportion(c.weak_fail, c.trials);
}

Estimate StrategyStats::sut_outage(Branch b) const noexcept
{
    const auto& c = branch[static_cast<std::size_t>(b)];
    return proportion(c.sut_fail, c.trials);
}

const StrategyStats& SimulationResult::stats(StrategyKind kind) const
{
    for (const auto& s : strategies)
        if (s.kind == kind)
            return s;
    throw std::out_of_range("SimulationResult: strategy was not simulated");
}

std::vector<double> deployment_gains(const Deployment& users, const Scenario& sc)
{
    std::vector<double> g;
    g.reserve(users.size());
    for (const auto& ue : users)
        g.push_back(effective_gain(ue, sc.array, sc.link, sc.region.theta_bar()));
    return g;
}

TransmissionDecision full_csi_decision(std::span<const double> gains)
{
    if (gains.size() < kFullCsiWeakRank)
        return NoTransmission{};
    std::vector<std::size_t> idx(gains.size());
    std::iota(idx.begin(), idx.end(), std::size_t{0});
    std::partial_sort(idx.begin(), idx.begin() + kFullCsiWeakRank, idx.end(), [&](std::size_t a, std::size_t b) {
        return gains[a] != gains[b] ? gains[a] > gains[b] : a < b;
    });
    NomaPair pair;
    pair.strong = idx[0];
    pair.weak = idx[kFullCsiWeakRank - 1];
    return pair;
}

namespace {

std::uint64_t pick_seed(std::uint64_t base_seed, StrategyKind kind) noexcept
{
    return splitmix64(base_seed ^ (0xD1B54A32D192ED03ULL * (static_cast<std::uint64_t>(kind) + 1)));
}

double oma_rate(const TransmissionDecision& decision, std::span<const double> gains, const Scenario& sc)
{
    const auto* pair = std::get_if<NomaPair>(&decision);
    if (pair == nullptr)
        return realized_rate(decision, gains, sc.link, sc.split, sc.targets);
    auto ok = [&](double g, double target) {
        return std::isinf(g) || 0.5 * std::log2(1.0 + sut_snr(g, sc.link.snr_linear)) > target;
    };
    return (ok(gains[pair->strong], sc.targets.r_strong) ? sc.targets.r_strong : 0.0) +
           (ok(gains[pair->weak], sc.targets.r_weak) ? sc.targets.r_weak : 0.0);
}

void record(StrategyStats& s, const TransmissionDecision& decision, const RealizedOutcome& out)
{
    s.rate.add(out.rate);
    const Branch b = branch_of(decision);
    auto& c = s.branch[static_cast<std::size_t>(b)];
    ++c.trials;
    if (b == Branch::NomaTwoBit || b == Branch::NomaOneBit) {
        c.strong_fail += out.strong_ok ? 0 : 1;
        c.weak_fail += out.weak_ok ? 0 : 1;
    } else if (b != Branch::None) {
        c.sut_fail += out.sut_ok ? 0 : 1;
    }
}

void merge(StrategyStats& into, const StrategyStats& from)
{
    into.rate.merge(from.rate);
    for (std::size_t i = 0; i < kNumBranches; ++i) {
        into.branch[i].trials += from.branch[i].trials;
        into.branch[i].strong_fail += from.branch[i].strong_fail;
        into.branch[i].weak_fail += from.branch[i].weak_fail;
        into.branch[i].sut_fail += from.branch[i].sut_fail;
    }
}

} // namespace

SimulationResult simulate(const Scenario& sc, const SimulationRequest& request, const TrialPlan& plan)
{
    sc.validate();
    plan.validate();

    // Every kind that needs a decision, each with its own pick stream.
    std::vector<StrategyKind> deciders = request.kinds;
    for (StrategyKind k : request.oma_kinds)
        if (std::find(deciders.begin(), deciders.end(), k) == deciders.end())
            deciders.push_back(k);
    auto slot_of = [&](StrategyKind k) {
        return static_cast<std::size_t>(std::find(deciders.begin(), deciders.end(), k) - deciders.begin());
    };

    SimulationResult proto;
    for (StrategyKind k : request.kinds)
        proto.strategies.push_back(StrategyStats{k, {}, {}});
    proto.oma.resize(request.oma_kinds.size());

    std::vector<SimulationResult> per_chunk(plan.num_chunks(), proto);
    const Thresholds th = sc.thresholds();
    const DeploymentModel model = sc.deployment();
    const double theta_bar = sc.region.theta_bar();

    for_each_chunk(plan, [&](std::uint64_t chunk, std::uint64_t trials, RandomStream& rng) {
        SimulationResult& out = per_chunk[chunk];
        std::vector<RandomStream> picks;
        picks.reserve(deciders.size());
        for (StrategyKind k : deciders)
            picks.push_back(derive_stream(pick_seed(plan.base_seed, k), chunk));
        std::vector<TransmissionDecision> decisions(deciders.size());

        for (std::uint64_t t = 0; t < trials; ++t) {
            const Deployment users = sample_deployment(sc.region, model, rng);
            const std::vector<double> gains = deployment_gains(users, sc);
            for (std::size_t d = 0; d < deciders.size(); ++d)
                decisions[d] = decide(users, th, theta_bar, deciders[d], picks[d]);

            for (std::size_t i = 0; i < request.kinds.size(); ++i) {
                const auto& dec = decisions[slot_of(request.kinds[i])];
                record(out.strategies[i], dec, realized_outcome(dec, gains, sc.link, sc.split, sc.targets));
            }
            for (std::size_t i = 0; i < request.oma_kinds.size(); ++i)
                out.oma[i].add(oma_rate(decisions[slot_of(request.oma_kinds[i])], gains, sc));
            if (request.full_csi)
                out.full_csi.add(realized_rate(full_csi_decision(gains), gains, sc.link, sc.split, sc.targets));
        }
    });

    SimulationResult total = proto;
    for (const auto& part : per_chunk) {
        for (std::size_t i = 0; i < total.strategies.size(); ++i)
            merge(total.strategies[i], part.strategies[i]);
        for (std::size_t i = 0; i < total.oma.size(); ++i)
            total.oma[i].merge(part.oma[i]);
        total.full_csi.merge(part.full_csi);
    }
    return total;
}

Estimate simulate_hybrid_rate(const Scenario& sc, StrategyKind kind, const TrialPlan& plan)
{
    return simulate(sc, {{kind}, {}, false}, plan).strategies.front().hybrid_rate();
}

Estimate OccurrenceFrequencies::operator[](Branch b) const noexcept
{
    return proportion(counts[static_cast<std::size_t>(b)], trials);
}

OccurrenceFrequencies simulate_occurrence(const Scenario& sc, StrategyKind kind, const TrialPlan& plan)
{
    const StrategyStats s = simulate_branch_outage(sc, kind, plan);
    OccurrenceFrequencies f;
    f.kind = kind;
    f.trials = s.rate.count;
    for (std::size_t i = 0; i < kNumBranches; ++i)
        f.counts[i] = s.branch[i].trials;
    return f;
}

StrategyStats simulate_branch_outage(const Scenario& sc, StrategyKind kind, const TrialPlan& plan)
{
    return simulate(sc, {{kind}, {}, false}, plan).strategies.front();
}

Estimate baseline_oma_rate(const Scenario& sc, StrategyKind kind, const TrialPlan& plan)
{
    return simulate(sc, {{}, {kind}, false}, plan).oma.front().estimate();
}

Estimate baseline_fullcsi_rate(const Scenario& sc, const TrialPlan& plan)
{
    return simulate(sc, {{}, {}, true}, plan).full_csi.estimate();
}

std::vector<double> sample_group_gains(const Scenario& sc, Group group, std::size_t n, RandomStream& rng)
{
    const Thresholds th = sc.thresholds();
    const QuadrantMasses m = QuadrantMasses::from(sc.p_theta(), sc.p_d());
    double mass = 0.0;
    for (Quadrant q : {Quadrant::StrongTwoBit, Quadrant::WeakTwoBit, Quadrant::StrongBar, Quadrant::WeakBar})
        if (contains(group, q))
            mass += m[q];
    if (!(mass > 0.0))
        throw std::invalid_argument("sample_group_gains: group has zero probability");

    double lo = sc.region.d_min();
    double hi = sc.region.d_max();
    switch (group) {
    case Group::StrongTwoBit:
    case Group::StrongDistance: hi = th.d_th; break;
    case Group::WeakTwoBit:
    case Group::WeakDistance: lo = th.d_th; break;
    default: break;
    }
    const UserRegion band(lo, hi, sc.region.delta(), sc.region.theta_bar());

    std::vector<double> gains;
    gains.reserve(n);
    while (gains.size() < n) {
        const UserEquipment ue = sample_user(band, sc.link.fading_variance, rng);
        if (contains(group, classify(ue, th, sc.region.theta_bar())))
            gains.push_back(effective_gain(ue, sc.array, sc.link, sc.region.theta_bar()));
    }
    return gains;
}

std::vector<double> sample_region_gains(const Scenario& sc, std::size_t n, RandomStream& rng)
{
    std::vector<double> gains;
    gains.reserve(n);
    for (std::size_t i = 0; i < n; ++i)
        gains.push_back(
            effective_gain(sample_user(sc.region, sc.link.fading_variance, rng), sc.array, sc.link,
                           sc.region.theta_bar()));
    return gains;
}

} // namespace lfnoma
