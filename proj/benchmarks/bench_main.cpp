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

#include <benchmark/benchmark.h>

using namespace lfnoma;

static void BM_FejerKernel(benchmark::State& state)
{
    const ArrayConfig array;
    double theta = 0.01;
    for (auto _ : state) {
        benchmark::DoNotOptimize(fejer_kernel(array, 0.0, theta));
        theta += 1e-7;
    }
}
BENCHMARK(BM_FejerKernel);

// Fixed-grid CDF evaluation at the given node count per axis.
static void BM_GainCdfEvaluate(benchmark::State& state)
{
    const Scenario sc = default_scenario();
    const Thresholds th = sc.thresholds();
    const GainCdf cdf(gain_region(CdfSpec{GroupRole::Strong, FeedbackType::Angle}, sc.region, th), sc.region, th,
                      sc.array, sc.link);
    const auto n = static_cast<std::size_t>(state.range(0));
    for (auto _ : state)
        benchmark::DoNotOptimize(cdf.evaluate_at(2.55e-3, n, n));
}
BENCHMARK(BM_GainCdfEvaluate)->Arg(64)->Arg(256)->Arg(512)->Unit(benchmark::kMicrosecond);

static void BM_AnalyticHybridRate(benchmark::State& state)
{
    const Scenario sc = default_scenario();
    const auto kind = static_cast<StrategyKind>(state.range(0));
    for (auto _ : state)
        benchmark::DoNotOptimize(analytic_hybrid_rate(kind, sc).hybrid);
}
BENCHMARK(BM_AnalyticHybridRate)->DenseRange(0, 4)->Unit(benchmark::kMillisecond);

static void BM_SimulateTrials(benchmark::State& state)
{
    const Scenario sc = default_scenario();
    TrialPlan plan;
    plan.num_trials = static_cast<std::uint64_t>(state.range(0));
    plan.workers = 1;
    SimulationRequest req;
    req.kinds.assign(kAllStrategies.begin(), kAllStrategies.end());
    for (auto _ : state)
        benchmark::DoNotOptimize(simulate(sc, req, plan).stats(StrategyKind::TwoBit).hybrid_rate().mean);
    state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_SimulateTrials)->Arg(1 << 14)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
