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

#include "lfnoma/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <exception>
#include <functional>
#include <mutex>
#include <ostream>
#include <sstream>
#include <thread>

namespace lfnoma {

namespace {

// One trial contributes at most max(R_S + R_W, R_SUT).
double rate_resolution(const ExperimentConfig& cfg)
{
    const TargetRates& t = cfg.scenario.targets;
    return std::max(t.r_strong + t.r_weak, t.r_sut) / static_cast<double>(cfg.trials.num_trials);
}

// Runs fn(i) for i in [0, n) on a small pool; callers write to slot i.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn)
{
    const unsigned workers =
        static_cast<unsigned>(std::min<std::size_t>(std::max(1u, std::thread::hardware_concurrency()), n));
    if (workers <= 1) {
        for (std::size_t i = 0; i < n; ++i)
            fn(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr error;
    std::mutex error_mutex;
    {
        std::vector<std::jthread> pool;
        for (unsigned w = 0; w < workers; ++w) {
            pool.emplace_back([&] {
                for (std::size_t i = next++; i < n; i = next++) {
                    try {
                        fn(i);
                    } catch (...) {
                        std::lock_guard lock(error_mutex);
                        if (!error)
                            error = std::current_exception();
                        next = n;
                    }
                }
            });
        }
    }
    if (error)
        std::rethrow_exception(error);
}

std::vector<StrategyKind> noma_kinds(const std::vector<Curve>& curves)
{
    std::vector<StrategyKind> out;
    for (const Curve& c : curves)
        if (c.type == CurveType::Noma && std::find(out.begin(), out.end(), c.kind) == out.end())
            out.push_back(c.kind);
    return out;
}

SimulationRequest request_for(const std::vector<Curve>& curves)
{
    SimulationRequest req;
    req.kinds = noma_kinds(curves);
    for (const Curve& c : curves) {
        if (c.type == CurveType::Oma &&
            std::find(req.oma_kinds.begin(), req.oma_kinds.end(), c.kind) == req.oma_kinds.end())
            req.oma_kinds.push_back(c.kind);
        if (c.type == CurveType::FullCsi)
            req.full_csi = true;
    }
    return req;
}

Estimate curve_estimate(const SimulationResult& sim, const SimulationRequest& req, const Curve& c)
{
    switch (c.type) {
    case CurveType::Noma: return sim.stats(c.kind).hybrid_rate();
    case CurveType::Oma: {
        const auto it = std::find(req.oma_kinds.begin(), req.oma_kinds.end(), c.kind);
        return sim.oma[static_cast<std::size_t>(it - req.oma_kinds.begin())].estimate();
    }
    case CurveType::FullCsi: return sim.full_csi.estimate();
    }
    return {};
}

// Analytic and simulated rate rows for one operating point, one row per curve.
// `prefix` holds the sweep coordinates.
void rate_rows(SweepResult& out, const std::vector<Cell>& prefix, const Scenario& sc, const ExperimentConfig& cfg,
               const std::vector<RateReport>& analytic, const RunOptions& opt)
{
    const SimulationRequest req = request_for(cfg.curves);
    SimulationResult sim;
    if (!opt.analytic_only)
        sim = simulate(sc, req, cfg.trials);

    const std::vector<StrategyKind> kinds = noma_kinds(cfg.curves);
    for (const Curve& c : cfg.curves) {
        std::vector<Cell> row = prefix;
        row.emplace_back(c.label());
        Cell rate, marginal;
        if (c.type == CurveType::Noma) {
            const auto k = static_cast<std::size_t>(std::find(kinds.begin(), kinds.end(), c.kind) - kinds.begin());
            rate = analytic[k].hybrid;
            if (analytic[k].hybrid_group_marginal)
                marginal = *analytic[k].hybrid_group_marginal;
        }
        row.push_back(rate);
        if (opt.analytic_only) {
            row.emplace_back(std::monostate{});
            row.emplace_back(std::monostate{});
        } else {
            const Estimate e = curve_estimate(sim, req, c);
            row.emplace_back(e.mean);
            row.emplace_back(e.std_error);
        }
        row.push_back(marginal);
        out.rows.push_back(std::move(row));
    }
}

// Analytic reports for every (scenario, NOMA kind) pair, computed in parallel.
std::vector<std::vector<RateReport>> analytic_table(const std::vector<Scenario>& scenarios,
                                                    const std::vector<StrategyKind>& kinds,
                                                    const QuadratureConfig& quad)
{
    std::vector<std::vector<RateReport>> out(scenarios.size(), std::vector<RateReport>(kinds.size()));
    parallel_for(scenarios.size() * kinds.size(), [&](std::size_t i) {
        const std::size_t s = kinds.empty() ? 0 : i / kinds.size();
        const std::size_t k = kinds.empty() ? 0 : i % kinds.size();
        out[s][k] = analytic_hybrid_rate(kinds[k], scenarios[s], quad);
    });
    return out;
}

std::string format_double(double x)
{
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", x);
    return buf;
}

std::string format_cell(const Cell& c)
{
    if (const auto* d = std::get_if<double>(&c))
        return format_double(*d);
    if (const auto* s = std::get_if<std::string>(&c)) {
        if (s->find_first_of(",\"\n") == std::string::npos)
            return *s;
        std::string q = "\"";
        for (char ch : *s)
            q += ch == '"' ? std::string("\"\"") : std::string(1, ch);
        return q + "\"";
    }
    return {};
}

} // namespace

std::size_t SweepResult::column(std::string_view name) const
{
    for (std::size_t i = 0; i < columns.size(); ++i)
        if (columns[i] == name)
            return i;
    throw std::out_of_range("SweepResult: no column '" + std::string(name) + "'");
}

SweepResult run_snr_sweep(const ExperimentConfig& cfg, const RunOptions& opt)
{
    cfg.validate();
    SweepResult out;
    out.columns = {"snr_db", "strategy", "analytic_rate", "mc_rate", "mc_se", "analytic_rate_marginal"};
    out.checks = {{2, 3, 4}};
    out.se_floor = rate_resolution(cfg);

    std::vector<Scenario> scenarios;
    for (double snr : cfg.snr_db)
        scenarios.push_back(cfg.scenario.with_snr_db(snr));
    const auto analytic = analytic_table(scenarios, noma_kinds(cfg.curves), cfg.quadrature);
    for (std::size_t i = 0; i < scenarios.size(); ++i)
        rate_rows(out, {cfg.snr_db[i]}, scenarios[i], cfg, analytic[i], opt);
    return out;
}

SweepResult run_threshold_grid(const ExperimentConfig& cfg, const RunOptions&)
{
    cfg.validate();
    SweepResult out;
    out.columns = {"c_theta", "c_d", "snr_db", "strategy", "analytic_rate"};

    std::vector<Scenario> scenarios;
    for (double ct : cfg.grid.c_theta) {
        for (double cd : cfg.grid.c_d) {
            Scenario sc = cfg.scenario.with_snr_db(cfg.grid.snr_db);
            sc.c_theta = ct;
            sc.c_d = cd;
            scenarios.push_back(sc);
        }
    }
    const std::vector<StrategyKind> kinds = noma_kinds(cfg.curves);
    const auto analytic = analytic_table(scenarios, kinds, cfg.quadrature);
    for (std::size_t i = 0; i < scenarios.size(); ++i)
        for (std::size_t k = 0; k < kinds.size(); ++k)
            out.rows.push_back({scenarios[i].c_theta, scenarios[i].c_d, cfg.grid.snr_db,
                                std::string(strategy_label(kinds[k])), analytic[i][k].hybrid});
    return out;
}

SweepResult run_power_sweep(const ExperimentConfig& cfg, const RunOptions& opt)
{
    cfg.validate();
    SweepResult out;
    out.columns = {"beta_sq_strong", "snr_db", "strategy", "analytic_rate", "mc_rate", "mc_se",
                   "analytic_rate_marginal"};
    out.checks = {{3, 4, 5}};
    out.se_floor = rate_resolution(cfg);

    std::vector<Scenario> scenarios;
    for (double b : cfg.grid.beta_sq_strong) {
        Scenario sc = cfg.scenario.with_snr_db(cfg.grid.snr_db);
        sc.split = PowerSplit::from_strong_fraction(b);
        scenarios.push_back(sc);
    }
    const auto analytic = analytic_table(scenarios, noma_kinds(cfg.curves), cfg.quadrature);
    for (std::size_t i = 0; i < scenarios.size(); ++i)
        rate_rows(out, {cfg.grid.beta_sq_strong[i], cfg.grid.snr_db}, scenarios[i], cfg, analytic[i], opt);
    return out;
}

SweepResult run_geometry_map(const ExperimentConfig& cfg, const RunOptions&)
{
    cfg.validate();
    const std::vector<StrategyKind> kinds = noma_kinds(cfg.curves);
    SweepResult out;
    out.columns = {"d_max_m", "delta_deg", "snr_db"};
    for (StrategyKind k : kinds)
        out.columns.push_back("rate_" + std::string(strategy_label(k)));
    out.columns.push_back("best_basic");
    out.columns.push_back("best_all");

    std::vector<Scenario> scenarios;
    const UserRegion& base = cfg.scenario.region;
    for (double d : cfg.grid.d_max_m) {
        for (double delta : cfg.grid.delta_rad) {
            Scenario sc = cfg.scenario.with_snr_db(cfg.grid.snr_db);
            sc.region = UserRegion(base.d_min(), d, delta, base.theta_bar());
            scenarios.push_back(sc);
        }
    }
    const auto analytic = analytic_table(scenarios, kinds, cfg.quadrature);

    const std::vector<StrategyKind> basic = {StrategyKind::TwoBit, StrategyKind::OneBitAngle,
                                             StrategyKind::OneBitDistance};
    for (std::size_t i = 0; i < scenarios.size(); ++i) {
        std::vector<Cell> row = {scenarios[i].region.d_max(), rad_to_deg(scenarios[i].region.delta()),
                                 cfg.grid.snr_db};
        Cell best_basic, best_all;
        double best_basic_rate = -1.0, best_all_rate = -1.0;
        for (std::size_t k = 0; k < kinds.size(); ++k) {
            const double r = analytic[i][k].hybrid;
            row.emplace_back(r);
            const std::string label(strategy_label(kinds[k]));
            if (r > best_all_rate) {
                best_all_rate = r;
                best_all = label;
            }
            if (std::find(basic.begin(), basic.end(), kinds[k]) != basic.end() && r > best_basic_rate) {
                best_basic_rate = r;
                best_basic = label;
            }
        }
        row.push_back(best_basic);
        row.push_back(best_all);
        out.rows.push_back(std::move(row));
    }
    return out;
}

SweepResult run_occurrence_report(const ExperimentConfig& cfg, const RunOptions& opt)
{
    cfg.validate();
    std::vector<StrategyKind> kinds = {StrategyKind::TwoBit};
    for (StrategyKind k : noma_kinds(cfg.curves))
        if (is_combined(k))
            kinds.push_back(k);
    if (kinds.size() == 1)
        kinds.push_back(StrategyKind::CombinedAngle);

    SweepResult out;
    out.columns = {"c_theta", "c_d", "strategy", "branch", "closed_form", "oracle", "mc_freq", "mc_se"};
    out.checks = {{4, 6, 7}};
    out.se_floor = 1.0 / static_cast<double>(cfg.trials.num_trials);

    for (double ct : cfg.grid.c_theta) {
        Scenario sc = cfg.scenario;
        sc.c_theta = ct;
        const double mu = sc.mu();
        const double pt = sc.p_theta();
        const double pd = sc.p_d();
        SimulationResult sim;
        if (!opt.analytic_only)
            sim = simulate(sc, {kinds, {}, false}, cfg.trials);

        for (StrategyKind k : kinds) {
            const OccurrenceProbs closed = occurrence(k, mu, pt, pd);
            const OracleOccurrence oracle = oracle_occurrence(k, mu, pt, pd);
            for (Branch b : branches_of(k)) {
                std::vector<Cell> row = {ct, sc.c_d, std::string(strategy_label(k)), std::string(branch_label(b)),
                                         closed[b], oracle.probs[b]};
                if (opt.analytic_only) {
                    row.emplace_back(std::monostate{});
                    row.emplace_back(std::monostate{});
                } else {
                    const Estimate e = sim.stats(k).frequency(b);
                    row.emplace_back(e.mean);
                    row.emplace_back(e.std_error);
                }
                out.rows.push_back(std::move(row));
            }
        }
    }
    return out;
}

VerifyReport verify(const SweepResult& result, double n_se, double abs_tol)
{
    VerifyReport rep;
    for (std::size_t r = 0; r < result.rows.size(); ++r) {
        const auto& row = result.rows[r];
        for (const auto& [ie, im, is] : result.checks) {
            const auto* expected = std::get_if<double>(&row[ie]);
            const auto* estimate = std::get_if<double>(&row[im]);
            const auto* se = std::get_if<double>(&row[is]);
            if (!expected || !estimate || !se)
                continue;
            ++rep.checked;
            if (std::abs(*expected - *estimate) <= n_se * std::max(*se, result.se_floor) + abs_tol)
                continue;
            std::ostringstream msg;
            msg << "row " << r + 1 << " (";
            for (std::size_t c = 0; c < std::min<std::size_t>(row.size(), ie); ++c)
                msg << (c ? ", " : "") << result.columns[c] << '=' << format_cell(row[c]);
            msg << "): " << result.columns[ie] << '=' << format_double(*expected) << ", "
                << result.columns[im] << '=' << format_double(*estimate) << " +/- " << format_double(*se);
            rep.failures.push_back(msg.str());
        }
    }
    return rep;
}

void write_csv(std::ostream& os, const SweepResult& result, bool deterministic)
{
    if (!deterministic) {
        const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
        std::tm tm{};
        gmtime_r(&now, &tm);
        char buf[32];
        std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
        os << "# generated " << buf << '\n';
    }
    for (std::size_t i = 0; i < result.columns.size(); ++i)
        os << (i ? "," : "") << result.columns[i];
    os << '\n';
    for (const auto& row : result.rows) {
        for (std::size_t i = 0; i < row.size(); ++i)
            os << (i ? "," : "") << format_cell(row[i]);
        os << '\n';
    }
}

std::string to_csv(const SweepResult& result, bool deterministic)
{
    std::ostringstream os;
    write_csv(os, result, deterministic);
    return os.str();
}

} // namespace lfnoma
