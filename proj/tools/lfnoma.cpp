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

// lfnoma: run a sweep from a config file and write CSV.
//
//   lfnoma snr-sweep --config table2.cfg --out rates.csv
//   lfnoma geometry-map --analytic-only --deterministic
//
// Exit status: 0 on success, 2 on a configuration error, 3 when --verify
// finds an analytic value outside the Monte Carlo confidence band.

#include "lfnoma/experiments.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>

namespace {

constexpr int kExitConfig = 2;
constexpr int kExitVerify = 3;

using Runner = std::function<lfnoma::SweepResult(const lfnoma::ExperimentConfig&, const lfnoma::RunOptions&)>;

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Limited-feedback NOMA sum-rate analysis and simulation"};
    app.require_subcommand(1);

    std::string config_path;
    std::string out_path;
    std::optional<std::uint64_t> trials;
    std::optional<std::uint64_t> seed;
    std::string strategies;
    bool analytic_only = false;
    bool deterministic = false;
    bool verify = false;

    const std::map<std::string, std::pair<std::string, Runner>> commands = {
        {"snr-sweep", {"Hybrid sum rate against transmit SNR", lfnoma::run_snr_sweep}},
        {"threshold-grid", {"Analytic rate over (c_theta, c_d)", lfnoma::run_threshold_grid}},
        {"power-sweep", {"Rate against the strong UE's power share", lfnoma::run_power_sweep}},
        {"geometry-map", {"Best strategy over (d_max, delta)", lfnoma::run_geometry_map}},
        {"occurrence", {"Branch occurrence probabilities against c_theta", lfnoma::run_occurrence_report}},
    };

    for (const auto& [name, entry] : commands) {
        CLI::App* sub = app.add_subcommand(name, entry.first);
        sub->add_option("--config", config_path, "Config file (key = value); defaults apply when omitted")
            ->check(CLI::ExistingFile);
        sub->add_option("--out", out_path, "CSV output path (overrides output.path; '-' for stdout)");
        sub->add_option("--trials", trials, "Monte Carlo trials per operating point")->check(CLI::PositiveNumber);
        sub->add_option("--seed", seed, "Base seed");
        sub->add_option("--strategies", strategies, "Comma-separated labels: 2B,1B-A,1B-D,C-A,C-D,FULL,OMA-<kind>");
        sub->add_flag("--analytic-only", analytic_only, "Skip Monte Carlo");
        sub->add_flag("--deterministic", deterministic, "Omit the timestamp line");
        sub->add_flag("--verify", verify, "Fail with status 3 if analytic and Monte Carlo values disagree");
    }

    CLI11_PARSE(app, argc, argv);

    lfnoma::ExperimentConfig cfg;
    try {
        std::string text;
        if (!config_path.empty()) {
            std::ifstream in(config_path);
            text.assign(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
        }
        cfg = lfnoma::parse_config(text);
        if (!strategies.empty()) {
            cfg.curves.clear();
            std::stringstream ss(strategies);
            for (std::string label; std::getline(ss, label, ',');) {
                try {
                    cfg.curves.push_back(lfnoma::Curve::parse(label));
                } catch (const std::invalid_argument& e) {
                    throw lfnoma::ConfigError(0, std::string("--strategies: ") + e.what());
                }
            }
        }
        if (trials)
            cfg.trials.num_trials = *trials;
        if (seed)
            cfg.trials.base_seed = *seed;
        if (!out_path.empty())
            cfg.output_path = out_path;
        cfg.validate();
    } catch (const lfnoma::ConfigError& e) {
        std::cerr << "lfnoma: " << e.what() << '\n';
        return kExitConfig;
    }

    if (verify && analytic_only) {
        std::cerr << "lfnoma: --verify needs Monte Carlo; drop --analytic-only\n";
        return kExitConfig;
    }

    const std::string name = app.get_subcommands().front()->get_name();
    lfnoma::SweepResult result;
    try {
        result = commands.at(name).second(cfg, lfnoma::RunOptions{analytic_only});
    } catch (const lfnoma::ConfigError& e) {
        std::cerr << "lfnoma: " << e.what() << '\n';
        return kExitConfig;
    } catch (const std::invalid_argument& e) {
        std::cerr << "lfnoma: invalid parameters: " << e.what() << '\n';
        return kExitConfig;
    }

    if (cfg.output_path.empty() || cfg.output_path == "-") {
        lfnoma::write_csv(std::cout, result, deterministic);
    } else {
        std::ofstream out(cfg.output_path);
        if (!out) {
            std::cerr << "lfnoma: cannot write '" << cfg.output_path << "'\n";
            return 1;
        }
        lfnoma::write_csv(out, result, deterministic);
    }

    if (verify) {
        const lfnoma::VerifyReport rep = lfnoma::verify(result);
        for (const auto& f : rep.failures)
            std::cerr << "verify: " << f << '\n';
        std::cerr << "verify: " << rep.checked - rep.failures.size() << '/' << rep.checked << " within 3 SE\n";
        if (!rep.ok())
            return kExitVerify;
    }
    return 0;
}
