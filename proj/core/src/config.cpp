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

#include <charconv>
#include <cstdio>
#include <fstream>
#include <functional>
#include <map>
#include <set>
#include <sstream>

namespace lfnoma {

namespace {

std::string_view trim(std::string_view s)
{
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string_view::npos)
        return {};
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

std::vector<std::string_view> split_list(std::string_view s)
{
    std::vector<std::string_view> out;
    while (true) {
        const auto comma = s.find(',');
        out.push_back(trim(s.substr(0, comma)));
        if (comma == std::string_view::npos)
            break;
        s.remove_prefix(comma + 1);
    }
    return out;
}

double to_double(std::string_view v, std::size_t line)
{
    double x = 0.0;
    const auto [end, ec] = std::from_chars(v.data(), v.data() + v.size(), x);
    if (ec != std::errc() || end != v.data() + v.size() || v.empty())
        throw ConfigError(line, "expected a number, got '" + std::string(v) + "'");
    return x;
}

std::uint64_t to_uint(std::string_view v, std::size_t line)
{
    std::uint64_t x = 0;
    const auto [end, ec] = std::from_chars(v.data(), v.data() + v.size(), x);
    if (ec != std::errc() || end != v.data() + v.size() || v.empty())
        throw ConfigError(line, "expected a non-negative integer, got '" + std::string(v) + "'");
    return x;
}

std::vector<double> to_doubles(std::string_view v, std::size_t line)
{
    std::vector<double> out;
    for (std::string_view item : split_list(v))
        out.push_back(to_double(item, line));
    return out;
}

std::string fmt(double x)
{
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

std::string fmt_list(const std::vector<double>& xs)
{
    std::string s;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        if (i)
            s += ", ";
        s += fmt(xs[i]);
    }
    return s;
}

// Region parameters are collected raw and validated once all keys are read.
struct RegionDraft {
    double d_min, d_max, delta, theta_bar;
    std::size_t line = 0;
};

void require(bool cond, std::size_t line, const std::string& message)
{
    if (!cond)
        throw ConfigError(line, message);
}

} // namespace

ConfigError::ConfigError(std::size_t line, const std::string& message)
    : std::runtime_error(line > 0 ? "config line " + std::to_string(line) + ": " + message : "config: " + message),
      line_(line)
{
}

std::string Curve::label() const
{
    switch (type) {
    case CurveType::Noma: return std::string(strategy_label(kind));
    case CurveType::Oma: return "OMA-" + std::string(strategy_label(kind));
    case CurveType::FullCsi: return "FULL";
    }
    return {};
}

Curve Curve::parse(std::string_view label)
{
    if (label == "FULL")
        return {CurveType::FullCsi, StrategyKind::TwoBit};
    CurveType type = CurveType::Noma;
    if (label.starts_with("OMA-")) {
        type = CurveType::Oma;
        label.remove_prefix(4);
    }
    for (StrategyKind k : kAllStrategies)
        if (strategy_label(k) == label)
            return {type, k};
    throw std::invalid_argument("unknown strategy label '" + std::string(label) + "'");
}

void ExperimentConfig::validate() const
{
    try {
        scenario.validate();
        trials.validate();
        quadrature.validate();
    } catch (const ConfigError&) {
        throw;
    } catch (const std::exception& e) {
        throw ConfigError(0, e.what());
    }
    require(!snr_db.empty(), 0, "link.snr_db_list must not be empty");
    require(!curves.empty(), 0, "strategies must not be empty");
    auto in_unit = [](const std::vector<double>& xs) {
        for (double x : xs)
            if (!(x >= 0.0 && x <= 1.0))
                return false;
        return !xs.empty();
    };
    require(in_unit(grid.c_theta), 0, "grid.c_theta_list needs values in [0, 1]");
    require(in_unit(grid.c_d), 0, "grid.c_d_list needs values in [0, 1]");
    require(!grid.beta_sq_strong.empty(), 0, "grid.beta_sq_strong_list must not be empty");
    for (double b : grid.beta_sq_strong)
        require(b > 0.0 && b <= 0.5, 0, "grid.beta_sq_strong_list needs values in (0, 0.5]");
    require(!grid.d_max_m.empty(), 0, "grid.d_max_list must not be empty");
    for (double d : grid.d_max_m)
        require(d > scenario.region.d_min(), 0, "grid.d_max_list values must exceed region.d_min_m");
    require(!grid.delta_rad.empty(), 0, "grid.delta_deg_list must not be empty");
    for (double d : grid.delta_rad)
        require(d > 0.0 && d <= std::numbers::pi, 0, "grid.delta_deg_list values must lie in (0, 180]");
}

ExperimentConfig parse_config(std::string_view text)
{
    ExperimentConfig cfg;
    const UserRegion& r0 = cfg.scenario.region;
    RegionDraft region{r0.d_min(), r0.d_max(), r0.delta(), r0.theta_bar()};
    double beta_sq_strong = cfg.scenario.split.beta_sq_strong;

    using Setter = std::function<void(std::string_view, std::size_t)>;
    auto region_key = [&](double& field, double scale) -> Setter {
        return [&field, &region, scale](std::string_view v, std::size_t line) {
            field = to_double(v, line) * scale;
            region.line = line;
        };
    };
    auto number = [](double& field) -> Setter {
        return [&field](std::string_view v, std::size_t line) { field = to_double(v, line); };
    };
    auto integer = [](auto& field) -> Setter {
        return [&field](std::string_view v, std::size_t line) {
            field = static_cast<std::remove_reference_t<decltype(field)>>(to_uint(v, line));
        };
    };
    auto list = [](std::vector<double>& field, double scale) -> Setter {
        return [&field, scale](std::string_view v, std::size_t line) {
            field = to_doubles(v, line);
            for (double& x : field)
                x *= scale;
        };
    };
    const double deg = deg_to_rad(1.0);
    Scenario& sc = cfg.scenario;

    const std::map<std::string, Setter, std::less<>> setters = {
        {"region.d_min_m", region_key(region.d_min, 1.0)},
        {"region.d_max_m", region_key(region.d_max, 1.0)},
        {"region.delta_deg", region_key(region.delta, deg)},
        {"region.delta_rad", region_key(region.delta, 1.0)},
        {"region.theta_bar_deg", region_key(region.theta_bar, deg)},
        {"region.theta_bar_rad", region_key(region.theta_bar, 1.0)},
        {"deployment.density_per_m2", number(sc.density)},
        {"array.num_elements", integer(sc.array.num_elements)},
        {"array.spacing_over_wavelength", number(sc.array.spacing_over_wavelength)},
        {"link.snr_db_list", list(cfg.snr_db, 1.0)},
        {"link.path_loss_exponent", number(sc.link.path_loss_exponent)},
        {"link.fading_variance", number(sc.link.fading_variance)},
        {"thresholds.c_theta", number(sc.c_theta)},
        {"thresholds.c_d", number(sc.c_d)},
        {"split.beta_sq_strong", number(beta_sq_strong)},
        {"targets.r_strong", number(sc.targets.r_strong)},
        {"targets.r_weak", number(sc.targets.r_weak)},
        {"targets.r_sut", number(sc.targets.r_sut)},
        {"strategies",
         [&](std::string_view v, std::size_t line) {
             cfg.curves.clear();
             for (std::string_view item : split_list(v)) {
                 try {
                     cfg.curves.push_back(Curve::parse(item));
                 } catch (const std::invalid_argument& e) {
                     throw ConfigError(line, e.what());
                 }
             }
         }},
        {"trials.num", integer(cfg.trials.num_trials)},
        {"trials.seed", integer(cfg.trials.base_seed)},
        {"trials.chunk_size", integer(cfg.trials.chunk_size)},
        {"quadrature.nodes_radial", integer(cfg.quadrature.nodes_radial)},
        {"quadrature.nodes_angular", integer(cfg.quadrature.nodes_angular)},
        {"quadrature.tolerance", number(cfg.quadrature.refinement_tolerance)},
        {"quadrature.max_nodes", integer(cfg.quadrature.max_nodes)},
        {"grid.snr_db", number(cfg.grid.snr_db)},
        {"grid.c_theta_list", list(cfg.grid.c_theta, 1.0)},
        {"grid.c_d_list", list(cfg.grid.c_d, 1.0)},
        {"grid.beta_sq_strong_list", list(cfg.grid.beta_sq_strong, 1.0)},
        {"grid.d_max_list", list(cfg.grid.d_max_m, 1.0)},
        {"grid.delta_deg_list", list(cfg.grid.delta_rad, deg)},
        {"grid.delta_rad_list", list(cfg.grid.delta_rad, 1.0)},
        {"output.path", [&](std::string_view v, std::size_t) { cfg.output_path = std::string(v); }},
    };
    // Keys that name the same quantity in different units.
    const std::map<std::string, std::string, std::less<>> canonical = {
        {"region.delta_deg", "region.delta"},        {"region.delta_rad", "region.delta"},
        {"region.theta_bar_deg", "region.theta_bar"}, {"region.theta_bar_rad", "region.theta_bar"},
        {"grid.delta_deg_list", "grid.delta"},         {"grid.delta_rad_list", "grid.delta"},
    };

    std::set<std::string, std::less<>> seen;
    std::size_t line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        const auto nl = text.find('\n', pos);
        std::string_view line = text.substr(pos, nl == std::string_view::npos ? text.size() - pos : nl - pos);
        pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
        ++line_no;

        if (const auto hash = line.find('#'); hash != std::string_view::npos)
            line = line.substr(0, hash);
        line = trim(line);
        if (line.empty())
            continue;
        const auto eq = line.find('=');
        if (eq == std::string_view::npos)
            throw ConfigError(line_no, "expected 'key = value'");
        const std::string_view key = trim(line.substr(0, eq));
        const std::string_view value = trim(line.substr(eq + 1));

        const auto it = setters.find(key);
        if (it == setters.end())
            throw ConfigError(line_no, "unknown key '" + std::string(key) + "'");
        const auto c = canonical.find(key);
        const std::string id = c != canonical.end() ? c->second : std::string(key);
        if (!seen.insert(id).second)
            throw ConfigError(line_no, "duplicate setting for '" + std::string(key) + "'");
        if (value.empty())
            throw ConfigError(line_no, "missing value for '" + std::string(key) + "'");
        it->second(value, line_no);
    }

    try {
        sc.region = UserRegion(region.d_min, region.d_max, region.delta, region.theta_bar);
    } catch (const std::invalid_argument& e) {
        throw ConfigError(region.line, e.what());
    }
    if (!(beta_sq_strong > 0.0 && beta_sq_strong <= 0.5))
        throw ConfigError(0, "split.beta_sq_strong must lie in (0, 0.5]");
    sc.split = PowerSplit::from_strong_fraction(beta_sq_strong);
    cfg.validate();
    return cfg;
}

ExperimentConfig load_config(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        throw ConfigError(0, "cannot open '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_config(ss.str());
}

std::string serialize_config(const ExperimentConfig& cfg)
{
    const Scenario& sc = cfg.scenario;
    std::ostringstream os;
    auto kv = [&](const char* key, const std::string& value) { os << key << " = " << value << '\n'; };
    auto num = [](std::uint64_t v) { return std::to_string(v); };

    std::string curves;
    for (std::size_t i = 0; i < cfg.curves.size(); ++i)
        curves += (i ? ", " : "") + cfg.curves[i].label();

    kv("region.d_min_m", fmt(sc.region.d_min()));
    kv("region.d_max_m", fmt(sc.region.d_max()));
    kv("region.delta_rad", fmt(sc.region.delta()));
    kv("region.theta_bar_rad", fmt(sc.region.theta_bar()));
    kv("deployment.density_per_m2", fmt(sc.density));
    kv("array.num_elements", std::to_string(sc.array.num_elements));
    kv("array.spacing_over_wavelength", fmt(sc.array.spacing_over_wavelength));
    kv("link.snr_db_list", fmt_list(cfg.snr_db));
    kv("link.path_loss_exponent", fmt(sc.link.path_loss_exponent));
    kv("link.fading_variance", fmt(sc.link.fading_variance));
    kv("thresholds.c_theta", fmt(sc.c_theta));
    kv("thresholds.c_d", fmt(sc.c_d));
    kv("split.beta_sq_strong", fmt(sc.split.beta_sq_strong));
    kv("targets.r_strong", fmt(sc.targets.r_strong));
    kv("targets.r_weak", fmt(sc.targets.r_weak));
    kv("targets.r_sut", fmt(sc.targets.r_sut));
    kv("strategies", curves);
    kv("trials.num", num(cfg.trials.num_trials));
    kv("trials.seed", num(cfg.trials.base_seed));
    kv("trials.chunk_size", num(cfg.trials.chunk_size));
    kv("quadrature.nodes_radial", num(cfg.quadrature.nodes_radial));
    kv("quadrature.nodes_angular", num(cfg.quadrature.nodes_angular));
    kv("quadrature.tolerance", fmt(cfg.quadrature.refinement_tolerance));
    kv("quadrature.max_nodes", num(cfg.quadrature.max_nodes));
    kv("grid.snr_db", fmt(cfg.grid.snr_db));
    kv("grid.c_theta_list", fmt_list(cfg.grid.c_theta));
    kv("grid.c_d_list", fmt_list(cfg.grid.c_d));
    kv("grid.beta_sq_strong_list", fmt_list(cfg.grid.beta_sq_strong));
    kv("grid.d_max_list", fmt_list(cfg.grid.d_max_m));
    kv("grid.delta_rad_list", fmt_list(cfg.grid.delta_rad));
    if (!cfg.output_path.empty())
        kv("output.path", cfg.output_path);
    return os.str();
}

} // namespace lfnoma
