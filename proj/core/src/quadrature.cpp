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

#include "lfnoma/quadrature.hpp"

#include <boost/math/special_functions/legendre.hpp>

#include <algorithm>
#include <map>
#include <memory>
#include <mutex>
#include <stdexcept>
#include <utility>

namespace lfnoma {

namespace {

GaussLegendreRule build_rule(std::size_t n)
{
    const int order = static_cast<int>(n);
    // legendre_p_zeros returns the non-negative zeros in ascending order.
    const std::vector<double> half = boost::math::legendre_p_zeros<double>(order);

    auto weight = [order](double x) {
        const double dp = boost::math::legendre_p_prime(order, x);
        return 2.0 / ((1.0 - x * x) * dp * dp);
    };
    std::vector<std::pair<double, double>> points;
    points.reserve(n);
    for (double x : half) {
        points.emplace_back(x, weight(x));
        if (x != 0.0)
            points.emplace_back(-x, weight(x));
    }
    std::sort(points.begin(), points.end());

    GaussLegendreRule rule;
    for (const auto& [x, w] : points) {
        rule.nodes.push_back(x);
        rule.weights.push_back(w);
    }
    return rule;
}

} // namespace

const GaussLegendreRule& gauss_legendre(std::size_t n)
{
    if (n < 1)
        throw std::invalid_argument("gauss_legendre: need at least one node");

    static std::mutex mutex;
    static std::map<std::size_t, std::unique_ptr<GaussLegendreRule>> cache;

    std::lock_guard lock(mutex);
    auto& slot = cache[n];
    if (!slot)
        slot = std::make_unique<GaussLegendreRule>(build_rule(n));
    return *slot;
}

GaussLegendreRule map_rule(const GaussLegendreRule& rule, double a, double b)
{
    const double half = 0.5 * (b - a);
    const double mid = 0.5 * (a + b);
    GaussLegendreRule out;
    out.nodes.resize(rule.size());
    out.weights.resize(rule.size());
    for (std::size_t i = 0; i < rule.size(); ++i) {
        out.nodes[i] = mid + half * rule.nodes[i];
        out.weights[i] = half * rule.weights[i];
    }
    return out;
}

double integrate_rectangle(const std::function<double(double, double)>& f, double x0, double x1, double y0, double y1,
                           std::size_t nx, std::size_t ny)
{
    const GaussLegendreRule rx = map_rule(gauss_legendre(nx), x0, x1);
    const GaussLegendreRule ry = map_rule(gauss_legendre(ny), y0, y1);
    double total = 0.0;
    for (std::size_t i = 0; i < rx.size(); ++i) {
        double row = 0.0;
        for (std::size_t j = 0; j < ry.size(); ++j)
            row += ry.weights[j] * f(rx.nodes[i], ry.nodes[j]);
        total += rx.weights[i] * row;
    }
    return total;
}

} // namespace lfnoma
