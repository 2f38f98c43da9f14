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

#pragma once

// Gauss-Legendre rules and tensor-product integration over rectangles.

#include <cstddef>
#include <functional>
#include <vector>

namespace lfnoma {

/// n-point Gauss-Legendre nodes and weights on [-1, 1], nodes ascending.
struct GaussLegendreRule {
    std::vector<double> nodes;
    std::vector<double> weights;

    std::size_t size() const noexcept { return nodes.size(); }
};

/// Rules are computed once per n and cached; safe to call concurrently.
const GaussLegendreRule& gauss_legendre(std::size_t n);

/// Nodes/weights of the rule mapped affinely onto [a, b].
GaussLegendreRule map_rule(const GaussLegendreRule& rule, double a, double b);

/// Tensor-product rule over [x0, x1] x [y0, y1].
double integrate_rectangle(const std::function<double(double, double)>& f, double x0, double x1, double y0, double y1,
                           std::size_t nx, std::size_t ny);

} // namespace lfnoma
