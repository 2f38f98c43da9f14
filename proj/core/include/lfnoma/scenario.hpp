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

#include "lfnoma/channel.hpp"
#include "lfnoma/geometry.hpp"
#include "lfnoma/strategy.hpp"

namespace lfnoma {

/// Full parameter set of one operating point: region, deployment density,
/// array, link budget, quantiser coefficients, power split and QoS targets.
struct Scenario {
    UserRegion region{0.0, 45.0, deg_to_rad(15.0), 0.0};
    double density = 0.01;
    ArrayConfig array{};
    LinkBudget link{};
    double c_theta = 0.1;
    double c_d = 0.2;
    PowerSplit split{};
    TargetRates targets{};

    Thresholds thresholds() const;
    DeploymentModel deployment() const;
    double mu() const;
    double p_theta() const;
    double p_d() const;

    Scenario with_snr_db(double snr_db) const;
    void validate() const;

    friend bool operator==(const Scenario&, const Scenario&) = default;
};

/// The reference operating point (M = 64, gamma = 2, 45 m x 15 deg sector,
/// lambda = 0.01, c_theta = 0.1, c_d = 0.2, beta^2 = 0.4 / 0.6, 8/1/8 bps/Hz).
Scenario default_scenario(double snr_db = 50.0);

} // namespace lfnoma
