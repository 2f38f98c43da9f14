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

#include "lfnoma/scenario.hpp"

#include <stdexcept>

namespace lfnoma {

Thresholds Scenario::thresholds() const
{
    return thresholds_from_coefficients(region, c_d, c_theta);
}

DeploymentModel Scenario::deployment() const
{
    return {density, link.fading_variance};
}

double Scenario::mu() const
{
    return expected_count(region, density);
}

double Scenario::p_theta() const
{
    return angle_probability(region, thresholds());
}

double Scenario::p_d() const
{
    return distance_probability(region, thresholds());
}

Scenario Scenario::with_snr_db(double snr_db) const
{
    Scenario s = *this;
    s.link.snr_linear = db_to_linear(snr_db);
    return s;
}

void Scenario::validate() const
{
    if (!(density >= 0.0))
        throw std::invalid_argument("Scenario: density must be non-negative");
    array.validate();
    link.validate();
    split.validate();
    targets.validate();
    (void)thresholds();
}

Scenario default_scenario(double snr_db)
{
    Scenario s;
    s.link = LinkBudget::from_snr_db(snr_db);
    return s;
}

} // namespace lfnoma
