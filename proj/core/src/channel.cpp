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

#include "lfnoma/channel.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>

namespace lfnoma {

void ArrayConfig::validate() const
{
    if (num_elements < 1)
        throw std::invalid_argument("ArrayConfig: num_elements must be >= 1, got " + std::to_string(num_elements));
    if (!(spacing_over_wavelength > 0.0) || !std::isfinite(spacing_over_wavelength))
        throw std::invalid_argument("ArrayConfig: element spacing must be positive");
}

LinkBudget LinkBudget::from_snr_db(double snr_db, double path_loss_exponent, double fading_variance)
{
    LinkBudget b;
    b.snr_linear = db_to_linear(snr_db);
    b.path_loss_exponent = path_loss_exponent;
    b.fading_variance = fading_variance;
    return b;
}

void LinkBudget::validate() const
{
    if (!(snr_linear >= 0.0) || std::isnan(snr_linear))
        throw std::invalid_argument("LinkBudget: SNR must be non-negative");
    if (!(path_loss_exponent >= 0.0))
        throw std::invalid_argument("LinkBudget: path-loss exponent must be >= 0");
    if (!(fading_variance > 0.0))
        throw std::invalid_argument("LinkBudget: fading variance must be > 0");
    if (num_paths != 1)
        throw std::invalid_argument("LinkBudget: only the single LoS path is supported");
}

double db_to_linear(double db) noexcept
{
    return std::pow(10.0, db / 10.0);
}

double fejer_kernel(const ArrayConfig& array, double theta_bar, double theta)
{
    const double m = static_cast<double>(array.num_elements);
    const double psi = std::numbers::pi * array.spacing_over_wavelength * (std::sin(theta_bar) - std::sin(theta));
    const double den = std::sin(psi);

    if (std::abs(den) < 1e-6) {
        // Near psi = k pi the ratio tends to +-1; expand around the nearest multiple.
        const double eps = std::remainder(psi, std::numbers::pi);
        const double ratio = 1.0 - (m * m - 1.0) * eps * eps / 6.0;
        return ratio * ratio;
    }
    const double ratio = std::sin(m * psi) / (m * den);
    return std::min(ratio * ratio, 1.0);
}

std::vector<std::complex<double>> steering_vector(const ArrayConfig& array, double theta)
{
    const auto m = static_cast<std::size_t>(array.num_elements);
    const double scale = 1.0 / std::sqrt(static_cast<double>(m));
    const double phase_step = -2.0 * std::numbers::pi * array.spacing_over_wavelength * std::sin(theta);
    std::vector<std::complex<double>> a(m);
    for (std::size_t i = 0; i < m; ++i)
        a[i] = std::polar(scale, phase_step * static_cast<double>(i));
    return a;
}

double path_loss(double distance, double gamma) noexcept
{
    return std::pow(distance, gamma);
}

double effective_gain(const UserEquipment& ue, const ArrayConfig& array, const LinkBudget& budget, double theta_bar)
{
    const double pl = path_loss(ue.distance, budget.path_loss_exponent);
    if (pl == 0.0)
        return std::numeric_limits<double>::infinity();
    return ue.fading_power * fejer_kernel(array, theta_bar, ue.angle) / pl;
}

} // namespace lfnoma
