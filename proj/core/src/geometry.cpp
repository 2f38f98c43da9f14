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

#include "lfnoma/geometry.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace lfnoma {

UserRegion::UserRegion(double d_min, double d_max, double delta, double theta_bar)
    : d_min_(d_min), d_max_(d_max), delta_(delta), theta_bar_(theta_bar)
{
    if (!(d_min >= 0.0) || !(d_max > d_min) || !std::isfinite(d_max))
        throw std::invalid_argument("UserRegion: need 0 <= d_min < d_max, got d_min=" + std::to_string(d_min) +
                                    ", d_max=" + std::to_string(d_max));
    if (!(delta > 0.0) || delta > std::numbers::pi)
        throw std::invalid_argument("UserRegion: center angle must lie in (0, pi] rad, got " + std::to_string(delta));
    if (!std::isfinite(theta_bar))
        throw std::invalid_argument("UserRegion: theta_bar must be finite");
}

bool UserRegion::contains(double distance, double angle) const noexcept
{
    return distance >= d_min_ && distance <= d_max_ && std::abs(angle - theta_bar_) <= half_width();
}

Thresholds thresholds_from_coefficients(const UserRegion& region, double c_d, double c_theta)
{
    if (!(c_d >= 0.0 && c_d <= 1.0))
        throw std::domain_error("distance threshold coefficient must lie in [0, 1], got " + std::to_string(c_d));
    if (!(c_theta >= 0.0 && c_theta <= 1.0))
        throw std::domain_error("angle threshold coefficient must lie in [0, 1], got " + std::to_string(c_theta));

    Thresholds th;
    th.c_d = c_d;
    th.c_theta = c_theta;
    th.d_th = c_d == 1.0 ? region.d_max() : region.d_min() + c_d * (region.d_max() - region.d_min());
    th.theta_th = c_theta * region.half_width();
    return th;
}

double angle_probability(const UserRegion& region, const Thresholds& th) noexcept
{
    return 2.0 * th.theta_th / region.delta();
}

double distance_probability(const UserRegion& region, const Thresholds& th) noexcept
{
    const double lo = region.d_min() * region.d_min();
    return (th.d_th * th.d_th - lo) / region.radial_measure();
}

double expected_count(const UserRegion& region, double density) noexcept
{
    return region.radial_measure() * region.half_width() * density;
}

UserEquipment sample_user(const UserRegion& region, double fading_variance, RandomStream& rng)
{
    // d^2 is uniform on [d_min^2, d_max^2]; the angle is uniform over the sector.
    const double lo = region.d_min() * region.d_min();
    UserEquipment ue;
    ue.distance = std::sqrt(lo + uniform01(rng) * region.radial_measure());
    ue.angle = region.theta_bar() + (uniform01(rng) - 0.5) * region.delta();
    ue.fading_power = -fading_variance * std::log1p(-uniform01(rng));
    return ue;
}

Deployment sample_deployment(const UserRegion& region, const DeploymentModel& model, RandomStream& rng)
{
    const double mu = expected_count(region, model.density);
    Deployment users;
    if (!(mu > 0.0))
        return users;
    std::poisson_distribution<long> count(mu);
    const long k = count(rng);
    users.reserve(static_cast<std::size_t>(k));
    for (long i = 0; i < k; ++i)
        users.push_back(sample_user(region, model.fading_variance, rng));
    return users;
}

} // namespace lfnoma
