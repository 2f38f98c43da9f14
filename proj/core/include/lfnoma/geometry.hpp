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

// Polar sector user region, feedback thresholds and Poisson deployments.

#include "lfnoma/rng.hpp"

#include <numbers>
#include <vector>

namespace lfnoma {

constexpr double deg_to_rad(double deg) noexcept { return deg * std::numbers::pi / 180.0; }
constexpr double rad_to_deg(double rad) noexcept { return rad * 180.0 / std::numbers::pi; }

/// Annular sector {d_min <= d <= d_max, |theta - theta_bar| <= delta/2}.
/// All angles are radians.
class UserRegion {
public:
    UserRegion(double d_min, double d_max, double delta, double theta_bar = 0.0);

    double d_min() const noexcept { return d_min_; }
    double d_max() const noexcept { return d_max_; }
    double delta() const noexcept { return delta_; }
    double theta_bar() const noexcept { return theta_bar_; }
    double half_width() const noexcept { return 0.5 * delta_; }

    /// d_max^2 - d_min^2, the radial measure used by every normalisation.
    double radial_measure() const noexcept { return d_max_ * d_max_ - d_min_ * d_min_; }
    double area() const noexcept { return 0.5 * delta_ * radial_measure(); }

    bool contains(double distance, double angle) const noexcept;

    friend bool operator==(const UserRegion&, const UserRegion&) = default;

private:
    double d_min_;
    double d_max_;
    double delta_;
    double theta_bar_;
};

/// One-bit quantiser levels for distance and angle feedback.
struct Thresholds {
    double d_th = 0.0;
    double theta_th = 0.0;
    double c_d = 0.0;
    double c_theta = 0.0;
};

/// d_th = d_min + c_d (d_max - d_min), theta_th = c_theta delta / 2.
/// Throws std::domain_error when a coefficient lies outside [0, 1].
Thresholds thresholds_from_coefficients(const UserRegion& region, double c_d, double c_theta);

/// Pr(|theta_bar - theta_k| <= theta_th) for a uniformly placed UE.
double angle_probability(const UserRegion& region, const Thresholds& th) noexcept;

/// Pr(d_k <= d_th) for a uniformly placed UE: (d_th^2 - d_min^2) / (d_max^2 - d_min^2).
double distance_probability(const UserRegion& region, const Thresholds& th) noexcept;

/// HPPP intensity over the region plus the per-UE fading law.
struct DeploymentModel {
    double density = 0.0;         // UEs per m^2
    double fading_variance = 1.0; // E|alpha|^2
};

/// Expected UE count mu = (d_max^2 - d_min^2) (delta / 2) lambda.
double expected_count(const UserRegion& region, double density) noexcept;

struct UserEquipment {
    double distance = 0.0;     // m
    double angle = 0.0;        // rad
    double fading_power = 0.0; // |alpha|^2
};

using Deployment = std::vector<UserEquipment>;

/// A single UE uniformly distributed over the region with exponential fading power.
UserEquipment sample_user(const UserRegion& region, double fading_variance, RandomStream& rng);

/// K ~ Poisson(mu) UEs, each drawn i.i.d. by sample_user.
Deployment sample_deployment(const UserRegion& region, const DeploymentModel& model, RandomStream& rng);

} // namespace lfnoma
