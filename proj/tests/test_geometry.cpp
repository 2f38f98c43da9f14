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

#include <catch_amalgamated.hpp>

#include <cmath>
#include <numbers>

using namespace lfnoma;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {

UserRegion reference_region() { return UserRegion(0.0, 45.0, deg_to_rad(15.0), 0.0); }

} // namespace

TEST_CASE("region rejects malformed geometry", "[geometry]")
{
    CHECK_THROWS_AS(UserRegion(-1.0, 45.0, 0.2), std::invalid_argument);
    CHECK_THROWS_AS(UserRegion(10.0, 10.0, 0.2), std::invalid_argument);
    CHECK_THROWS_AS(UserRegion(0.0, 45.0, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(UserRegion(0.0, 45.0, 4.0), std::invalid_argument);
    CHECK_NOTHROW(UserRegion(0.0, 45.0, std::numbers::pi));
}

TEST_CASE("thresholds follow the coefficient formulas", "[geometry]")
{
    const UserRegion r = reference_region();
    const Thresholds th = thresholds_from_coefficients(r, 0.2, 0.1);
    CHECK_THAT(th.d_th, WithinAbs(9.0, 1e-12));
    CHECK_THAT(rad_to_deg(th.theta_th), WithinAbs(0.75, 1e-12));

    CHECK(thresholds_from_coefficients(r, 1.0, 1.0).d_th == r.d_max());
    CHECK(thresholds_from_coefficients(r, 0.0, 0.0).d_th == r.d_min());
    CHECK_THROWS_AS(thresholds_from_coefficients(r, 1.1, 0.5), std::domain_error);
    CHECK_THROWS_AS(thresholds_from_coefficients(r, 0.5, -0.1), std::domain_error);
}

TEST_CASE("reference operating point probabilities", "[geometry]")
{
    // Frozen from tests/oracles/freeze_constants.py (40-digit arithmetic).
    const UserRegion r = reference_region();
    const Thresholds th = thresholds_from_coefficients(r, 0.2, 0.1);
    CHECK_THAT(expected_count(r, 0.01), WithinRel(2.6507188014663878, 1e-14));
    CHECK_THAT(angle_probability(r, th), WithinAbs(0.1, 1e-15));
    CHECK_THAT(distance_probability(r, th), WithinAbs(0.04, 1e-15));
}

TEST_CASE("probabilities of degenerate thresholds", "[geometry]")
{
    const UserRegion r(5.0, 20.0, 0.5);
    CHECK(angle_probability(r, thresholds_from_coefficients(r, 0.3, 0.0)) == 0.0);
    CHECK(angle_probability(r, thresholds_from_coefficients(r, 0.3, 1.0)) == 1.0);
    CHECK(distance_probability(r, thresholds_from_coefficients(r, 0.0, 0.3)) == 0.0);
    CHECK(distance_probability(r, thresholds_from_coefficients(r, 1.0, 0.3)) == 1.0);
}

TEST_CASE("sampled users are uniform over the sector", "[geometry]")
{
    const UserRegion r(3.0, 40.0, deg_to_rad(20.0), deg_to_rad(10.0));
    const Thresholds th = thresholds_from_coefficients(r, 0.35, 0.4);
    RandomStream rng = derive_stream(7, 0);

    constexpr int n = 200000;
    int near = 0, in_beam = 0;
    double fading = 0.0;
    for (int i = 0; i < n; ++i) {
        const UserEquipment ue = sample_user(r, 2.5, rng);
        REQUIRE(r.contains(ue.distance, ue.angle));
        near += ue.distance <= th.d_th;
        in_beam += std::abs(ue.angle - r.theta_bar()) <= th.theta_th;
        fading += ue.fading_power;
    }
    auto within = [](double freq, double p) { return std::abs(freq - p) <= 5.0 * std::sqrt(p * (1 - p) / n); };
    CHECK(within(static_cast<double>(near) / n, distance_probability(r, th)));
    CHECK(within(static_cast<double>(in_beam) / n, angle_probability(r, th)));
    CHECK_THAT(fading / n, WithinAbs(2.5, 5.0 * 2.5 / std::sqrt(n)));
}

TEST_CASE("deployment size is Poisson with the expected mean", "[geometry]")
{
    const UserRegion r = reference_region();
    const DeploymentModel model{0.01, 1.0};
    const double mu = expected_count(r, model.density);
    RandomStream rng = derive_stream(11, 3);

    constexpr int n = 100000;
    double sum = 0.0, sum_sq = 0.0;
    int empty = 0;
    for (int i = 0; i < n; ++i) {
        const auto k = static_cast<double>(sample_deployment(r, model, rng).size());
        sum += k;
        sum_sq += k * k;
        empty += k == 0.0;
    }
    const double mean = sum / n;
    CHECK_THAT(mean, WithinAbs(mu, 5.0 * std::sqrt(mu / n)));
    CHECK_THAT(sum_sq / n - mean * mean, WithinRel(mu, 0.03));
    const double p0 = std::exp(-mu);
    CHECK_THAT(static_cast<double>(empty) / n, WithinAbs(p0, 5.0 * std::sqrt(p0 * (1 - p0) / n)));
}

TEST_CASE("zero density gives empty deployments", "[geometry]")
{
    RandomStream rng = derive_stream(1, 1);
    CHECK(sample_deployment(reference_region(), {0.0, 1.0}, rng).empty());
}

TEST_CASE("derived streams are reproducible and distinct", "[geometry]")
{
    RandomStream a = derive_stream(42, 5);
    RandomStream b = derive_stream(42, 5);
    RandomStream c = derive_stream(42, 6);
    RandomStream d = derive_stream(43, 5);
    const auto x = a();
    CHECK(x == b());
    CHECK(x != c());
    CHECK(x != d());
}
