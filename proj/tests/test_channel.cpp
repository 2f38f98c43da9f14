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

#include <catch_amalgamated.hpp>

#include <cmath>
#include <complex>
#include <limits>
#include <numbers>
#include <random>

using namespace lfnoma;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {

double vector_gain(const ArrayConfig& array, double theta_bar, double theta)
{
    const auto a = steering_vector(array, theta_bar);
    const auto b = steering_vector(array, theta);
    std::complex<double> dot = 0.0;
    for (std::size_t m = 0; m < a.size(); ++m)
        dot += std::conj(a[m]) * b[m];
    return std::norm(dot);
}

} // namespace

TEST_CASE("kernel equals the steering-vector inner product", "[channel]")
{
    std::mt19937_64 rng(2024);
    std::uniform_real_distribution<double> angle(-std::numbers::pi / 2, std::numbers::pi / 2);
    for (int m : {1, 2, 7, 64, 128}) {
        const ArrayConfig array{m, 0.5};
        double worst = 0.0;
        for (int i = 0; i < 2000; ++i) {
            const double tb = angle(rng);
            const double t = angle(rng);
            worst = std::max(worst, std::abs(fejer_kernel(array, tb, t) - vector_gain(array, tb, t)));
        }
        CHECK(worst <= 1e-12);
    }
}

TEST_CASE("kernel shape", "[channel]")
{
    const ArrayConfig array{64, 0.5};
    CHECK(fejer_kernel(array, 0.3, 0.3) == 1.0);
    CHECK_THAT(fejer_kernel(array, 0.0, 0.1), WithinAbs(fejer_kernel(array, 0.0, -0.1), 1e-15));

    // Nulls where M psi is a non-zero multiple of pi: sin(theta) = 2k / M.
    for (int k = 1; k < 4; ++k)
        CHECK(fejer_kernel(array, 0.0, std::asin(2.0 * k / 64.0)) < 1e-20);

    // Continuous through the small-angle series branch.
    const double eps = 1e-7;
    const double series = fejer_kernel(array, 0.0, eps);
    const double direct = fejer_kernel(array, 0.0, 1e-3);
    CHECK(series <= 1.0);
    CHECK(series > direct);
    CHECK_THAT(series, WithinAbs(1.0, 1e-9));

    // Grating lobe at spacing of one wavelength.
    const ArrayConfig wide{16, 1.0};
    CHECK_THAT(fejer_kernel(wide, 0.0, std::numbers::pi / 2), WithinAbs(1.0, 1e-12));
}

TEST_CASE("kernel stays within [0, 1]", "[channel]")
{
    const ArrayConfig array{64, 0.5};
    for (int i = -2000; i <= 2000; ++i) {
        const double f = fejer_kernel(array, 0.1, i * 1e-3);
        REQUIRE(f >= 0.0);
        REQUIRE(f <= 1.0);
    }
}

TEST_CASE("steering vector has unit norm", "[channel]")
{
    const auto a = steering_vector({64, 0.5}, 0.4);
    double n = 0.0;
    for (auto v : a)
        n += std::norm(v);
    CHECK_THAT(n, WithinAbs(1.0, 1e-13));
}

TEST_CASE("effective gain and path loss", "[channel]")
{
    const ArrayConfig array{64, 0.5};
    const LinkBudget budget = LinkBudget::from_snr_db(50.0);
    CHECK_THAT(budget.snr_linear, WithinRel(1e5, 1e-14));
    CHECK(path_loss(3.0, 2.0) == 9.0);
    CHECK(path_loss(0.0, 2.0) == 0.0);

    const UserEquipment ue{10.0, 0.0, 2.0};
    CHECK_THAT(effective_gain(ue, array, budget, 0.0), WithinRel(0.02, 1e-14));
    CHECK(std::isinf(effective_gain({0.0, 0.0, 1.0}, array, budget, 0.0)));
}

TEST_CASE("array and link validation", "[channel]")
{
    CHECK_THROWS_AS((ArrayConfig{0, 0.5}.validate()), std::invalid_argument);
    CHECK_THROWS_AS((ArrayConfig{8, 0.0}.validate()), std::invalid_argument);
    LinkBudget b;
    b.path_loss_exponent = -1.0;
    CHECK_THROWS_AS(b.validate(), std::invalid_argument);
    CHECK_THAT(db_to_linear(0.0), WithinAbs(1.0, 0.0));
    CHECK(db_to_linear(-std::numeric_limits<double>::infinity()) == 0.0);
}
