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

// Line-of-sight mmWave channel: ULA steering vectors, the Fejer-kernel array
// gain and the scalar effective channel gain |h^H w|^2.

#include "lfnoma/geometry.hpp"

#include <complex>
#include <vector>

namespace lfnoma {

struct ArrayConfig {
    int num_elements = 64;
    double spacing_over_wavelength = 0.5;

    void validate() const;

    friend bool operator==(const ArrayConfig&, const ArrayConfig&) = default;
};

struct LinkBudget {
    double snr_linear = 1e5;        // rho = P_tx / N_0
    double path_loss_exponent = 2.0;
    double fading_variance = 1.0;
    int num_paths = 1;              // only the LoS path is modelled

    static LinkBudget from_snr_db(double snr_db, double path_loss_exponent = 2.0, double fading_variance = 1.0);
    void validate() const;

    friend bool operator==(const LinkBudget&, const LinkBudget&) = default;
};

double db_to_linear(double db) noexcept;

/// Normalised array-factor power |a(theta_bar)^H a(theta)|^2 in [0, 1]:
/// |sin(M psi) / (M sin psi)|^2 with psi = pi (d/lambda) (sin theta_bar - sin theta).
/// Exactly 1 at the main lobe and at grating lobes.
double fejer_kernel(const ArrayConfig& array, double theta_bar, double theta);

/// m-th entry (m = 0..M-1) is exp(-j 2 pi (d/lambda) m sin theta) / sqrt(M).
std::vector<std::complex<double>> steering_vector(const ArrayConfig& array, double theta);

/// Linear attenuation d^gamma; larger means weaker.
double path_loss(double distance, double gamma) noexcept;

/// |alpha|^2 F_M(theta_bar, theta) / PL(d). A UE at d = 0 gets +infinity,
/// which downstream code treats as never being in outage.
double effective_gain(const UserEquipment& ue, const ArrayConfig& array, const LinkBudget& budget, double theta_bar);

} // namespace lfnoma
