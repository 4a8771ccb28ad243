// SPDX-License-Identifier: Apache-2.0
//
// Copyright (C) 2026 The ccpsim Authors
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

#ifndef CCPSIM_ANGLE_HPP
#define CCPSIM_ANGLE_HPP

#include <cstdint>
#include <vector>

#include "ccpsim/channel.hpp"
#include "ccpsim/constants.hpp"

namespace ccpsim {

// Two receive antennas on `baseline_axis`, `antenna_spacing_m` apart. The
// same model covers transmitter-side departure angles with roles swapped.
struct InterferometerConfig {
    double antenna_spacing_m = 0.0;
    double wavelength_m = 0.0;
    Vec3 baseline_axis{1.0, 0.0, 0.0};

    // Exactly one candidate for every |delta| < pi when d <= lambda / 2.
    bool unambiguous() const { return antenna_spacing_m <= 0.5 * wavelength_m; }
    void validate() const;
};

// All theta in [0, pi] with cos(theta) = (delta + 2 pi m) lambda / (2 pi d)
// for integer m, sorted ascending. Throws InfeasibleMeasurementError if none.
std::vector<double> aoa_from_phase_diff(double delta_rad, const InterferometerConfig& cfg);

// Angle between the baseline axis and the UE -> gNB direction.
double arrival_angle(const Geometry& geo, const InterferometerConfig& cfg);

// Planar-wave phase difference phi_lead - phi_ref = 2 pi (d / lambda) cos(theta),
// each antenna observing a unit phasor in complex Gaussian noise at snr_db.
// Returned wrapped to [-pi, pi). Far field only: distance >> d.
double simulate_two_antenna_phase_diff(double theta_rad, const InterferometerConfig& cfg, double snr_db,
                                       std::uint64_t seed);
double simulate_two_antenna_phase_diff(const Geometry& geo, const InterferometerConfig& cfg, double snr_db,
                                       std::uint64_t seed);

} // namespace ccpsim

#endif
