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

#ifndef CCPSIM_CONSTANTS_HPP
#define CCPSIM_CONSTANTS_HPP

#include <array>
#include <cmath>
#include <complex>
#include <numbers>

namespace ccpsim {

using cplx = std::complex<double>;
using Vec3 = std::array<double, 3>;

inline constexpr double kSpeedOfLight = 299'792'458.0; // m/s
inline constexpr double kPi = std::numbers::pi;
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

// NR basic time unit T_c = 1 / (480 kHz * 4096).
inline constexpr double kBasicTimeUnit = 1.0 / (480'000.0 * 4096.0);

// Principal interval [-pi, pi).
inline double wrap_to_pi(double phase_rad)
{
    double r = phase_rad - kTwoPi * std::floor((phase_rad + kPi) / kTwoPi);
    if (r >= kPi)
        r -= kTwoPi;
    if (r < -kPi)
        r += kTwoPi;
    return r;
}

} // namespace ccpsim

#endif
