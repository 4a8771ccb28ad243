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

#include "ccpsim/angle.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "ccpsim/errors.hpp"
#include "ccpsim/rng.hpp"

namespace ccpsim {

void InterferometerConfig::validate() const
{
    if (!(antenna_spacing_m > 0.0) || !(wavelength_m > 0.0))
        throw ConfigError("interferometer: spacing and wavelength must be positive");
    const double n = std::hypot(baseline_axis[0], baseline_axis[1], baseline_axis[2]);
    if (!(n > 0.0))
        throw ConfigError("interferometer: baseline axis must be nonzero");
}

std::vector<double> aoa_from_phase_diff(double delta_rad, const InterferometerConfig& cfg)
{
    cfg.validate();
    constexpr double tol = 1e-12;
    const double ratio = cfg.wavelength_m / cfg.antenna_spacing_m;   // lambda / d

    // cos(theta) = (delta / 2 pi + m) * lambda / d must lie in [-1, 1].
    const double base = delta_rad / kTwoPi;
    const auto m_lo = static_cast<std::int64_t>(std::ceil(-1.0 / ratio - base - tol));
    const auto m_hi = static_cast<std::int64_t>(std::floor(1.0 / ratio - base + tol));

    std::vector<double> out;
    for (std::int64_t m = m_lo; m <= m_hi; ++m) {
        const double c = (delta_rad + kTwoPi * static_cast<double>(m)) / kTwoPi * ratio;
        if (c < -1.0 - tol || c > 1.0 + tol)
            continue;
        out.push_back(std::acos(std::clamp(c, -1.0, 1.0)));
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end(), [](double a, double b) { return std::abs(a - b) < 1e-15; }),
              out.end());
    if (out.empty())
        throw InfeasibleMeasurementError("aoa: no angle is consistent with the phase difference");
    return out;
}

double arrival_angle(const Geometry& geo, const InterferometerConfig& cfg)
{
    cfg.validate();
    Vec3 u{geo.gnb_pos[0] - geo.ue_pos[0], geo.gnb_pos[1] - geo.ue_pos[1], geo.gnb_pos[2] - geo.ue_pos[2]};
    const double axis_norm = std::hypot(cfg.baseline_axis[0], cfg.baseline_axis[1], cfg.baseline_axis[2]);
    double c = 0.0;
    for (int i = 0; i < 3; ++i)
        c += u[i] * cfg.baseline_axis[i];
    c /= geo.true_distance_m * axis_norm;
    return std::acos(std::clamp(c, -1.0, 1.0));
}

double simulate_two_antenna_phase_diff(double theta_rad, const InterferometerConfig& cfg, double snr_db,
                                       std::uint64_t seed)
{
    cfg.validate();
    const double delta = kTwoPi * cfg.antenna_spacing_m / cfg.wavelength_m * std::cos(theta_rad);
    if (std::isinf(snr_db) && snr_db > 0.0)
        return wrap_to_pi(delta);

    auto engine = make_engine(seed);
    std::normal_distribution<double> gauss(0.0, 1.0);
    const double s = std::sqrt(std::pow(10.0, -snr_db / 10.0) / 2.0);
    auto noisy = [&](double phase) {
        const double re = gauss(engine);
        const double im = gauss(engine);
        return std::polar(1.0, phase) + cplx{s * re, s * im};
    };
    const cplx lead = noisy(delta);
    const cplx ref = noisy(0.0);
    return wrap_to_pi(std::arg(lead * std::conj(ref)));
}

double simulate_two_antenna_phase_diff(const Geometry& geo, const InterferometerConfig& cfg, double snr_db,
                                       std::uint64_t seed)
{
    return simulate_two_antenna_phase_diff(arrival_angle(geo, cfg), cfg, snr_db, seed);
}

} // namespace ccpsim
