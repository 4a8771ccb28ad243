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

#include "ccpsim/ambiguity.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "ccpsim/constants.hpp"
#include "ccpsim/errors.hpp"

namespace ccpsim {
namespace {

double positive_mod1(double x)
{
    double r = x - std::floor(x);
    if (r >= 1.0)
        r = 0.0;
    return r;
}

CarrierRange make_range(double frac, double lambda, std::int64_t n)
{
    CarrierRange r;
    r.wavelength_m = lambda;
    r.fractional_cycles = frac;
    r.integer_cycles = n;
    r.distance_m = (static_cast<double>(n) + frac) * lambda;
    return r;
}

void check_fraction(double frac, double lambda)
{
    if (!(lambda > 0.0))
        throw ConfigError("ambiguity: wavelength must be positive");
    if (!(frac >= 0.0 && frac < 1.0))
        throw ConfigError("ambiguity: fractional cycles must lie in [0, 1)");
}

} // namespace

PhaseFraction phase_to_fraction(double phase_rad, double effective_frequency_hz)
{
    if (!(effective_frequency_hz > 0.0))
        throw ConfigError("phase_to_fraction: frequency must be positive");
    return {positive_mod1(-phase_rad / kTwoPi), kSpeedOfLight / effective_frequency_hz};
}

CarrierRange ia_search_interval(double fractional_cycles, double wavelength_m, double center_m, double lo_m,
                                double hi_m)
{
    check_fraction(fractional_cycles, wavelength_m);
    if (!(lo_m <= hi_m))
        throw ConfigError("ambiguity: empty search interval");

    auto n_min = static_cast<std::int64_t>(std::ceil(lo_m / wavelength_m - fractional_cycles));
    const auto n_max = static_cast<std::int64_t>(std::floor(hi_m / wavelength_m - fractional_cycles));
    n_min = std::max<std::int64_t>(n_min, 0);
    if (n_min > n_max)
        throw AmbiguityUnresolvableError("ambiguity: no integer places the phase inside [" + std::to_string(lo_m) +
                                         ", " + std::to_string(hi_m) + "] m");

    const double x = center_m / wavelength_m - fractional_cycles;
    auto n = static_cast<std::int64_t>(std::floor(x));
    if (x - static_cast<double>(n) > 0.5)
        ++n;
    n = std::clamp(n, n_min, n_max);
    return make_range(fractional_cycles, wavelength_m, n);
}

CarrierRange ia_search_toa(double fractional_cycles, double wavelength_m, double toa_s, double toa_sigma_s,
                           double k_sigma)
{
    if (!(toa_s > 0.0))
        throw ConfigError("ia_search_toa: TOA must be positive");
    if (!(toa_sigma_s > 0.0) || !(k_sigma > 0.0))
        throw ConfigError("ia_search_toa: sigma and k_sigma must be positive");
    const double center = kSpeedOfLight * toa_s;
    const double half = kSpeedOfLight * k_sigma * toa_sigma_s;
    return ia_search_interval(fractional_cycles, wavelength_m, center, center - half, center + half);
}

CarrierRange resolve_with_known_distance(double fractional_cycles, double wavelength_m, double true_distance_m)
{
    check_fraction(fractional_cycles, wavelength_m);
    const double x = true_distance_m / wavelength_m - fractional_cycles;
    auto n = static_cast<std::int64_t>(std::floor(x));
    if (x - static_cast<double>(n) > 0.5)
        ++n;
    return make_range(fractional_cycles, wavelength_m, std::max<std::int64_t>(n, 0));
}

double virtual_wavelength(double lambda1_m, double lambda2_m)
{
    if (!(lambda1_m > 0.0) || !(lambda2_m > 0.0))
        throw ConfigError("virtual_wavelength: wavelengths must be positive");
    if (lambda1_m == lambda2_m)
        throw ConfigError("virtual_wavelength: wavelengths must differ");
    return lambda1_m * lambda2_m / std::abs(lambda2_m - lambda1_m);
}

WidelaneResult widelane_resolve(double frac1, double frac2, double lambda1_m, double lambda2_m,
                                double coarse_distance_m, double coarse_sigma_m, const WidelaneOptions& options)
{
    check_fraction(frac1, lambda1_m);
    check_fraction(frac2, lambda2_m);
    if (!(coarse_sigma_m > 0.0))
        throw ConfigError("widelane: coarse sigma must be positive");

    const double lambda_v = virtual_wavelength(lambda1_m, lambda2_m);
    // d/lambda_short - d/lambda_long = d/lambda_v, so the widelane fraction is
    // the short-wavelength fraction minus the long-wavelength one.
    const double frac_v = lambda1_m > lambda2_m ? positive_mod1(frac2 - frac1) : positive_mod1(frac1 - frac2);

    WidelaneResult out;
    const double half = options.k_sigma * coarse_sigma_m;
    out.widelane = ia_search_interval(frac_v, lambda_v, coarse_distance_m, coarse_distance_m - half,
                                      coarse_distance_m + half);

    const double dv = *out.widelane.distance_m;
    const double window = options.refine_fraction * lambda_v;
    out.refined = ia_search_interval(frac1, lambda1_m, dv, dv - window, dv + window);
    return out;
}

DiffMeasurement double_difference(const PhaseMatrix& phases, const std::array<std::string, 2>& receivers,
                                  const std::array<std::string, 2>& anchors)
{
    for (const auto& row : phases)
        for (const auto& v : row)
            if (!v)
                throw ConfigError("double_difference: incomplete 2x2 measurement set");

    const double a = *phases[0][0] - *phases[0][1];
    const double b = *phases[1][0] - *phases[1][1];
    DiffMeasurement m;
    m.kind = DiffKind::Double;
    m.value_rad = wrap_to_pi(a - b);
    m.anchors.assign(anchors.begin(), anchors.end());
    m.receivers.assign(receivers.begin(), receivers.end());
    return m;
}

DiffMeasurement single_difference(double phase_receiver_a, double phase_receiver_b, const std::string& anchor,
                                  const std::array<std::string, 2>& receivers)
{
    DiffMeasurement m;
    m.kind = DiffKind::Single;
    m.value_rad = wrap_to_pi(phase_receiver_a - phase_receiver_b);
    m.anchors = {anchor};
    m.receivers.assign(receivers.begin(), receivers.end());
    return m;
}

} // namespace ccpsim
