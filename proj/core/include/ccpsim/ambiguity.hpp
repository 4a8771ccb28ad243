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

#ifndef CCPSIM_AMBIGUITY_HPP
#define CCPSIM_AMBIGUITY_HPP

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace ccpsim {

// Range expressed in carrier cycles. When resolved,
// distance_m == (integer_cycles + fractional_cycles) * wavelength_m.
struct CarrierRange {
    double wavelength_m = 0.0;
    double fractional_cycles = 0.0;
    std::optional<std::int64_t> integer_cycles;
    std::optional<double> distance_m;

    bool resolved() const { return integer_cycles.has_value(); }
};

struct PhaseFraction {
    double fractional_cycles = 0.0;   // [0, 1)
    double wavelength_m = 0.0;
};

// Propagation delays the phase negatively: fraction = ((-phase) mod 2 pi) / 2 pi.
PhaseFraction phase_to_fraction(double phase_rad, double effective_frequency_hz);

// Resolves N with (N + frac) * lambda inside [lo_m, hi_m], choosing the
// candidate nearest `center_m`, ties toward the smaller N.
// Throws AmbiguityUnresolvableError on an empty candidate set.
CarrierRange ia_search_interval(double fractional_cycles, double wavelength_m, double center_m, double lo_m,
                                double hi_m);

// Integer search inside c * (toa +- k_sigma * toa_sigma).
CarrierRange ia_search_toa(double fractional_cycles, double wavelength_m, double toa_s, double toa_sigma_s,
                           double k_sigma = 3.0);

// Integer that brings (N + frac) * lambda closest to a known distance.
CarrierRange resolve_with_known_distance(double fractional_cycles, double wavelength_m, double true_distance_m);

// lambda1 * lambda2 / |lambda2 - lambda1|, i.e. c / |f1 - f2|.
double virtual_wavelength(double lambda1_m, double lambda2_m);

struct WidelaneOptions {
    double k_sigma = 3.0;
    double refine_fraction = 0.25;  // second search spans +- refine_fraction * lambda_v
};

struct WidelaneResult {
    CarrierRange widelane;   // on lambda_v
    CarrierRange refined;    // on lambda1
};

// Two-step resolution: integer on the virtual wavelength against the coarse
// distance, then integer on lambda1 inside widelane distance +- lambda_v/4.
WidelaneResult widelane_resolve(double frac1, double frac2, double lambda1_m, double lambda2_m,
                                double coarse_distance_m, double coarse_sigma_m, const WidelaneOptions& options = {});

enum class DiffKind { Single, Double };

struct DiffMeasurement {
    DiffKind kind = DiffKind::Single;
    double value_rad = 0.0;            // wrapped to [-pi, pi)
    std::vector<std::string> anchors;
    std::vector<std::string> receivers;
};

// phases[receiver][anchor]; receivers are (A, B), anchors are (1, 2).
using PhaseMatrix = std::array<std::array<std::optional<double>, 2>, 2>;

// (phi_A1 - phi_A2) - (phi_B1 - phi_B2). Any per-receiver and any per-anchor
// additive offset cancels. Throws ConfigError when an entry is missing.
DiffMeasurement double_difference(const PhaseMatrix& phases,
                                  const std::array<std::string, 2>& receivers = {"A", "B"},
                                  const std::array<std::string, 2>& anchors = {"1", "2"});

// One anchor observed by two receivers: phi_A - phi_B. Cancels the anchor's
// own offset, not the receivers'.
DiffMeasurement single_difference(double phase_receiver_a, double phase_receiver_b, const std::string& anchor = "1",
                                  const std::array<std::string, 2>& receivers = {"A", "B"});

} // namespace ccpsim

#endif
