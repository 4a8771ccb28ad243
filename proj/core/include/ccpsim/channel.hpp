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

#ifndef CCPSIM_CHANNEL_HPP
#define CCPSIM_CHANNEL_HPP

#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include "ccpsim/constants.hpp"
#include "ccpsim/waveform.hpp"

namespace ccpsim {

struct Geometry {
    Vec3 gnb_pos{};
    Vec3 ue_pos{};
    double true_distance_m = 0.0;

    double los_delay_s() const { return true_distance_m / kSpeedOfLight; }
};

// Throws DegenerateGeometryError for coincident positions.
Geometry make_geometry(const Vec3& gnb, const Vec3& ue);

enum class ScenarioKind { InfLos, InfNlosSparse, InfNlosDense };

std::string_view to_string(ScenarioKind kind);

// Reduced indoor-factory profile: delay/phase/power statistics only.
struct ScenarioProfile {
    ScenarioKind kind = ScenarioKind::InfLos;
    double rician_k_db = 7.0;                   // LOS only; +inf gives a pure LOS channel
    double rms_delay_spread_s = 30e-9;
    int n_clutter_taps = 12;
    double nlos_excess_delay_mean_s = 50e-9;    // NLOS only
    std::optional<double> path_loss_exponent;   // close-in model, off by default

    bool is_los() const { return kind == ScenarioKind::InfLos; }
    void validate() const;
};

ScenarioProfile default_profile(ScenarioKind kind);

struct Tap {
    double delay_s = 0.0;
    cplx gain{};
};

struct ChannelRealization {
    std::vector<Tap> taps;      // sorted by delay
    Geometry geometry;
    ScenarioKind kind = ScenarioKind::InfLos;
    std::uint64_t seed = 0;
    std::optional<double> path_loss_exponent;

    // Amplitude scaling from close-in path loss at the given carrier; 1 when off.
    double path_gain(double carrier_frequency_hz) const;

    // Carrier-phase-inclusive response at absolute RF frequency f:
    // path_gain * sum_i gain_i exp(-j 2 pi f tau_i).
    cplx frequency_response(double rf_frequency_hz) const;
    double total_power() const;
    double min_delay_s() const;
};

// Tap powers sum to one. LOS: direct tap at d/c carrying K/(K+1) of the power,
// clutter at d/c + Exp(rms delay spread). NLOS: first tap at d/c + Exp(excess
// mean), further clutter behind it. Deterministic per seed.
ChannelRealization draw_channel(const ScenarioProfile& profile, const Geometry& geo, std::uint64_t seed);

// rx(t) = sum_i g_i exp(-j 2 pi f_c tau_i) tx(t - tau_i), with the delays applied
// exactly as per-bin phase ramps over the DFT of the whole (circular) stream.
BasebandStream apply_channel(const BasebandStream& tx, const ChannelRealization& ch);

// Circularly-symmetric complex Gaussian noise at the given SNR against the
// measured mean power of `tx`. snr_db = +inf returns the input unchanged.
BasebandStream add_awgn(const BasebandStream& tx, double snr_db, std::uint64_t seed);

// Deterministic frequency offset (Doppler/CFO). Disabled unless requested.
BasebandStream apply_frequency_offset(const BasebandStream& tx, double offset_hz);

// Doppler shift relative to the carrier in parts per million.
double doppler_ppm(double speed_mps);

// Close-in free-space reference distance path loss (1 m reference), dB.
double close_in_path_loss_db(double distance_m, double carrier_frequency_hz, double exponent);

} // namespace ccpsim

#endif
