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

#include "ccpsim/channel.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <span>

#include "ccpsim/errors.hpp"
#include "ccpsim/fft.hpp"
#include "ccpsim/rng.hpp"

namespace ccpsim {
namespace {

double frac(double x) { return x - std::floor(x); }

// exp(-j 2 pi f tau), with the cycle count reduced before the trig call.
cplx delay_phasor(double frequency_hz, double delay_s)
{
    return std::polar(1.0, -kTwoPi * frac(frequency_hz * delay_s));
}

double positive_exponential(Engine& engine, double mean)
{
    std::exponential_distribution<double> dist(1.0 / mean);
    double x = 0.0;
    while (!(x > 0.0))
        x = dist(engine);
    return x;
}

} // namespace

Geometry make_geometry(const Vec3& gnb, const Vec3& ue)
{
    const double dx = gnb[0] - ue[0];
    const double dy = gnb[1] - ue[1];
    const double dz = gnb[2] - ue[2];
    const double d = std::sqrt(dx * dx + dy * dy + dz * dz);
    if (!(d > 0.0))
        throw DegenerateGeometryError("geometry: gNB and UE positions coincide");
    return Geometry{gnb, ue, d};
}

std::string_view to_string(ScenarioKind kind)
{
    switch (kind) {
    case ScenarioKind::InfLos: return "InF-LOS";
    case ScenarioKind::InfNlosSparse: return "InF-NLOS-S";
    case ScenarioKind::InfNlosDense: return "InF-NLOS-D";
    }
    return "?";
}

void ScenarioProfile::validate() const
{
    if (!(rms_delay_spread_s > 0.0))
        throw ConfigError("profile: rms delay spread must be positive");
    if (n_clutter_taps <= 0)
        throw ConfigError("profile: clutter tap count must be positive");
    if (is_los() && std::isnan(rician_k_db))
        throw ConfigError("profile: Rician K must be a number");
    if (!is_los() && !(nlos_excess_delay_mean_s > 0.0))
        throw ConfigError("profile: NLOS excess delay mean must be positive");
    if (path_loss_exponent && !(*path_loss_exponent > 0.0))
        throw ConfigError("profile: path loss exponent must be positive");
}

ScenarioProfile default_profile(ScenarioKind kind)
{
    ScenarioProfile p;
    p.kind = kind;
    switch (kind) {
    case ScenarioKind::InfLos:
        p.rms_delay_spread_s = 30e-9;
        break;
    case ScenarioKind::InfNlosSparse:
        p.rms_delay_spread_s = 60e-9;
        p.nlos_excess_delay_mean_s = 50e-9;
        break;
    case ScenarioKind::InfNlosDense:
        p.rms_delay_spread_s = 90e-9;
        p.nlos_excess_delay_mean_s = 100e-9;
        break;
    }
    return p;
}

cplx ChannelRealization::frequency_response(double rf_frequency_hz) const
{
    cplx h{};
    for (const auto& tap : taps)
        h += tap.gain * delay_phasor(rf_frequency_hz, tap.delay_s);
    return path_gain(rf_frequency_hz) * h;
}

double ChannelRealization::path_gain(double carrier_frequency_hz) const
{
    if (!path_loss_exponent)
        return 1.0;
    const double pl_db = close_in_path_loss_db(geometry.true_distance_m, carrier_frequency_hz, *path_loss_exponent);
    return std::pow(10.0, -pl_db / 20.0);
}

double ChannelRealization::total_power() const
{
    double p = 0.0;
    for (const auto& tap : taps)
        p += std::norm(tap.gain);
    return p;
}

double ChannelRealization::min_delay_s() const
{
    double m = std::numeric_limits<double>::infinity();
    for (const auto& tap : taps)
        m = std::min(m, tap.delay_s);
    return m;
}

ChannelRealization draw_channel(const ScenarioProfile& profile, const Geometry& geo, std::uint64_t seed)
{
    profile.validate();

    ChannelRealization ch;
    ch.geometry = geo;
    ch.kind = profile.kind;
    ch.seed = seed;

    auto engine = make_engine(seed);
    std::normal_distribution<double> gauss(0.0, 1.0);
    auto complex_gaussian = [&](double power) {
        const double s = std::sqrt(power / 2.0);
        const double re = gauss(engine);
        const double im = gauss(engine);
        return cplx{s * re, s * im};
    };

    const double tau0 = geo.los_delay_s();
    const double spread = profile.rms_delay_spread_s;

    // Clutter behind a reference delay, mean power decaying exponentially with excess delay.
    auto add_clutter = [&](double reference_delay) {
        for (int i = 0; i < profile.n_clutter_taps; ++i) {
            const double excess = positive_exponential(engine, spread);
            ch.taps.push_back({reference_delay + excess, complex_gaussian(std::exp(-excess / spread))});
        }
    };
    auto scale_power = [](std::span<Tap> taps, double target) {
        double p = 0.0;
        for (const auto& t : taps)
            p += std::norm(t.gain);
        const double s = std::sqrt(target / p);
        for (auto& t : taps)
            t.gain *= s;
    };

    if (profile.is_los()) {
        if (std::isinf(profile.rician_k_db) && profile.rician_k_db > 0.0) {
            ch.taps.push_back({tau0, cplx{1.0, 0.0}});
        } else {
            const double k = std::pow(10.0, profile.rician_k_db / 10.0);
            ch.taps.push_back({tau0, cplx{std::sqrt(k / (k + 1.0)), 0.0}});
            add_clutter(tau0);
            scale_power(std::span<Tap>(ch.taps).subspan(1), 1.0 / (k + 1.0));
        }
    } else {
        const double first = tau0 + positive_exponential(engine, profile.nlos_excess_delay_mean_s);
        ch.taps.push_back({first, complex_gaussian(1.0)});
        add_clutter(first);
        scale_power(ch.taps, 1.0);
    }

    std::stable_sort(ch.taps.begin(), ch.taps.end(),
                     [](const Tap& a, const Tap& b) { return a.delay_s < b.delay_s; });

    ch.path_loss_exponent = profile.path_loss_exponent;
    return ch;
}

BasebandStream apply_channel(const BasebandStream& tx, const ChannelRealization& ch)
{
    BasebandStream rx = tx;
    const auto n = static_cast<long>(tx.size());
    if (n == 0)
        return rx;

    auto spectrum = fft::forward(tx.samples);
    const double fc = tx.carrier_frequency_hz;
    const double bin_hz = tx.sample_rate_hz / static_cast<double>(n);

    // Carrier rotation per tap is common to all bins.
    const double pg = ch.path_gain(fc);
    std::vector<cplx> tap_gain(ch.taps.size());
    for (std::size_t i = 0; i < ch.taps.size(); ++i)
        tap_gain[i] = pg * ch.taps[i].gain * delay_phasor(fc, ch.taps[i].delay_s);

    for (long b = 0; b < n; ++b) {
        const double f = static_cast<double>(fft::signed_bin(b, n)) * bin_hz;
        cplx h{};
        for (std::size_t i = 0; i < ch.taps.size(); ++i)
            h += tap_gain[i] * delay_phasor(f, ch.taps[i].delay_s);
        spectrum[b] *= h;
    }
    fft::inverse(spectrum, rx.samples);
    return rx;
}

BasebandStream add_awgn(const BasebandStream& tx, double snr_db, std::uint64_t seed)
{
    if (std::isnan(snr_db))
        throw ConfigError("awgn: SNR is NaN");
    const double signal_power = tx.mean_power();
    if (!(signal_power > 0.0))
        throw NoSignalError("awgn: input signal has zero power");
    if (std::isinf(snr_db) && snr_db > 0.0)
        return tx;

    const double noise_var = signal_power / std::pow(10.0, snr_db / 10.0);
    const double s = std::sqrt(noise_var / 2.0);
    auto engine = make_engine(seed);
    std::normal_distribution<double> gauss(0.0, 1.0);

    BasebandStream rx = tx;
    for (auto& v : rx.samples) {
        const double re = gauss(engine);
        const double im = gauss(engine);
        v += cplx{s * re, s * im};
    }
    return rx;
}

BasebandStream apply_frequency_offset(const BasebandStream& tx, double offset_hz)
{
    BasebandStream rx = tx;
    if (offset_hz == 0.0)
        return rx;
    const double cycles_per_sample = offset_hz / tx.sample_rate_hz;
    for (std::size_t m = 0; m < rx.size(); ++m) {
        const double g = static_cast<double>(tx.start_sample + static_cast<std::int64_t>(m));
        rx.samples[m] *= std::polar(1.0, kTwoPi * frac(cycles_per_sample * g));
    }
    return rx;
}

double doppler_ppm(double speed_mps)
{
    if (speed_mps < 0.0 || std::isnan(speed_mps))
        throw ConfigError("doppler: speed must be nonnegative");
    return speed_mps / kSpeedOfLight * 1e6;
}

double close_in_path_loss_db(double distance_m, double carrier_frequency_hz, double exponent)
{
    if (!(distance_m > 0.0) || !(carrier_frequency_hz > 0.0))
        throw ConfigError("path loss: distance and frequency must be positive");
    const double fspl_1m = 20.0 * std::log10(4.0 * kPi * carrier_frequency_hz / kSpeedOfLight);
    return fspl_1m + 10.0 * exponent * std::log10(std::max(distance_m, 1.0));
}

} // namespace ccpsim
