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

#include "ccpsim/receiver.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "ccpsim/errors.hpp"
#include "ccpsim/fft.hpp"

namespace ccpsim {
namespace {

double energy(const std::vector<cplx>& v)
{
    double e = 0.0;
    for (const auto& x : v)
        e += std::norm(x);
    return e;
}

// exp(-j 2 pi k m / n) for m in [0, n).
std::vector<cplx> bin_twiddles(int n, int k)
{
    std::vector<cplx> tw(n);
    const std::int64_t nn = n;
    for (std::int64_t m = 0; m < nn; ++m) {
        const std::int64_t idx = ((static_cast<std::int64_t>(k) * m) % nn + nn) % nn;
        tw[m] = std::polar(1.0, -kTwoPi * static_cast<double>(idx) / static_cast<double>(nn));
    }
    return tw;
}

// Phasor whose argument is the derotated phase of one window; magnitude is
// the bin magnitude.
cplx window_phasor(const BasebandStream& rx, const NumerologyConfig& num, std::int64_t window_start,
                   int subcarrier, cplx reference_symbol, const std::vector<cplx>& twiddles)
{
    const auto len = static_cast<std::int64_t>(rx.size());
    if (window_start < 0 || window_start + num.n_fft > len)
        throw RangeError("phase window [" + std::to_string(window_start) + ", " +
                         std::to_string(window_start + num.n_fft) + ") outside stream of " +
                         std::to_string(len) + " samples");

    const cplx* x = rx.samples.data() + window_start;
    cplx acc{};
    for (int m = 0; m < num.n_fft; ++m)
        acc += x[m] * twiddles[m];
    acc /= std::sqrt(static_cast<double>(num.n_fft));

    const std::int64_t n = num.n_fft;
    const std::int64_t g = rx.start_sample + window_start;
    const std::int64_t idx = ((static_cast<std::int64_t>(subcarrier) * (g % n)) % n + n) % n;
    const cplx derotation = std::polar(1.0, -kTwoPi * static_cast<double>(idx) / static_cast<double>(n));
    return acc * std::conj(reference_symbol) * derotation;
}

cplx reference_symbol(const ResourceGrid& grid, int subcarrier, int symbol)
{
    const cplx x = grid.value_at_subcarrier(subcarrier, symbol);
    if (x == cplx{})
        throw ConfigError("subcarrier " + std::to_string(subcarrier) + " is not occupied in symbol " +
                          std::to_string(symbol));
    return x;
}

} // namespace

ToaMeasurement estimate_toa(const BasebandStream& rx, const BasebandStream& reference, const ToaOptions& options)
{
    if (reference.size() == 0 || energy(reference.samples) == 0.0)
        throw NoSignalError("toa: reference has no energy");
    if (rx.size() < reference.size())
        throw ConfigError("toa: received stream shorter than reference");
    if (!(options.peak_threshold > 0.0 && options.peak_threshold <= 1.0))
        throw ConfigError("toa: peak threshold must lie in (0, 1]");
    if (options.refine_oversampling <= 0)
        throw ConfigError("toa: refine oversampling must be positive");

    const auto len = static_cast<long>(rx.size());
    const double rx_energy = energy(rx.samples);
    if (rx_energy == 0.0)
        throw NoSignalError("toa: received stream has no energy");

    std::vector<cplx> ref_padded(rx.size());
    std::copy(reference.samples.begin(), reference.samples.end(), ref_padded.begin());
    auto rx_spec = fft::forward(rx.samples);
    auto ref_spec = fft::forward(ref_padded);
    std::vector<cplx> cross(rx.size());
    for (long b = 0; b < len; ++b)
        cross[b] = rx_spec[b] * std::conj(ref_spec[b]);

    // c[lag] = sum_m rx[m] conj(ref[m - lag]) = sqrt(L) * unitary IDFT of the cross spectrum.
    auto corr = fft::inverse(cross);
    const double norm = std::sqrt(static_cast<double>(len)) / std::sqrt(rx_energy * energy(ref_padded));
    const long max_lag = len / 2;
    std::vector<double> mag(static_cast<std::size_t>(len));
    for (long i = 0; i < len; ++i)
        mag[i] = std::abs(corr[i]) * norm;

    const double global = *std::max_element(mag.begin(), mag.begin() + max_lag + 1);
    if (!(global > options.absolute_floor))
        throw NoSignalError("toa: no correlation peak above the absolute floor");

    long lag = -1;
    for (long i = 0; i <= max_lag; ++i) {
        const double prev = mag[(i - 1 + len) % len];
        const double next = mag[(i + 1) % len];
        if (mag[i] >= options.peak_threshold * global && mag[i] >= prev && mag[i] >= next) {
            lag = i;
            break;
        }
    }
    if (lag < 0)
        throw NoSignalError("toa: no qualifying correlation peak");

    // Band-limited evaluation of |c(tau)| on a fractional grid around the peak.
    const int os = options.refine_oversampling;
    std::vector<double> fine(2 * os + 1);
    for (int j = -os; j <= os; ++j) {
        const double tau = static_cast<double>(lag) + static_cast<double>(j) / os;
        cplx acc{};
        for (long b = 0; b < len; ++b) {
            const double cycles = static_cast<double>(fft::signed_bin(b, len)) * tau / static_cast<double>(len);
            acc += cross[b] * std::polar(1.0, kTwoPi * (cycles - std::floor(cycles)));
        }
        fine[j + os] = std::abs(acc);
    }
    const auto best = static_cast<int>(std::max_element(fine.begin(), fine.end()) - fine.begin());
    double offset = static_cast<double>(best - os);
    if (best > 0 && best < 2 * os) {
        const double a = fine[best - 1];
        const double b = fine[best];
        const double c = fine[best + 1];
        const double denom = a - 2.0 * b + c;
        if (denom < 0.0)
            offset += 0.5 * (a - c) / denom;
    }
    const double lag_fine = static_cast<double>(lag) + offset / os +
                            static_cast<double>(rx.start_sample - reference.start_sample);

    ToaMeasurement m;
    m.toa_s = std::max(0.0, lag_fine) / rx.sample_rate_hz;
    m.peak_metric = mag[lag] / global;
    return m;
}

ToaMeasurement quantize_toa(const ToaMeasurement& m, int k)
{
    if (k < 0 || k > 5)
        throw ConfigError("quantize_toa: k must lie in [0, 5]");
    const double step = std::ldexp(kBasicTimeUnit, k);
    ToaMeasurement q = m;
    q.toa_s = std::round(m.toa_s / step) * step;
    q.quantized = true;
    return q;
}

PhaseMeasurement extract_phase(const BasebandStream& rx, const NumerologyConfig& num, std::int64_t window_start,
                               int subcarrier, const ResourceGrid& grid, int symbol)
{
    const cplx x = reference_symbol(grid, subcarrier, symbol);
    const auto tw = bin_twiddles(num.n_fft, subcarrier);
    const cplx v = window_phasor(rx, num, window_start, subcarrier, x, tw);

    PhaseMeasurement m;
    m.phase_rad = wrap_to_pi(std::arg(v));
    m.subcarrier_index = subcarrier;
    m.n_windows = 1;
    m.circular_variance = 0.0;
    return m;
}

PhaseMeasurement ccp_measure(const BasebandStream& rx, const NumerologyConfig& num, int subcarrier, int n_sweeps,
                             int shift_samples, const ResourceGrid& grid, int symbol, std::int64_t first_window)
{
    if (n_sweeps <= 0)
        throw ConfigError("ccp: sweep count must be positive");
    if (shift_samples <= 0)
        throw ConfigError("ccp: window shift must be positive");
    const std::int64_t last = first_window + static_cast<std::int64_t>(n_sweeps - 1) * shift_samples;
    if (first_window < 0 || last + num.n_fft > static_cast<std::int64_t>(rx.size()))
        throw RangeError("ccp: " + std::to_string(n_sweeps) + " windows with shift " + std::to_string(shift_samples) +
                         " need " + std::to_string(last + num.n_fft) + " samples, stream has " +
                         std::to_string(rx.size()));

    const cplx x = reference_symbol(grid, subcarrier, symbol);
    const auto tw = bin_twiddles(num.n_fft, subcarrier);

    cplx sum{};
    cplx single{};
    for (int i = 0; i < n_sweeps; ++i) {
        const cplx v = window_phasor(rx, num, first_window + static_cast<std::int64_t>(i) * shift_samples,
                                     subcarrier, x, tw);
        if (i == 0)
            single = v;
        const double a = std::abs(v);
        if (a > 0.0)
            sum += v / a;
    }
    const cplx mean = sum / static_cast<double>(n_sweeps);

    PhaseMeasurement m;
    m.phase_rad = wrap_to_pi(std::arg(n_sweeps == 1 ? single : mean));
    m.subcarrier_index = subcarrier;
    m.n_windows = n_sweeps;
    m.circular_variance = n_sweeps == 1 ? 0.0 : std::clamp(1.0 - std::abs(mean), 0.0, 1.0);
    return m;
}

} // namespace ccpsim
