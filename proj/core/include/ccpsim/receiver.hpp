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

#ifndef CCPSIM_RECEIVER_HPP
#define CCPSIM_RECEIVER_HPP

#include <cstdint>

#include "ccpsim/waveform.hpp"

namespace ccpsim {

struct ToaOptions {
    double peak_threshold = 0.6;       // earliest peak must reach this fraction of the global max
    double absolute_floor = 1e-9;      // on the normalized correlation magnitude
    int refine_oversampling = 16;      // fractional-lag grid within +-1 sample of the peak
};

struct ToaMeasurement {
    double toa_s = 0.0;
    double peak_metric = 0.0;
    bool quantized = false;
};

// Earliest local maximum of the normalized circular cross-correlation
// magnitude whose height reaches peak_threshold * global maximum. Lags
// are searched over [0, len/2]. The integer lag is refined on a band-limited
// fractional grid followed by a parabolic fit.
ToaMeasurement estimate_toa(const BasebandStream& rx, const BasebandStream& reference,
                            const ToaOptions& options = {});

// Rounds to the nearest multiple of 2^k T_c, k in [0, 5].
ToaMeasurement quantize_toa(const ToaMeasurement& m, int k);

struct PhaseMeasurement {
    double phase_rad = 0.0;            // wrapped to [-pi, pi)
    int subcarrier_index = 0;
    int n_windows = 1;
    double circular_variance = 0.0;    // 1 - |mean unit phasor|
};

// Single-window phase of arrival on `subcarrier`:
//   arg( bin_k * conj(X_k,l) * exp(-j 2 pi k g / n_fft) )
// where g = rx.start_sample + window_start is the global window position. The
// last factor removes both the window offset and the continuous-mode symbol
// rotation, so any window on a continuous tone gives the same answer.
PhaseMeasurement extract_phase(const BasebandStream& rx, const NumerologyConfig& num,
                               std::int64_t window_start, int subcarrier,
                               const ResourceGrid& grid, int symbol);

// Continuous carrier phase: windows at first_window + i * shift for
// i < n_sweeps, each derotated as in extract_phase, combined by circular mean
// in window-index order.
PhaseMeasurement ccp_measure(const BasebandStream& rx, const NumerologyConfig& num, int subcarrier,
                             int n_sweeps, int shift_samples, const ResourceGrid& grid, int symbol,
                             std::int64_t first_window = 0);

} // namespace ccpsim

#endif
