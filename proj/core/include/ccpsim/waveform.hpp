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

#ifndef CCPSIM_WAVEFORM_HPP
#define CCPSIM_WAVEFORM_HPP

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "ccpsim/constants.hpp"

namespace ccpsim {

enum class Band { FR1, FR2 };

// Conventional: per-symbol IDFT with a copied cyclic prefix.
// Continuous: each subcarrier is pre-rotated so the assembled stream is one
// phase-continuous tone per subcarrier across symbol and prefix boundaries.
enum class OfdmMode { Conventional, Continuous };

struct NumerologyConfig {
    double carrier_frequency_hz = 0.0;
    double scs_hz = 0.0;
    int n_fft = 0;
    int n_cp = 0;
    int n_active_subcarriers = 0;
    double sample_rate_hz = 0.0;

    double wavelength_m() const { return kSpeedOfLight / carrier_frequency_hz; }
    double sample_period_s() const { return 1.0 / sample_rate_hz; }
    int symbol_length() const { return n_fft + n_cp; }
    double occupied_bandwidth_hz() const { return n_active_subcarriers * scs_hz; }

    // Throws ConfigError when any invariant is violated.
    void validate() const;
};

NumerologyConfig make_numerology(Band band);

// Custom numerology; sample rate is derived as scs * n_fft.
NumerologyConfig make_numerology(double carrier_frequency_hz, double scs_hz, int n_fft, int n_cp,
                                 int n_active_subcarriers);

// Active rows are the n_active signed subcarrier indices centred on DC with
// DC itself excluded: rows [0, n/2) map to -n/2..-1 and rows [n/2, n) to 1..n/2.
int subcarrier_of_row(const NumerologyConfig& num, int row);
std::optional<int> row_of_subcarrier(const NumerologyConfig& num, int subcarrier);
int fft_bin_of_subcarrier(int n_fft, int subcarrier);

struct PrsConfig {
    int comb_size = 6;
    int comb_offset = 0;
    int n_symbols = 1;
    std::uint64_t sequence_seed = 0;

    void validate() const;
};

// Frequency-domain PRS allocation, n_active rows by n_symbols columns.
// Unoccupied entries are exactly zero, occupied ones have unit magnitude.
class ResourceGrid {
public:
    // Validates shape and the 0-or-unit-magnitude entry invariant.
    // `values` is symbol-major: values[l * n_active + row].
    ResourceGrid(NumerologyConfig num, int n_symbols, std::vector<cplx> values);

    const NumerologyConfig& numerology() const { return num_; }
    int n_rows() const { return num_.n_active_subcarriers; }
    int n_symbols() const { return n_symbols_; }

    cplx at(int row, int symbol) const;
    std::span<const cplx> symbol(int l) const;
    bool occupied(int row, int symbol) const { return at(row, symbol) != cplx{}; }
    std::size_t occupied_count(int symbol) const;

    // Transmitted value on signed subcarrier k of symbol l (zero when unused).
    cplx value_at_subcarrier(int subcarrier, int symbol) const;

    const std::vector<cplx>& values() const { return values_; }

private:
    NumerologyConfig num_;
    int n_symbols_;
    std::vector<cplx> values_;
};

// Seeded QPSK on a comb, identical comb offset on every symbol.
ResourceGrid generate_prs_grid(const PrsConfig& prs, const NumerologyConfig& num);

// Occupied subcarrier closest to DC in symbol l; ties go to the positive side.
int middle_subcarrier(const ResourceGrid& grid, int symbol = 0);

// Complex time-domain samples. `start_sample` is the global sample index of
// samples[0]; phase references in the receiver are taken against global time.
struct BasebandStream {
    std::vector<cplx> samples;
    double sample_rate_hz = 0.0;
    double carrier_frequency_hz = 0.0;
    std::int64_t start_sample = 0;

    std::size_t size() const { return samples.size(); }
    double mean_power() const;
};

// Rotation applied to subcarrier k of symbol l in continuous mode:
// exp(j 2 pi k (l + 1) n_cp / n_fft).
cplx continuous_rotation(const NumerologyConfig& num, int subcarrier, int symbol);

BasebandStream ofdm_modulate(const ResourceGrid& grid, OfdmMode mode);

// Unitary DFT of samples [window_start, window_start + n_fft), natural bin
// order, no derotation. Throws RangeError when the window leaves the stream.
std::vector<cplx> ofdm_demodulate(const BasebandStream& stream, const NumerologyConfig& num,
                                  std::int64_t window_start);

// Active-row view of a demodulated symbol (same row order as ResourceGrid).
std::vector<cplx> bins_to_rows(std::span<const cplx> bins, const NumerologyConfig& num);

// Cuts the useful part of symbol l out of a continuous-mode stream and tiles
// it `periods` times. The result keeps the global time origin of that useful
// part, so it is the same tone set continued over periods * n_fft samples.
BasebandStream replicate_symbol(const BasebandStream& continuous, const NumerologyConfig& num,
                                int symbol, int periods = 3);

} // namespace ccpsim

#endif
