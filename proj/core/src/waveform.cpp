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

#include "ccpsim/waveform.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdlib>
#include <string>

#include "ccpsim/errors.hpp"
#include "ccpsim/fft.hpp"
#include "ccpsim/rng.hpp"

namespace ccpsim {

void NumerologyConfig::validate() const
{
    if (!(carrier_frequency_hz > 0.0))
        throw ConfigError("numerology: carrier frequency must be positive");
    if (!(scs_hz > 0.0))
        throw ConfigError("numerology: subcarrier spacing must be positive");
    if (n_fft <= 0 || !std::has_single_bit(static_cast<unsigned>(n_fft)))
        throw ConfigError("numerology: n_fft must be a positive power of two");
    if (n_cp < 0 || n_cp >= n_fft)
        throw ConfigError("numerology: n_cp must lie in [0, n_fft)");
    if (n_active_subcarriers <= 0 || n_active_subcarriers > n_fft - 1)
        throw ConfigError("numerology: n_active_subcarriers must lie in [1, n_fft - 1]");
    if (sample_rate_hz != scs_hz * n_fft)
        throw ConfigError("numerology: sample rate must equal scs * n_fft");
}

NumerologyConfig make_numerology(double carrier_frequency_hz, double scs_hz, int n_fft, int n_cp,
                                 int n_active_subcarriers)
{
    NumerologyConfig num;
    num.carrier_frequency_hz = carrier_frequency_hz;
    num.scs_hz = scs_hz;
    num.n_fft = n_fft;
    num.n_cp = n_cp;
    num.n_active_subcarriers = n_active_subcarriers;
    num.sample_rate_hz = scs_hz * n_fft;
    num.validate();
    return num;
}

NumerologyConfig make_numerology(Band band)
{
    // 3276 active subcarriers = 273 PRBs; 4096 is the next power of two and a
    // 288-sample prefix is the normal-CP length at that FFT size.
    switch (band) {
    case Band::FR1:
        return make_numerology(3.8e9, 30e3, 4096, 288, 3276);
    case Band::FR2:
        return make_numerology(28e9, 120e3, 4096, 288, 3276);
    }
    throw ConfigError("unknown band");
}

int subcarrier_of_row(const NumerologyConfig& num, int row)
{
    const int half = num.n_active_subcarriers / 2;
    return row < half ? row - half : row - half + 1;
}

std::optional<int> row_of_subcarrier(const NumerologyConfig& num, int subcarrier)
{
    const int half = num.n_active_subcarriers / 2;
    if (subcarrier == 0)
        return std::nullopt;
    const int row = subcarrier < 0 ? subcarrier + half : subcarrier + half - 1;
    if (row < 0 || row >= num.n_active_subcarriers)
        return std::nullopt;
    return row;
}

int fft_bin_of_subcarrier(int n_fft, int subcarrier)
{
    return ((subcarrier % n_fft) + n_fft) % n_fft;
}

void PrsConfig::validate() const
{
    if (comb_size != 2 && comb_size != 4 && comb_size != 6 && comb_size != 12)
        throw ConfigError("prs: comb size must be one of 2, 4, 6, 12");
    if (comb_offset < 0 || comb_offset >= comb_size)
        throw ConfigError("prs: comb offset " + std::to_string(comb_offset) +
                          " outside [0, " + std::to_string(comb_size) + ")");
    if (n_symbols <= 0)
        throw ConfigError("prs: number of symbols must be positive");
}

ResourceGrid::ResourceGrid(NumerologyConfig num, int n_symbols, std::vector<cplx> values)
    : num_(num), n_symbols_(n_symbols), values_(std::move(values))
{
    num_.validate();
    if (n_symbols_ <= 0)
        throw ConfigError("resource grid: number of symbols must be positive");
    if (values_.size() != static_cast<std::size_t>(n_symbols_) * num_.n_active_subcarriers)
        throw ConfigError("resource grid: value count does not match n_active * n_symbols");
    for (const auto& v : values_) {
        if (v != cplx{} && std::abs(std::abs(v) - 1.0) > 1e-12)
            throw ConfigError("resource grid: occupied entries must have unit magnitude");
    }
}

cplx ResourceGrid::at(int row, int symbol) const
{
    if (row < 0 || row >= n_rows() || symbol < 0 || symbol >= n_symbols_)
        throw RangeError("resource grid: index out of range");
    return values_[static_cast<std::size_t>(symbol) * n_rows() + row];
}

std::span<const cplx> ResourceGrid::symbol(int l) const
{
    if (l < 0 || l >= n_symbols_)
        throw RangeError("resource grid: symbol out of range");
    return std::span<const cplx>(values_).subspan(static_cast<std::size_t>(l) * n_rows(), n_rows());
}

std::size_t ResourceGrid::occupied_count(int l) const
{
    auto col = symbol(l);
    return static_cast<std::size_t>(std::count_if(col.begin(), col.end(), [](cplx v) { return v != cplx{}; }));
}

cplx ResourceGrid::value_at_subcarrier(int subcarrier, int l) const
{
    auto row = row_of_subcarrier(num_, subcarrier);
    if (!row)
        return {};
    return at(*row, l);
}

ResourceGrid generate_prs_grid(const PrsConfig& prs, const NumerologyConfig& num)
{
    prs.validate();
    num.validate();

    const int rows = num.n_active_subcarriers;
    std::vector<cplx> values(static_cast<std::size_t>(rows) * prs.n_symbols);
    auto engine = make_engine(prs.sequence_seed);
    const double a = 1.0 / std::sqrt(2.0);
    for (int l = 0; l < prs.n_symbols; ++l) {
        for (int row = prs.comb_offset; row < rows; row += prs.comb_size) {
            const auto bits = engine();
            const double re = (bits & 1U) ? -a : a;
            const double im = (bits & 2U) ? -a : a;
            values[static_cast<std::size_t>(l) * rows + row] = {re, im};
        }
    }
    return ResourceGrid(num, prs.n_symbols, std::move(values));
}

int middle_subcarrier(const ResourceGrid& grid, int symbol)
{
    const auto& num = grid.numerology();
    std::optional<int> best;
    for (int row = 0; row < grid.n_rows(); ++row) {
        if (!grid.occupied(row, symbol))
            continue;
        const int k = subcarrier_of_row(num, row);
        if (!best || std::abs(k) < std::abs(*best) || (std::abs(k) == std::abs(*best) && k > *best))
            best = k;
    }
    if (!best)
        throw ConfigError("resource grid: symbol has no occupied subcarrier");
    return *best;
}

double BasebandStream::mean_power() const
{
    if (samples.empty())
        return 0.0;
    double acc = 0.0;
    for (const auto& s : samples)
        acc += std::norm(s);
    return acc / static_cast<double>(samples.size());
}

cplx continuous_rotation(const NumerologyConfig& num, int subcarrier, int symbol)
{
    // Reduce the integer phase index first; k (l+1) n_cp fits comfortably in 64 bits.
    const std::int64_t n = num.n_fft;
    std::int64_t idx = static_cast<std::int64_t>(subcarrier) * (symbol + 1) * num.n_cp;
    idx = ((idx % n) + n) % n;
    return std::polar(1.0, kTwoPi * static_cast<double>(idx) / static_cast<double>(n));
}

BasebandStream ofdm_modulate(const ResourceGrid& grid, OfdmMode mode)
{
    const auto& num = grid.numerology();
    const int n = num.n_fft;
    const int cp = num.n_cp;

    BasebandStream out;
    out.sample_rate_hz = num.sample_rate_hz;
    out.carrier_frequency_hz = num.carrier_frequency_hz;
    out.samples.reserve(static_cast<std::size_t>(grid.n_symbols()) * num.symbol_length());

    std::vector<cplx> bins(n);
    std::vector<cplx> useful(n);
    for (int l = 0; l < grid.n_symbols(); ++l) {
        std::fill(bins.begin(), bins.end(), cplx{});
        auto col = grid.symbol(l);
        for (int row = 0; row < grid.n_rows(); ++row) {
            if (col[row] == cplx{})
                continue;
            const int k = subcarrier_of_row(num, row);
            cplx v = col[row];
            if (mode == OfdmMode::Continuous)
                v *= continuous_rotation(num, k, l);
            bins[fft_bin_of_subcarrier(n, k)] = v;
        }
        fft::inverse(bins, useful);
        out.samples.insert(out.samples.end(), useful.end() - cp, useful.end());
        out.samples.insert(out.samples.end(), useful.begin(), useful.end());
    }
    return out;
}

std::vector<cplx> ofdm_demodulate(const BasebandStream& stream, const NumerologyConfig& num,
                                  std::int64_t window_start)
{
    const auto len = static_cast<std::int64_t>(stream.size());
    if (window_start < 0 || window_start + num.n_fft > len)
        throw RangeError("demodulate: window [" + std::to_string(window_start) + ", " +
                         std::to_string(window_start + num.n_fft) + ") outside stream of " +
                         std::to_string(len) + " samples");
    std::span<const cplx> window(stream.samples.data() + window_start, static_cast<std::size_t>(num.n_fft));
    return fft::forward(window);
}

std::vector<cplx> bins_to_rows(std::span<const cplx> bins, const NumerologyConfig& num)
{
    if (bins.size() != static_cast<std::size_t>(num.n_fft))
        throw ConfigError("bins_to_rows: expected n_fft bins");
    std::vector<cplx> rows(num.n_active_subcarriers);
    for (int row = 0; row < num.n_active_subcarriers; ++row)
        rows[row] = bins[fft_bin_of_subcarrier(num.n_fft, subcarrier_of_row(num, row))];
    return rows;
}

BasebandStream replicate_symbol(const BasebandStream& continuous, const NumerologyConfig& num,
                                int symbol, int periods)
{
    if (periods <= 0)
        throw ConfigError("replicate_symbol: periods must be positive");
    const std::int64_t begin = static_cast<std::int64_t>(symbol) * num.symbol_length() + num.n_cp;
    if (symbol < 0 || begin + num.n_fft > static_cast<std::int64_t>(continuous.size()))
        throw RangeError("replicate_symbol: symbol " + std::to_string(symbol) + " not in stream");

    BasebandStream out;
    out.sample_rate_hz = continuous.sample_rate_hz;
    out.carrier_frequency_hz = continuous.carrier_frequency_hz;
    out.start_sample = continuous.start_sample + begin;
    out.samples.reserve(static_cast<std::size_t>(periods) * num.n_fft);
    auto first = continuous.samples.begin() + begin;
    for (int p = 0; p < periods; ++p)
        out.samples.insert(out.samples.end(), first, first + num.n_fft);
    return out;
}

} // namespace ccpsim
