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

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "ccpsim/errors.hpp"
#include "ccpsim/waveform.hpp"
#include "test_support.hpp"

namespace ccpsim {
namespace {

using testing::tone_grid;

TEST(Numerology, Fr1Parameters)
{
    const auto n = make_numerology(Band::FR1);
    EXPECT_EQ(n.carrier_frequency_hz, 3.8e9);
    EXPECT_EQ(n.scs_hz, 30e3);
    EXPECT_EQ(n.n_fft, 4096);
    EXPECT_EQ(n.n_cp, 288);
    EXPECT_EQ(n.n_active_subcarriers, 3276);
    EXPECT_EQ(n.sample_rate_hz, 122.88e6);
    EXPECT_NEAR(n.wavelength_m(), 0.078893, 5e-7);
    EXPECT_EQ(n.wavelength_m(), 299792458.0 / 3.8e9);
    EXPECT_NEAR(n.occupied_bandwidth_hz(), 98.28e6, 1e-3);
    EXPECT_LE(n.occupied_bandwidth_hz(), 100e6);
}

TEST(Numerology, Fr2Parameters)
{
    const auto n = make_numerology(Band::FR2);
    EXPECT_EQ(n.carrier_frequency_hz, 28e9);
    EXPECT_EQ(n.scs_hz, 120e3);
    EXPECT_EQ(n.n_active_subcarriers, 3276);
    EXPECT_EQ(n.n_cp, 288);
    EXPECT_EQ(n.sample_rate_hz, 491.52e6);
    EXPECT_LE(n.occupied_bandwidth_hz(), 400e6);
}

TEST(Numerology, ValidationRejectsBrokenInvariants)
{
    EXPECT_THROW(make_numerology(3.8e9, 30e3, 4000, 288, 3276), ConfigError);   // not a power of two
    EXPECT_THROW(make_numerology(3.8e9, 30e3, 4096, 4096, 3276), ConfigError);  // n_cp >= n_fft
    EXPECT_THROW(make_numerology(3.8e9, 30e3, 4096, 288, 4096), ConfigError);   // no room for DC
    EXPECT_THROW(make_numerology(-1.0, 30e3, 4096, 288, 3276), ConfigError);
    auto n = make_numerology(Band::FR1);
    n.sample_rate_hz += 1.0;
    EXPECT_THROW(n.validate(), ConfigError);
}

TEST(Numerology, RowMappingExcludesDc)
{
    const auto n = make_numerology(Band::FR1);
    EXPECT_EQ(subcarrier_of_row(n, 0), -1638);
    EXPECT_EQ(subcarrier_of_row(n, 1637), -1);
    EXPECT_EQ(subcarrier_of_row(n, 1638), 1);
    EXPECT_EQ(subcarrier_of_row(n, 3275), 1638);
    EXPECT_FALSE(row_of_subcarrier(n, 0).has_value());
    EXPECT_FALSE(row_of_subcarrier(n, 1639).has_value());
    for (int r = 0; r < n.n_active_subcarriers; ++r)
        EXPECT_EQ(*row_of_subcarrier(n, subcarrier_of_row(n, r)), r);
    EXPECT_EQ(fft_bin_of_subcarrier(4096, 5), 5);
    EXPECT_EQ(fft_bin_of_subcarrier(4096, -1), 4095);
}

TEST(PrsGrid, CombSixOccupancy)
{
    const auto n = make_numerology(Band::FR1);
    const auto g = generate_prs_grid({6, 0, 1, 11}, n);
    EXPECT_EQ(g.occupied_count(0), 546U);
    EXPECT_EQ(middle_subcarrier(g, 0), 1);
    for (int r = 0; r < g.n_rows(); ++r) {
        const auto v = g.at(r, 0);
        if (r % 6 == 0) {
            EXPECT_NEAR(std::abs(v), 1.0, 1e-15);
            EXPECT_NEAR(std::abs(v.real()), std::sqrt(0.5), 1e-15);   // QPSK
            EXPECT_NEAR(std::abs(v.imag()), std::sqrt(0.5), 1e-15);
        } else {
            EXPECT_EQ(v, cplx{});
        }
    }
}

TEST(PrsGrid, CombTwoOffsetOneIsOdd)
{
    const auto n = make_numerology(Band::FR1);
    const auto g = generate_prs_grid({2, 1, 2, 5}, n);
    for (int l = 0; l < 2; ++l)
        for (int r = 0; r < g.n_rows(); ++r)
            EXPECT_EQ(g.occupied(r, l), r % 2 == 1);
}

TEST(PrsGrid, AllCombSizesKeepCongruence)
{
    const auto n = make_numerology(Band::FR1);
    for (int comb : {2, 4, 6, 12})
        for (int off = 0; off < comb; ++off) {
            const auto g = generate_prs_grid({comb, off, 1, 3}, n);
            for (int r = 0; r < g.n_rows(); ++r)
                ASSERT_EQ(g.occupied(r, 0), r % comb == off);
        }
}

TEST(PrsGrid, Deterministic)
{
    const auto n = make_numerology(Band::FR1);
    const auto a = generate_prs_grid({6, 0, 3, 77}, n);
    const auto b = generate_prs_grid({6, 0, 3, 77}, n);
    const auto c = generate_prs_grid({6, 0, 3, 78}, n);
    EXPECT_EQ(a.values(), b.values());
    EXPECT_NE(a.values(), c.values());
}

TEST(PrsGrid, RejectsBadComb)
{
    const auto n = make_numerology(Band::FR1);
    EXPECT_THROW(generate_prs_grid({6, 6, 1, 0}, n), ConfigError);
    EXPECT_THROW(generate_prs_grid({6, -1, 1, 0}, n), ConfigError);
    EXPECT_THROW(generate_prs_grid({5, 0, 1, 0}, n), ConfigError);
    EXPECT_THROW(generate_prs_grid({6, 0, 0, 0}, n), ConfigError);
}

TEST(ResourceGridType, RejectsNonUnitEntries)
{
    const auto n = make_numerology(Band::FR1);
    std::vector<cplx> v(n.n_active_subcarriers);
    v[3] = {0.5, 0.0};
    EXPECT_THROW(ResourceGrid(n, 1, v), ConfigError);
    EXPECT_THROW(ResourceGrid(n, 2, std::vector<cplx>(n.n_active_subcarriers)), ConfigError);
}

TEST(Modulate, StreamLength)
{
    const auto n = make_numerology(Band::FR1);
    const auto g = generate_prs_grid({6, 0, 4, 1}, n);
    for (auto mode : {OfdmMode::Conventional, OfdmMode::Continuous}) {
        const auto s = ofdm_modulate(g, mode);
        EXPECT_EQ(s.size(), 4U * (4096 + 288));
        EXPECT_EQ(s.sample_rate_hz, n.sample_rate_hz);
        EXPECT_EQ(s.carrier_frequency_hz, n.carrier_frequency_hz);
        EXPECT_EQ(s.start_sample, 0);
    }
}

TEST(Modulate, ContinuousSingleToneIsGlobalTone)
{
    const auto n = make_numerology(Band::FR1);
    const cplx a = std::polar(1.0, 0.3);
    const auto g = tone_grid(n, 5, {6}, {a});
    const auto s = ofdm_modulate(g, OfdmMode::Continuous);
    double worst = 0.0;
    for (std::size_t m = 0; m < s.size(); ++m) {
        const cplx expected = a / std::sqrt(4096.0) * std::polar(1.0, kTwoPi * 6.0 * double(m % 4096) / 4096.0);
        worst = std::max(worst, std::abs(s.samples[m] - expected));
    }
    EXPECT_LT(worst, 1e-10);
}

TEST(Modulate, ConventionalSingleToneJumpsAtBoundary)
{
    const auto n = make_numerology(Band::FR1);
    ASSERT_NE(n.n_cp % (n.n_fft / 6), 0);
    const auto g = tone_grid(n, 3, {6}, {cplx{1.0, 0.0}});
    const auto s = ofdm_modulate(g, OfdmMode::Conventional);
    const double step = kTwoPi * 6.0 / 4096.0;
    double worst = 0.0;
    for (std::size_t m = 0; m + 1 < s.size(); ++m)
        worst = std::max(worst, testing::angle_distance(std::arg(s.samples[m + 1] / s.samples[m]), step));
    EXPECT_GT(worst, 1e-3);
}

TEST(Modulate, RotationAnchor)
{
    const auto n = make_numerology(Band::FR1);
    EXPECT_EQ(continuous_rotation(n, 6, -1), cplx(1.0, 0.0));
    EXPECT_EQ(continuous_rotation(n, -1638, -1), cplx(1.0, 0.0));
    const auto r = continuous_rotation(n, 6, 0);
    EXPECT_NEAR(std::arg(r), std::remainder(kTwoPi * 6.0 * 288.0 / 4096.0, kTwoPi), 1e-12);
}

TEST(Modulate, ContinuityPropertyConstantGrids)
{
    const auto n = make_numerology(Band::FR1);
    std::mt19937_64 gen(5);
    std::uniform_int_distribution<int> pick(-1638, 1638);
    std::uniform_real_distribution<double> ph(-kPi, kPi);
    for (int trial = 0; trial < 5; ++trial) {
        std::vector<int> ks;
        std::vector<cplx> vs;
        while (ks.size() < 8) {
            const int k = pick(gen);
            if (k == 0 || std::find(ks.begin(), ks.end(), k) != ks.end())
                continue;
            ks.push_back(k);
            vs.push_back(std::polar(1.0, ph(gen)));
        }
        const auto s = ofdm_modulate(tone_grid(n, 3, ks, vs), OfdmMode::Continuous);
        double worst = 0.0;
        for (std::size_t m = 0; m < s.size(); m += 7) {
            cplx expected{};
            for (std::size_t i = 0; i < ks.size(); ++i)
                expected += vs[i] * std::polar(1.0, kTwoPi * double((ks[i] * static_cast<long>(m)) % 4096) / 4096.0);
            worst = std::max(worst, std::abs(s.samples[m] - expected / 64.0));
        }
        EXPECT_LT(worst, 1e-10);
    }
}

TEST(Modulate, EnergyOverUsefulSamples)
{
    const auto n = make_numerology(Band::FR1);
    for (int comb : {2, 6, 12}) {
        const auto g = generate_prs_grid({comb, 0, 2, 9}, n);
        const auto s = ofdm_modulate(g, OfdmMode::Conventional);
        double e = 0.0;
        for (int l = 0; l < 2; ++l)
            for (int m = 0; m < n.n_fft; ++m)
                e += std::norm(s.samples[static_cast<std::size_t>(l * n.symbol_length() + n.n_cp + m)]);
        const double expected = double(g.occupied_count(0)) / n.n_fft;
        EXPECT_NEAR(e / (2.0 * n.n_fft), expected, 1e-9 * expected);
        // The prefix is a copy of part of the symbol, so the whole-stream mean is close but not exact.
        EXPECT_NEAR(s.mean_power(), expected, 0.2 * expected);
    }
}

TEST(Modulate, Deterministic)
{
    const auto n = make_numerology(Band::FR2);
    const auto g = generate_prs_grid({6, 0, 2, 1234}, n);
    EXPECT_EQ(ofdm_modulate(g, OfdmMode::Continuous).samples, ofdm_modulate(g, OfdmMode::Continuous).samples);
}

TEST(Demodulate, ConventionalRoundTripRandomGrids)
{
    const auto n = make_numerology(Band::FR1);
    for (std::uint64_t seed = 0; seed < 4; ++seed) {
        const auto g = generate_prs_grid({seed % 2 ? 2 : 6, 1, 3, seed}, n);
        const auto s = ofdm_modulate(g, OfdmMode::Conventional);
        for (int l = 0; l < 3; ++l) {
            const auto rows = bins_to_rows(ofdm_demodulate(s, n, l * n.symbol_length() + n.n_cp), n);
            const auto col = g.symbol(l);
            for (int r = 0; r < n.n_active_subcarriers; ++r)
                ASSERT_LT(std::abs(rows[r] - col[r]), 1e-10);
        }
    }
}

TEST(Demodulate, ContinuousAnyWindowKeepsMagnitude)
{
    const auto n = make_numerology(Band::FR1);
    const auto g = generate_prs_grid({6, 0, 1, 21}, n);
    const auto s = ofdm_modulate(g, OfdmMode::Continuous);
    const auto aligned = bins_to_rows(ofdm_demodulate(s, n, n.n_cp), n);
    for (int w : {0, 1, 17, 143, 287}) {
        const auto rows = bins_to_rows(ofdm_demodulate(s, n, w), n);
        for (int r = 0; r < n.n_active_subcarriers; ++r)
            ASSERT_NEAR(std::abs(rows[r]), std::abs(aligned[r]), 1e-10);
    }
}

TEST(Demodulate, OutOfBoundsWindow)
{
    const auto n = make_numerology(Band::FR1);
    const auto s = ofdm_modulate(generate_prs_grid({6, 0, 1, 1}, n), OfdmMode::Conventional);
    EXPECT_THROW(ofdm_demodulate(s, n, static_cast<std::int64_t>(s.size())), RangeError);
    EXPECT_THROW(ofdm_demodulate(s, n, n.n_cp + 1), RangeError);
    EXPECT_THROW(ofdm_demodulate(s, n, -1), RangeError);
    EXPECT_NO_THROW(ofdm_demodulate(s, n, n.n_cp));
}

TEST(Replicate, TilesUsefulPart)
{
    const auto n = make_numerology(Band::FR1);
    const auto g = generate_prs_grid({6, 0, 2, 4}, n);
    const auto s = ofdm_modulate(g, OfdmMode::Continuous);
    const auto b = replicate_symbol(s, n, 1, 3);
    ASSERT_EQ(b.size(), 3U * 4096);
    EXPECT_EQ(b.start_sample, n.symbol_length() + n.n_cp);
    for (std::size_t m = 0; m < b.size(); ++m)
        ASSERT_EQ(b.samples[m], s.samples[static_cast<std::size_t>(b.start_sample) + m % 4096]);
    EXPECT_THROW(replicate_symbol(s, n, 2), RangeError);
    EXPECT_THROW(replicate_symbol(s, n, 0, 0), ConfigError);
}

} // namespace
} // namespace ccpsim
