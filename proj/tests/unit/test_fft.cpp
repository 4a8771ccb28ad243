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

#include <cmath>
#include <random>

#include "ccpsim/fft.hpp"

namespace ccpsim {
namespace {

std::vector<cplx> random_vector(std::size_t n, unsigned seed)
{
    std::mt19937 gen(seed);
    std::normal_distribution<double> d;
    std::vector<cplx> v(n);
    for (auto& x : v)
        x = {d(gen), d(gen)};
    return v;
}

TEST(Fft, MatchesDirectDft)
{
    const std::size_t n = 64;
    const auto x = random_vector(n, 1);
    const auto y = fft::forward(x);
    for (std::size_t k = 0; k < n; ++k) {
        cplx acc{};
        for (std::size_t m = 0; m < n; ++m)
            acc += x[m] * std::polar(1.0, -kTwoPi * double(k * m) / double(n));
        acc /= std::sqrt(double(n));
        EXPECT_LT(std::abs(acc - y[k]), 1e-12);
    }
}

TEST(Fft, RoundTripAndParseval)
{
    const auto x = random_vector(4096, 2);
    const auto y = fft::forward(x);
    const auto z = fft::inverse(y);
    double ex = 0.0, ey = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        EXPECT_LT(std::abs(z[i] - x[i]), 1e-12);
        ex += std::norm(x[i]);
        ey += std::norm(y[i]);
    }
    EXPECT_NEAR(ex, ey, 1e-9 * ex);
}

TEST(Fft, InPlaceAliasing)
{
    auto x = random_vector(128, 3);
    const auto expected = fft::forward(x);
    fft::forward(x, x);
    for (std::size_t i = 0; i < x.size(); ++i)
        EXPECT_EQ(x[i], expected[i]);
}

TEST(Fft, SizeMismatchThrows)
{
    std::vector<cplx> a(8), b(4);
    EXPECT_THROW(fft::forward(a, b), std::invalid_argument);
}

TEST(Fft, SignedBin)
{
    EXPECT_EQ(fft::signed_bin(0, 8), 0);
    EXPECT_EQ(fft::signed_bin(3, 8), 3);
    EXPECT_EQ(fft::signed_bin(4, 8), -4);
    EXPECT_EQ(fft::signed_bin(7, 8), -1);
}

} // namespace
} // namespace ccpsim
