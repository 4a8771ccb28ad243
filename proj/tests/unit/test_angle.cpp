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
#include <limits>
#include <random>

#include "ccpsim/angle.hpp"
#include "ccpsim/errors.hpp"
#include "ccpsim/rng.hpp"

namespace ccpsim {
namespace {

InterferometerConfig half_wave()
{
    const double lambda = kSpeedOfLight / 3.8e9;
    return {0.5 * lambda, lambda};
}

TEST(Aoa, Broadside)
{
    const auto c = aoa_from_phase_diff(0.0, half_wave());
    ASSERT_EQ(c.size(), 1U);
    EXPECT_NEAR(c[0], kPi / 2, 1e-15);
}

TEST(Aoa, EndfireAtHalfCycle)
{
    // cos(theta) = pi * lambda / (2 pi * lambda / 2) = 1. The lattice point
    // m = -1 lands exactly on cos = -1 as well.
    const auto c = aoa_from_phase_diff(kPi, half_wave());
    ASSERT_FALSE(c.empty());
    EXPECT_EQ(c.front(), 0.0);
    ASSERT_EQ(c.size(), 2U);
    EXPECT_NEAR(c.back(), kPi, 1e-15);
}

TEST(Aoa, TwoWavelengthSpacingHasFiveCandidates)
{
    const double lambda = 0.1;
    const auto c = aoa_from_phase_diff(0.0, {2.0 * lambda, lambda});
    ASSERT_EQ(c.size(), 5U);
    const double expected[5] = {0.0, std::acos(0.5), kPi / 2, std::acos(-0.5), kPi};
    for (int i = 0; i < 5; ++i)
        EXPECT_NEAR(c[i], expected[i], 1e-12);
    EXPECT_TRUE(std::is_sorted(c.begin(), c.end()));

    // Brute-force inversion on a fine grid of angles.
    int hits = 0;
    for (int i = 0; i <= 200000; ++i) {
        const double th = kPi * i / 200000.0;
        const double d = kTwoPi * 2.0 * std::cos(th);
        if (std::abs(std::remainder(d, kTwoPi)) < 1e-4)
            for (double e : expected)
                if (std::abs(th - e) < 1e-3) {
                    ++hits;
                    break;
                }
    }
    EXPECT_GT(hits, 0);
}

TEST(Aoa, CandidateCountGrowsWithSpacing)
{
    const double lambda = 1.0;
    std::size_t previous = 0;
    for (double d : {0.5, 1.0, 2.0, 4.0, 8.0}) {
        const auto c = aoa_from_phase_diff(0.3, {d * lambda, lambda});
        // Feasible m satisfy |delta / 2 pi + m| <= d / lambda.
        std::size_t expected = 0;
        for (int m = -100; m <= 100; ++m)
            if (std::abs(0.3 / kTwoPi + m) <= d)
                ++expected;
        EXPECT_EQ(c.size(), expected);
        EXPECT_GE(c.size(), previous);
        previous = c.size();
    }
}

TEST(Aoa, UnambiguousBelowHalfWavelength)
{
    const auto cfg = InterferometerConfig{0.4, 1.0};
    EXPECT_TRUE(cfg.unambiguous());
    std::mt19937_64 gen(1);
    std::uniform_real_distribution<double> d(-kPi + 1e-9, kPi - 1e-9);
    for (int i = 0; i < 1000; ++i) {
        const double delta = d(gen);
        if (std::abs(delta) > kTwoPi * 0.4)
            EXPECT_THROW(aoa_from_phase_diff(delta, cfg), InfeasibleMeasurementError);
        else
            EXPECT_EQ(aoa_from_phase_diff(delta, cfg).size(), 1U);
    }
}

TEST(Aoa, SymmetryUnderNegation)
{
    std::mt19937_64 gen(2);
    std::uniform_real_distribution<double> d(-kPi, kPi);
    for (double spacing : {0.5, 1.3, 2.0}) {
        const InterferometerConfig cfg{spacing, 1.0};
        for (int i = 0; i < 200; ++i) {
            const double delta = d(gen);
            auto pos = aoa_from_phase_diff(delta, cfg);
            auto neg = aoa_from_phase_diff(-delta, cfg);
            ASSERT_EQ(pos.size(), neg.size());
            for (auto& t : neg)
                t = kPi - t;
            std::sort(neg.begin(), neg.end());
            for (std::size_t j = 0; j < pos.size(); ++j)
                ASSERT_NEAR(pos[j], neg[j], 1e-12);
        }
    }
}

TEST(Aoa, InvalidConfig)
{
    EXPECT_THROW(aoa_from_phase_diff(0.0, {0.0, 1.0}), ConfigError);
    EXPECT_THROW(aoa_from_phase_diff(0.0, {1.0, -1.0}), ConfigError);
    EXPECT_THROW(aoa_from_phase_diff(0.0, {1.0, 1.0, {0, 0, 0}}), ConfigError);
}

TEST(Interferometer, NoiselessPhaseDifference)
{
    const auto cfg = half_wave();
    const double inf = std::numeric_limits<double>::infinity();
    EXPECT_EQ(simulate_two_antenna_phase_diff(kPi / 2, cfg, inf, 0), wrap_to_pi(kPi * std::cos(kPi / 2)));
    EXPECT_NEAR(simulate_two_antenna_phase_diff(kPi / 2, cfg, inf, 0), 0.0, 1e-15);
    const double d = simulate_two_antenna_phase_diff(kPi / 3, cfg, inf, 0);
    EXPECT_NEAR(d, kPi / 2, 1e-12);
    const auto c = aoa_from_phase_diff(d, cfg);
    ASSERT_EQ(c.size(), 1U);
    EXPECT_LT(std::abs(c[0] - kPi / 3), 1e-9);
}

TEST(Interferometer, RoundTripProperty)
{
    const auto cfg = half_wave();
    std::mt19937_64 gen(3);
    std::uniform_real_distribution<double> th(1e-6, kPi - 1e-6);
    for (int i = 0; i < 1000; ++i) {
        const double theta = th(gen);
        const double d = simulate_two_antenna_phase_diff(theta, cfg, std::numeric_limits<double>::infinity(), i);
        const auto c = aoa_from_phase_diff(d, cfg);
        const bool found = std::any_of(c.begin(), c.end(), [&](double t) { return std::abs(t - theta) < 1e-9; });
        ASSERT_TRUE(found) << theta;
    }
}

TEST(Interferometer, GeometryOverload)
{
    const auto geo = make_geometry({100, 100, 15}, {120, 100, 1.5});
    const auto cfg = half_wave();
    const double theta = arrival_angle(geo, cfg);
    EXPECT_NEAR(std::cos(theta), -20.0 / geo.true_distance_m, 1e-12);
    const double inf = std::numeric_limits<double>::infinity();
    EXPECT_EQ(simulate_two_antenna_phase_diff(geo, cfg, inf, 0), simulate_two_antenna_phase_diff(theta, cfg, inf, 0));
}

TEST(Interferometer, RmsErrorDecreasesWithSnr)
{
    const auto cfg = half_wave();
    std::mt19937_64 gen(4);
    std::uniform_real_distribution<double> th(0.3, kPi - 0.3);
    std::vector<double> thetas(500);
    for (auto& t : thetas)
        t = th(gen);
    double previous = std::numeric_limits<double>::infinity();
    for (double snr : {0.0, 10.0, 20.0}) {
        double se = 0.0;
        for (std::size_t i = 0; i < thetas.size(); ++i) {
            const double d = simulate_two_antenna_phase_diff(thetas[i], cfg, snr, split_seed(8, i));
            const auto c = aoa_from_phase_diff(d, cfg);
            double best = kPi;
            for (double t : c)
                best = std::min(best, std::abs(t - thetas[i]));
            se += best * best;
        }
        const double rms = std::sqrt(se / double(thetas.size()));
        EXPECT_TRUE(std::isfinite(rms));
        EXPECT_LT(rms, previous);
        previous = rms;
    }
}

TEST(Interferometer, Deterministic)
{
    const auto cfg = half_wave();
    EXPECT_EQ(simulate_two_antenna_phase_diff(1.0, cfg, 10.0, 5), simulate_two_antenna_phase_diff(1.0, cfg, 10.0, 5));
    EXPECT_NE(simulate_two_antenna_phase_diff(1.0, cfg, 10.0, 5), simulate_two_antenna_phase_diff(1.0, cfg, 10.0, 6));
}

} // namespace
} // namespace ccpsim
