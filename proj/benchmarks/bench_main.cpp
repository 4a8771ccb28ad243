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

#include <benchmark/benchmark.h>

#include "ccpsim/channel.hpp"
#include "ccpsim/harness.hpp"
#include "ccpsim/receiver.hpp"
#include "ccpsim/waveform.hpp"

namespace {

using namespace ccpsim;

struct Fixture {
    NumerologyConfig num = make_numerology(Band::FR1);
    ResourceGrid grid = generate_prs_grid({6, 0, 1, 1}, num);
    Geometry geo = make_geometry({100, 100, 15}, {120, 100, 1.5});
    ChannelRealization ch = draw_channel(default_profile(ScenarioKind::InfLos), geo, 1);
    BasebandStream conventional = ofdm_modulate(grid, OfdmMode::Conventional);
    BasebandStream block = replicate_symbol(ofdm_modulate(grid, OfdmMode::Continuous), num, 0, 3);
};

const Fixture& fixture()
{
    static const Fixture f;
    return f;
}

void BM_Modulate(benchmark::State& state)
{
    const auto& f = fixture();
    const auto mode = state.range(0) ? OfdmMode::Continuous : OfdmMode::Conventional;
    for (auto _ : state)
        benchmark::DoNotOptimize(ofdm_modulate(f.grid, mode));
}
BENCHMARK(BM_Modulate)->Arg(0)->Arg(1);

void BM_ApplyChannel(benchmark::State& state)
{
    const auto& f = fixture();
    for (auto _ : state)
        benchmark::DoNotOptimize(apply_channel(f.block, f.ch));
}
BENCHMARK(BM_ApplyChannel);

void BM_EstimateToa(benchmark::State& state)
{
    const auto& f = fixture();
    const auto rx = add_awgn(apply_channel(f.conventional, f.ch), 10.0, 3);
    for (auto _ : state)
        benchmark::DoNotOptimize(estimate_toa(rx, f.conventional));
}
BENCHMARK(BM_EstimateToa);

void BM_CcpMeasure(benchmark::State& state)
{
    const auto& f = fixture();
    const auto rx = add_awgn(apply_channel(f.block, f.ch), 10.0, 4);
    const int k = middle_subcarrier(f.grid, 0);
    const auto sweeps = static_cast<int>(state.range(0));
    for (auto _ : state)
        benchmark::DoNotOptimize(ccp_measure(rx, f.num, k, sweeps, 1, f.grid, 0));
    state.SetItemsProcessed(state.iterations() * sweeps);
}
BENCHMARK(BM_CcpMeasure)->Arg(1)->Arg(100)->Arg(1000);

void BM_Trial(benchmark::State& state)
{
    ScenarioConfig cfg;
    std::size_t t = 0;
    for (auto _ : state)
        benchmark::DoNotOptimize(run_trial(cfg, t++));
}
BENCHMARK(BM_Trial)->Unit(benchmark::kMillisecond);

} // namespace

BENCHMARK_MAIN();
