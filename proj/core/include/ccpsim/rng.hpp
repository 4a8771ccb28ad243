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

#ifndef CCPSIM_RNG_HPP
#define CCPSIM_RNG_HPP

#include <cstdint>
#include <random>

namespace ccpsim {

// SplitMix64 finalizer. Used to derive independent, order-free seeds.
std::uint64_t splitmix64(std::uint64_t x) noexcept;

// Seed of sub-stream `stream` under `parent`. Depends only on the pair, so
// trial t always sees the same randomness regardless of scheduling.
std::uint64_t split_seed(std::uint64_t parent, std::uint64_t stream) noexcept;

// All simulator randomness comes from std::mt19937_64 seeded this way.
using Engine = std::mt19937_64;
Engine make_engine(std::uint64_t seed);

} // namespace ccpsim

#endif
