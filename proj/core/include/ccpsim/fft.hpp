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

#ifndef CCPSIM_FFT_HPP
#define CCPSIM_FFT_HPP

#include <span>
#include <vector>

#include "ccpsim/constants.hpp"

namespace ccpsim::fft {

// Unitary DFT (1/sqrt(n) scaling in both directions), backed by FFTW.
// Plans are cached per size; execution is safe from multiple threads.
void forward(std::span<const cplx> in, std::span<cplx> out);
void inverse(std::span<const cplx> in, std::span<cplx> out);

std::vector<cplx> forward(std::span<const cplx> in);
std::vector<cplx> inverse(std::span<const cplx> in);

// Signed index of DFT bin b for a transform of length n: b for b < n/2,
// b - n otherwise.
inline long signed_bin(long b, long n) { return b < (n + 1) / 2 ? b : b - n; }

} // namespace ccpsim::fft

#endif
