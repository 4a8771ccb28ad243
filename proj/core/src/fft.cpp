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

#include "ccpsim/fft.hpp"

#include <fftw3.h>

#include <cmath>
#include <map>
#include <mutex>
#include <stdexcept>
#include <utility>

namespace ccpsim::fft {
namespace {

// The FFTW planner is not thread-safe; fftw_execute_dft on an existing plan is.
class PlanCache {
public:
    ~PlanCache()
    {
        for (auto& [key, plan] : plans_)
            fftw_destroy_plan(plan);
    }

    fftw_plan get(int n, int sign)
    {
        std::lock_guard lock(mutex_);
        auto key = std::make_pair(n, sign);
        if (auto it = plans_.find(key); it != plans_.end())
            return it->second;

        auto* in = fftw_alloc_complex(static_cast<std::size_t>(n));
        auto* out = fftw_alloc_complex(static_cast<std::size_t>(n));
        fftw_plan plan = fftw_plan_dft_1d(n, in, out, sign, FFTW_ESTIMATE | FFTW_UNALIGNED);
        fftw_free(in);
        fftw_free(out);
        if (plan == nullptr)
            throw std::runtime_error("fftw_plan_dft_1d failed");
        plans_.emplace(key, plan);
        return plan;
    }

private:
    std::mutex mutex_;
    std::map<std::pair<int, int>, fftw_plan> plans_;
};

PlanCache& cache()
{
    static PlanCache c;
    return c;
}

void run(std::span<const cplx> in, std::span<cplx> out, int sign)
{
    if (in.size() != out.size())
        throw std::invalid_argument("fft: input and output sizes differ");
    if (in.empty())
        return;
    const int n = static_cast<int>(in.size());
    fftw_plan plan = cache().get(n, sign);

    // Plans are out-of-place; stage through a copy when the caller aliases.
    std::vector<cplx> staging;
    const cplx* src = in.data();
    if (src == out.data()) {
        staging.assign(in.begin(), in.end());
        src = staging.data();
    }
    fftw_execute_dft(plan,
                     reinterpret_cast<fftw_complex*>(const_cast<cplx*>(src)),
                     reinterpret_cast<fftw_complex*>(out.data()));

    const double scale = 1.0 / std::sqrt(static_cast<double>(n));
    for (auto& v : out)
        v *= scale;
}

} // namespace

void forward(std::span<const cplx> in, std::span<cplx> out) { run(in, out, FFTW_FORWARD); }
void inverse(std::span<const cplx> in, std::span<cplx> out) { run(in, out, FFTW_BACKWARD); }

std::vector<cplx> forward(std::span<const cplx> in)
{
    std::vector<cplx> out(in.size());
    forward(in, out);
    return out;
}

std::vector<cplx> inverse(std::span<const cplx> in)
{
    std::vector<cplx> out(in.size());
    inverse(in, out);
    return out;
}

} // namespace ccpsim::fft
