// SPDX-License-Identifier: Apache-2.0
//
// uwbsim - sample-level simulator for pulsed ultra-wideband transceivers
// Copyright (C) 2026 The uwbsim Authors
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

#include "fft.hpp"

#include <fftw3.h>

#include <map>
#include <mutex>
#include <vector>

namespace uwb::detail {

namespace {

class PlanCache {
  public:
    ~PlanCache() {
        for (auto &[n, plan] : plans_) fftw_destroy_plan(plan);
    }

    fftw_plan get(std::size_t n) {
        std::lock_guard lock(mutex_);
        if (auto it = plans_.find(n); it != plans_.end()) return it->second;
        // Planning scratch only; execution goes through fftw_execute_dft.
        std::vector<Complex> scratch(n);
        auto *ptr = reinterpret_cast<fftw_complex *>(scratch.data());
        fftw_plan plan = fftw_plan_dft_1d(static_cast<int>(n), ptr, ptr, FFTW_FORWARD,
                                          FFTW_ESTIMATE | FFTW_UNALIGNED);
        plans_.emplace(n, plan);
        return plan;
    }

  private:
    std::mutex mutex_;
    std::map<std::size_t, fftw_plan> plans_;
};

PlanCache &cache() {
    static PlanCache instance;
    return instance;
}

} // namespace

void fft_forward(std::span<Complex> data) {
    if (data.size() <= 1) return;
    fftw_plan plan = cache().get(data.size());
    auto *ptr = reinterpret_cast<fftw_complex *>(data.data());
    fftw_execute_dft(plan, ptr, ptr);
}

} // namespace uwb::detail
