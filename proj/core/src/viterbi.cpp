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

#include "uwb/backend.hpp"

#include <cmath>

namespace uwb {

namespace {

inline double sym(unsigned bit) { return bit ? 1.0 : -1.0; }

} // namespace

Bits viterbi_mlse(std::span<const Complex> stats, std::span<const Complex> g, const ViterbiConfig &cfg) {
    const int memory = cfg.memory;
    if (memory < 0 || memory > kMaxViterbiMemory) throw InvalidParameter("viterbi memory out of range");
    if (g.size() != static_cast<std::size_t>(memory) + 1) throw InvalidParameter("need memory + 1 channel taps");
    if (cfg.traceback_depth < 0) throw InvalidParameter("negative traceback depth");

    const std::size_t n = stats.size();
    Bits out(n, 0);
    if (n == 0) return out;

    if (memory == 0) {
        for (std::size_t k = 0; k < n; ++k) out[k] = (stats[k] * std::conj(g[0])).real() >= 0.0 ? 1 : 0;
        return out;
    }

    const std::size_t states = std::size_t{1} << memory;
    const unsigned top = static_cast<unsigned>(memory - 1);

    // ISI from the previous `memory` symbols held in a state, steady state only.
    std::vector<Complex> isi(states);
    for (std::size_t s = 0; s < states; ++s) {
        Complex acc{};
        for (int m = 1; m <= memory; ++m) acc += g[m] * sym((s >> (m - 1)) & 1u);
        isi[s] = acc;
    }

    std::vector<double> pm(states, kInfinity), next(states);
    pm[0] = 0.0;
    std::vector<std::uint8_t> surv(n * states);

    auto branch = [&](std::size_t k, std::size_t prev, unsigned bit) {
        Complex expected;
        if (k >= static_cast<std::size_t>(memory)) {
            expected = g[0] * sym(bit) + isi[prev];
        } else {
            Complex acc{};
            for (std::size_t m = 1; m <= k; ++m) acc += g[m] * sym((prev >> (m - 1)) & 1u);
            expected = g[0] * sym(bit) + acc;
        }
        return std::norm(stats[k] - expected);
    };

    auto best_state = [&](const std::vector<double> &metric) {
        std::size_t best = 0;
        for (std::size_t s = 1; s < states; ++s)
            if (metric[s] < metric[best]) best = s;
        return best;
    };

    // Symbol at time `t - depth` on the survivor ending in `state` at time t.
    auto trace = [&](std::size_t t, std::size_t state, std::size_t depth) {
        for (std::size_t i = 0; i < depth; ++i, --t)
            state = (state >> 1) | (static_cast<std::size_t>(surv[t * states + state]) << top);
        return state;
    };

    const std::size_t depth = static_cast<std::size_t>(cfg.traceback_depth);
    const bool fixed_lag = depth > 0 && depth < n;

    for (std::size_t k = 0; k < n; ++k) {
        for (std::size_t s = 0; s < states; ++s) {
            const unsigned bit = s & 1u;
            const std::size_t p0 = s >> 1;
            const std::size_t p1 = p0 | (std::size_t{1} << top);
            const double c0 = pm[p0] == kInfinity ? kInfinity : pm[p0] + branch(k, p0, bit);
            const double c1 = pm[p1] == kInfinity ? kInfinity : pm[p1] + branch(k, p1, bit);
            const bool take1 = c1 < c0;
            next[s] = take1 ? c1 : c0;
            surv[k * states + s] = take1 ? 1 : 0;
        }
        pm.swap(next);
        if (fixed_lag && k >= depth) out[k - depth] = trace(k, best_state(pm), depth) & 1u;
    }

    std::size_t state = best_state(pm);
    const std::size_t undecided = fixed_lag ? depth : n;
    for (std::size_t i = 0; i < undecided; ++i) {
        const std::size_t t = n - 1 - i;
        out[t] = state & 1u;
        state = (state >> 1) | (static_cast<std::size_t>(surv[t * states + state]) << top);
    }
    return out;
}

} // namespace uwb
