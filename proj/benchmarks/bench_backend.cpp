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

#include <benchmark/benchmark.h>

#include "uwb/harness.hpp"

using namespace uwb;

namespace {

SampleBuffer header_template() {
    const auto pn = generate_pn_sequence(7, 1);
    return modulate_symbols(frame_symbols(make_frame(pn, 4, {})), gaussian_pulse({}, 1e9), 10);
}

SampleBuffer noisy_copy(const SampleBuffer &t, std::size_t lead, std::size_t tail) {
    Rng rng(1);
    std::vector<Complex> s(lead + t.size() + tail);
    for (std::size_t i = 0; i < t.size(); ++i) s[lead + i] = t[i];
    for (auto &x : s) x += complex_gaussian(rng, 0.5);
    return SampleBuffer(std::move(s), t.rate_hz);
}

void BM_Acquire(benchmark::State &state) {
    const auto t = header_template();
    const auto buf = noisy_copy(t, 100, 600);
    const auto shards = static_cast<std::size_t>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(acquire(buf, t, 0.02, 512, shards));
    state.SetItemsProcessed(state.iterations() * 513);
}
BENCHMARK(BM_Acquire)->Arg(1)->Arg(4)->Unit(benchmark::kMillisecond)->UseRealTime();

void BM_Viterbi(benchmark::State &state) {
    const int memory = static_cast<int>(state.range(0));
    std::vector<Complex> g(static_cast<std::size_t>(memory) + 1, 0.3);
    g[0] = 1.0;
    Rng rng(2);
    std::vector<Complex> z(1000);
    for (auto &x : z) x = complex_gaussian(rng, 1.0);
    const auto cfg = ViterbiConfig::with_memory(memory);
    for (auto _ : state) benchmark::DoNotOptimize(viterbi_mlse(z, g, cfg));
    state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(z.size()));
}
BENCHMARK(BM_Viterbi)->Arg(1)->Arg(2)->Arg(4)->Arg(8);

void BM_Rake(benchmark::State &state) {
    const auto pulse = gaussian_pulse({}, 1e9);
    std::vector<Finger> taps;
    for (std::int64_t d = 0; d < state.range(0); ++d) taps.push_back({d * 5, Complex(1.0 / (d + 1), 0.1)});
    const auto cir = make_cir(taps, 4);
    Rng rng(3);
    std::vector<Complex> s(1000 * 10 + 200);
    for (auto &x : s) x = complex_gaussian(rng, 1.0);
    const SampleBuffer buf(std::move(s), 1e9);
    for (auto _ : state) benchmark::DoNotOptimize(rake_combine(buf, cir, ModulationConfig{}, pulse, 1000));
    state.SetItemsProcessed(state.iterations() * 1000);
}
BENCHMARK(BM_Rake)->Arg(1)->Arg(4);

void BM_InterfererEstimate(benchmark::State &state) {
    Rng rng(4);
    std::vector<Complex> s(40000);
    for (std::size_t n = 0; n < s.size(); ++n)
        s[n] = complex_gaussian(rng, 1.0) + std::polar(1.0, kTwoPi * 80.3e6 * static_cast<double>(n) / 1e9);
    const SampleBuffer buf(std::move(s), 1e9);
    for (auto _ : state) benchmark::DoNotOptimize(estimate_interferer(buf, 4096));
}
BENCHMARK(BM_InterfererEstimate)->Unit(benchmark::kMillisecond);

void BM_BerTrial(benchmark::State &state) {
    SimConfig c = preset_gen2();
    c.n_trials = 1;
    for (auto _ : state) benchmark::DoNotOptimize(run_ber_point(c));
    state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(c.n_payload_bits));
}
BENCHMARK(BM_BerTrial)->Unit(benchmark::kMillisecond)->UseRealTime();

} // namespace

BENCHMARK_MAIN();
