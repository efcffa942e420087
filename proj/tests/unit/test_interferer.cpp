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

#include <gtest/gtest.h>

#include <cmath>

#include "uwb/backend.hpp"
#include "uwb/channel.hpp"

using namespace uwb;

namespace {

constexpr double kRate = 1e9;

SampleBuffer noisy_tone(double f_hz, double tone_power, std::size_t n, Rng &rng, double noise_var = 1.0) {
    std::uniform_real_distribution<double> ph(0.0, kTwoPi);
    const double amp = std::sqrt(tone_power), p0 = ph(rng);
    std::vector<Complex> s(n);
    for (std::size_t i = 0; i < n; ++i) {
        s[i] = std::polar(amp, kTwoPi * f_hz * static_cast<double>(i) / kRate + p0);
        if (noise_var > 0.0) s[i] += complex_gaussian(rng, noise_var);
    }
    return SampleBuffer(std::move(s), kRate);
}

double rms_error(std::size_t nfft, int trials, std::uint64_t seed) {
    Rng rng(seed);
    std::uniform_real_distribution<double> frac(0.0, 1.0);
    double acc = 0.0;
    for (int t = 0; t < trials; ++t) {
        const double bin = kRate / 4096.0;
        const double f = (500.0 + 300.0 * frac(rng)) * bin;
        const auto est = estimate_interferer(noisy_tone(f, 1.0, 16 * 4096, rng), nfft);
        acc += (est.freq_hz - f) * (est.freq_hz - f);
    }
    return std::sqrt(acc / trials);
}

} // namespace

TEST(Interferer, NoiseOnlyRarelyDetected) {
    Rng rng(1);
    const int trials = 1000;
    int hits = 0;
    // 16 segments at 50% overlap.
    const std::size_t n = 4096 * 17 / 2;
    for (int t = 0; t < trials; ++t) hits += estimate_interferer(noisy_tone(0.0, 0.0, n, rng), 4096).detected;
    EXPECT_LE(hits, 10);
}

TEST(Interferer, ExactBinHasNoError) {
    Rng rng(2);
    const double bin = kRate / 4096.0;
    for (int k : {-1500, -3, 1, 328, 2047}) {
        const auto est = estimate_interferer(noisy_tone(k * bin, 1.0, 4 * 4096, rng, 0.0), 4096);
        EXPECT_TRUE(est.detected);
        EXPECT_NEAR(est.freq_hz, k * bin, 1e-6) << k;
        EXPECT_NEAR(est.power_rel_db, 0.0, 0.01);
    }
}

TEST(Interferer, OffBinToneAtZeroDbSnr) {
    Rng rng(3);
    const double bin = kRate / 4096.0;
    double acc = 0.0;
    const int trials = 100;
    for (int t = 0; t < trials; ++t) {
        const double f = (327.0 + 0.3) * bin;
        const auto est = estimate_interferer(noisy_tone(f, 1.0, 16 * 4096, rng), 4096);
        ASSERT_TRUE(est.detected);
        EXPECT_LE(std::abs(est.freq_hz - f), kRate / (2 * 4096.0));
        acc += (est.freq_hz - f) * (est.freq_hz - f);
    }
    EXPECT_LE(std::sqrt(acc / trials), 0.1 * bin);
}

TEST(Interferer, ErrorDecreasesWithNfft) {
    EXPECT_LT(rms_error(4096, 100, 4), rms_error(1024, 100, 4));
}

TEST(Interferer, WrapsAroundNyquist) {
    Rng rng(5);
    const double bin = kRate / 1024.0;
    // 0.2 bins below +rate/2, so the peak is the -rate/2 edge bin.
    const double f = 511.8 * bin;
    const auto est = estimate_interferer(noisy_tone(f, 1.0, 8 * 1024, rng, 0.0), 1024);
    EXPECT_TRUE(est.detected);
    EXPECT_NEAR(est.freq_hz, f, 0.1 * bin);
    EXPECT_LT(est.freq_hz, kRate / 2);
}

TEST(Interferer, Errors) {
    Rng rng(6);
    EXPECT_THROW(estimate_interferer(noisy_tone(1e6, 1.0, 100, rng), 4096), SignalError);
    EXPECT_THROW(estimate_interferer(noisy_tone(1e6, 1.0, 5000, rng), 4096, 0.0), InvalidParameter);
}
