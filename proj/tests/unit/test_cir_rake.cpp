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

#include "uwb/adc.hpp"
#include "uwb/backend.hpp"
#include "uwb/channel.hpp"

using namespace uwb;

namespace {

constexpr std::size_t kSps = 10;
constexpr std::size_t kPeriod = 127 * kSps;

SampleBuffer pulse() { return gaussian_pulse({}, 1e9); }

SampleBuffer header_template() {
    const auto pn = generate_pn_sequence(7, 1);
    return modulate_symbols(frame_symbols(make_frame(pn, 4, {})), pulse(), kSps);
}

CirOptions cyclic() {
    CirOptions o;
    o.period_samples = kPeriod;
    return o;
}

/// Noiseless received header at `offset`, through `ch`, with room for the window.
SampleBuffer received(const ChannelRealization &ch, std::size_t offset) {
    const auto t = header_template();
    const auto y = apply_channel(t, ch);
    std::vector<Complex> s(offset + y.size() + 200);
    std::copy(y.samples.begin(), y.samples.end(), s.begin() + static_cast<std::ptrdiff_t>(offset));
    return SampleBuffer(std::move(s), 1e9);
}

SyncResult at(std::int64_t offset) { return SyncResult{true, offset, 1.0, 0}; }

/// Squared distance between the estimated taps (coeff * scale) and the
/// unquantized correlation at the finger delays.
double estimate_error(const CirEstimate &e, const std::vector<Complex> &c) {
    double err = 0.0;
    for (const auto &f : e.fingers) err += std::norm(f.coeff * e.scale - c[static_cast<std::size_t>(f.delay_samples)]);
    return err;
}

} // namespace

TEST(Cir, IdentityChannel) {
    const ChannelRealization ch{{Tap{0.0, 1.0}}};
    const auto rx = received(ch, 30);
    const auto e = estimate_cir(rx, header_template(), at(30), 4, 4, cyclic());
    ASSERT_EQ(e.fingers.size(), 1u);
    EXPECT_EQ(e.fingers[0].delay_samples, 0);
    EXPECT_LE(std::abs(e.fingers[0].coeff - Complex(1.0, 0.0)), 0.0625 * std::sqrt(2.0));
    EXPECT_NEAR(e.fingers[0].coeff.real(), 1.0, 0.0625);
    EXPECT_NEAR(e.scale, 1.0, 1e-9);
}

TEST(Cir, TwoTapExample) {
    const ChannelRealization ch{{Tap{0.0, 1.0}, Tap{20e-9, 0.5}}};
    const auto e = estimate_cir(received(ch, 12), header_template(), at(12), 4, 4, cyclic());
    ASSERT_EQ(e.fingers.size(), 2u);
    EXPECT_EQ(e.fingers[0].delay_samples, 0);
    EXPECT_EQ(e.fingers[1].delay_samples, 20);
    const double tol = 0.0625 + 1.0 / 127.0;
    EXPECT_NEAR(std::abs(e.fingers[0].coeff), 1.0, tol);
    EXPECT_NEAR(std::abs(e.fingers[1].coeff), 0.5, tol);
}

TEST(Cir, SixteenBitsIsTransparent) {
    const ChannelRealization ch{{Tap{0.0, Complex(0.6, -0.5)}, Tap{7e-9, Complex(0.1, 0.4)}, Tap{33e-9, 0.3}}};
    const auto rx = received(ch, 5);
    const auto t = header_template();
    const auto c = correlate_cir(rx, t, 5, cyclic());
    const auto e = estimate_cir(rx, t, at(5), 3, 16, cyclic());
    ASSERT_EQ(e.fingers.size(), 3u);
    for (const auto &f : e.fingers)
        EXPECT_LT(std::abs(f.coeff * e.scale - c[static_cast<std::size_t>(f.delay_samples)]), 1e-4) << f.delay_samples;
    const auto raw = estimate_cir(rx, t, at(5), 3, 0, cyclic());
    for (const auto &f : raw.fingers)
        EXPECT_NEAR(std::abs(f.coeff * raw.scale - c[static_cast<std::size_t>(f.delay_samples)]), 0.0, 1e-15);
}

TEST(Cir, ErrorShrinksWithBits) {
    ChannelConfig cfg;
    cfg.decay_gamma_s = 8e-9;
    Rng rng(10);
    const auto t = header_template();
    for (int trial = 0; trial < 20; ++trial) {
        const auto ch = draw_channel(cfg, rng);
        const auto rx = received(ch, 0);
        const auto c = correlate_cir(rx, t, 0, cyclic());
        const double e4 = estimate_error(estimate_cir(rx, t, at(0), 4, 4, cyclic()), c);
        const double e8 = estimate_error(estimate_cir(rx, t, at(0), 4, 8, cyclic()), c);
        const double e16 = estimate_error(estimate_cir(rx, t, at(0), 4, 16, cyclic()), c);
        EXPECT_GE(e4, e8) << trial;
        EXPECT_GE(e8, e16) << trial;
    }
}

TEST(Cir, CoefficientsOnTheQuantizerGrid) {
    const ChannelRealization ch{{Tap{0.0, Complex(0.3, 0.8)}, Tap{15e-9, Complex(-0.4, 0.2)}}};
    const auto e = estimate_cir(received(ch, 0), header_template(), at(0), 4, 4, cyclic());
    for (const auto &f : e.fingers) {
        EXPECT_EQ(f.coeff.real(), quantize_uniform(f.coeff.real(), 4, 1.0));
        EXPECT_EQ(f.coeff.imag(), quantize_uniform(f.coeff.imag(), 4, 1.0));
    }
}

TEST(Cir, Errors) {
    const auto t = header_template();
    const auto rx = received(ChannelRealization{{Tap{0.0, 1.0}}}, 0);
    EXPECT_THROW(estimate_cir(rx, t, SyncResult{}, 4), SignalError);
    EXPECT_THROW(correlate_cir(rx, t, -1), InvalidParameter);
    EXPECT_THROW(correlate_cir(SampleBuffer(std::vector<Complex>(100), 1e9), t, 0), SignalError);
    const std::vector<Finger> dup{{3, 1.0}, {3, 0.5}};
    EXPECT_THROW(make_cir(dup, 4), InvalidParameter);
    const std::vector<Finger> zero{{0, 0.0}};
    EXPECT_THROW(make_cir(zero, 4), SignalError);
    const std::vector<Finger> one{{0, 1.0}};
    EXPECT_THROW(make_cir(one, 17), InvalidParameter);
}

TEST(Rake, SingleFingerUnitStatistic) {
    const auto p = pulse();
    const std::vector<Finger> f{{0, 1.0}};
    const auto cir = make_cir(f, 0);
    const auto z = rake_combine(p, cir, ModulationConfig{}, p, 1);
    ASSERT_EQ(z.size(), 1u);
    EXPECT_NEAR(std::abs(z[0] - Complex(1.0, 0.0)), 0.0, 1e-12);
}

TEST(Rake, TwoFingerMrc) {
    // Isolated +1 pulse through taps 0.8 @ 0 and 0.6 @ 30 ns (no pulse overlap).
    const auto p = pulse();
    const ChannelRealization ch{{Tap{0.0, 0.8}, Tap{30e-9, 0.6}}};
    const auto y = apply_channel(p, ch);
    const std::vector<Finger> taps{{0, 0.8}, {30, 0.6}};
    auto cir = make_cir(taps, 0);
    // Perfect CSI weights are the taps themselves.
    for (auto &f : cir.fingers) f.coeff *= cir.scale;
    const auto z = rake_combine(y, cir, ModulationConfig::from_bit_rate(10e6, Mode::gen2_iq), p, 1);
    EXPECT_NEAR(z[0].real(), 0.8 * 0.8 + 0.6 * 0.6, 1e-9);
    EXPECT_NEAR(z[0].imag(), 0.0, 1e-12);
}

TEST(Rake, NegatingInputNegatesStatistics) {
    const auto p = pulse();
    const auto pn = generate_pn_sequence(5, 1);
    std::vector<double> a(pn.begin(), pn.end());
    const auto x = apply_channel(modulate_symbols(a, p, kSps),
                                 ChannelRealization{{Tap{0.0, Complex(0.7, 0.2)}, Tap{4e-9, Complex(0.0, 0.5)}}});
    auto neg = x;
    for (auto &v : neg.samples) v = -v;
    const std::vector<Finger> taps{{0, Complex(0.7, 0.2)}, {4, Complex(0.0, 0.5)}};
    const auto cir = make_cir(taps, 4);
    const auto z1 = rake_combine(x, cir, ModulationConfig{}, p, a.size());
    const auto z2 = rake_combine(neg, cir, ModulationConfig{}, p, a.size());
    for (std::size_t k = 0; k < z1.size(); ++k) EXPECT_EQ(z1[k], -z2[k]);
    EXPECT_THROW(rake_combine(x, cir, ModulationConfig{}, p, a.size() + 5), SignalError);
}

TEST(IsiChannel, SingleTapLongPriHasNoIsi) {
    const std::vector<Finger> f{{0, Complex(0.0, 2.0)}};
    const auto g = derive_isi_channel(make_cir(f, 4), pulse(), ModulationConfig::from_bit_rate(10e6, Mode::gen2_iq), 2);
    ASSERT_EQ(g.taps.size(), 3u);
    EXPECT_GT(g.taps[0].real(), 0.0);
    EXPECT_EQ(g.taps[0].imag(), 0.0);
    EXPECT_NEAR(std::abs(g.taps[1]), 0.0, 1e-12);
    EXPECT_NEAR(std::abs(g.taps[2]), 0.0, 1e-12);
    EXPECT_NEAR(std::abs(g.rotation), 1.0, 1e-12);
}

TEST(IsiChannel, TenNanosecondEchoGivesTwoTaps) {
    const std::vector<Finger> f{{0, 1.0}, {10, 0.5}};
    const auto g = derive_isi_channel(make_cir(f, 4), pulse(), ModulationConfig{}, 3);
    ASSERT_EQ(g.taps.size(), 4u);
    int significant = 0;
    for (const auto &t : g.taps) significant += std::abs(t) / std::abs(g.taps[0]) >= 0.01;
    EXPECT_EQ(significant, 2);
    EXPECT_GE(std::abs(g.taps[1]) / std::abs(g.taps[0]), 0.01);
}

TEST(IsiChannel, MemoryZero) {
    const std::vector<Finger> f{{0, 1.0}, {10, 0.5}};
    const auto g = derive_isi_channel(make_cir(f, 4), pulse(), ModulationConfig{}, 0);
    ASSERT_EQ(g.taps.size(), 1u);
    EXPECT_GT(g.taps[0].real(), 0.0);
}
