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

#include "uwb/channel.hpp"

#include <algorithm>
#include <cmath>

namespace uwb {

double ChannelRealization::total_power() const noexcept {
    double p = 0.0;
    for (const auto &t : taps) p += std::norm(t.gain);
    return p;
}

std::size_t ChannelRealization::max_delay_samples(double rate_hz) const {
    long long m = 0;
    for (const auto &t : taps) m = std::max(m, std::llround(t.delay_s * rate_hz));
    return static_cast<std::size_t>(m);
}

namespace {

void check_delays(const std::vector<Tap> &taps, const char *what) {
    for (std::size_t i = 0; i < taps.size(); ++i) {
        if (!(taps[i].delay_s >= 0.0)) throw InvalidParameter(std::string(what) + ": negative tap delay");
        if (i > 0 && !(taps[i].delay_s > taps[i - 1].delay_s))
            throw InvalidParameter(std::string(what) + ": tap delays must be strictly increasing");
    }
}

} // namespace

void validate(const ChannelConfig &cfg) {
    if (!(cfg.decay_gamma_s >= 0.0)) throw InvalidParameter("decay_gamma_s must be >= 0");
    if (!(cfg.tap_spacing_s > 0.0)) throw InvalidParameter("tap_spacing_s must be > 0");
    if (!(cfg.span_gammas >= 3.0)) throw InvalidParameter("span_gammas must be >= 3");
    check_delays(cfg.profile, "profile");
}

void validate(const ChannelRealization &ch) {
    if (ch.taps.empty()) throw InvalidParameter("channel has no taps");
    check_delays(ch.taps, "channel");
}

ChannelRealization draw_channel(const ChannelConfig &cfg, Rng &rng) {
    validate(cfg);
    std::vector<double> delays;
    std::vector<Complex> mean_amp;
    if (!cfg.profile.empty()) {
        for (const auto &t : cfg.profile) {
            delays.push_back(t.delay_s);
            mean_amp.push_back(t.gain);
        }
    } else if (cfg.decay_gamma_s == 0.0) {
        return ChannelRealization{{Tap{0.0, Complex{1.0, 0.0}}}};
    } else {
        const auto last = static_cast<std::size_t>(
            std::floor(cfg.span_gammas * cfg.decay_gamma_s / cfg.tap_spacing_s + 1e-9));
        for (std::size_t l = 0; l <= last; ++l) {
            const double tau = static_cast<double>(l) * cfg.tap_spacing_s;
            delays.push_back(tau);
            mean_amp.push_back(std::sqrt(std::exp(-tau / cfg.decay_gamma_s)));
        }
    }

    ChannelRealization ch;
    ch.taps.resize(delays.size());
    double mean_power = 0.0;
    for (std::size_t l = 0; l < delays.size(); ++l) {
        const double p = std::norm(mean_amp[l]);
        mean_power += p;
        Complex g = mean_amp[l];
        if (cfg.fading == Fading::rayleigh)
            g = cfg.real_taps ? Complex{real_gaussian(rng, p), 0.0} : complex_gaussian(rng, p);
        ch.taps[l] = Tap{delays[l], g};
    }

    const double norm = cfg.normalization == PowerNormalization::per_realization ? ch.total_power()
                                                                                 : mean_power;
    if (norm > 0.0) {
        const double s = 1.0 / std::sqrt(norm);
        for (auto &t : ch.taps) t.gain *= s;
    }
    return ch;
}

ChannelRealization draw_channel(const ChannelConfig &cfg) {
    Rng rng(cfg.seed);
    return draw_channel(cfg, rng);
}

double rms_delay_spread(const ChannelRealization &ch) {
    if (ch.taps.empty()) throw InvalidParameter("channel has no taps");
    double p = 0.0, m1 = 0.0;
    for (const auto &t : ch.taps) {
        const double w = std::norm(t.gain);
        p += w;
        m1 += w * t.delay_s;
    }
    if (p == 0.0) return 0.0;
    const double mean = m1 / p;
    double var = 0.0;
    for (const auto &t : ch.taps) {
        const double d = t.delay_s - mean;
        var += std::norm(t.gain) * d * d;
    }
    return std::sqrt(var / p);
}

SampleBuffer apply_channel(const SampleBuffer &buf, const ChannelRealization &ch) {
    validate(ch);
    const std::size_t extra = ch.max_delay_samples(buf.rate_hz);
    SampleBuffer out;
    out.rate_hz = buf.rate_hz;
    out.t0_s = buf.t0_s;
    out.domain = buf.domain;
    out.samples.assign(buf.size() + extra, Complex{});
    for (const auto &t : ch.taps) {
        const auto d = static_cast<std::size_t>(std::llround(t.delay_s * buf.rate_hz));
        const Complex g = t.gain;
        Complex *dst = out.samples.data() + d;
        for (std::size_t n = 0; n < buf.size(); ++n) dst[n] += g * buf[n];
    }
    return out;
}

double awgn_variance(double ebn0_db, double eb, double rate_hz) {
    if (!(eb > 0.0)) throw InvalidParameter("eb must be positive");
    if (ebn0_db == kInfinity) return 0.0;
    const double n0 = eb / std::pow(10.0, ebn0_db / 10.0);
    return n0 * rate_hz;
}

SampleBuffer add_awgn(SampleBuffer buf, double ebn0_db, double eb, Rng &rng) {
    const double var = awgn_variance(ebn0_db, eb, buf.rate_hz);
    if (var == 0.0) return buf;
    // Per real dimension: complex buffers get var/2 on I and Q, real ones var/2 total.
    std::normal_distribution<double> n(0.0, std::sqrt(var / 2.0));
    if (buf.is_real()) {
        for (auto &x : buf.samples) x += n(rng);
    } else {
        for (auto &x : buf.samples) {
            const double re = n(rng);
            const double im = n(rng);
            x += Complex{re, im};
        }
    }
    return buf;
}

SampleBuffer add_cw_interferer(SampleBuffer buf, const InterfererConfig &cfg, double signal_power) {
    if (cfg.sir_db == kInfinity) return buf;
    if (!(std::abs(cfg.offset_hz) < buf.rate_hz / 2.0))
        throw InvalidParameter("interferer offset outside +-rate/2");
    const double amp = std::sqrt(signal_power / std::pow(10.0, cfg.sir_db / 10.0));
    const double w = kTwoPi * cfg.offset_hz / buf.rate_hz;
    for (std::size_t n = 0; n < buf.size(); ++n) {
        const double ph = w * static_cast<double>(n) + cfg.phase_rad;
        if (buf.is_real())
            buf[n] += std::sqrt(2.0) * amp * std::cos(ph);
        else
            buf[n] += amp * Complex{std::cos(ph), std::sin(ph)};
    }
    return buf;
}

SubBand::SubBand(int index) : index_(index) {
    if (index < 0 || index >= kCount) throw InvalidParameter("sub-band index must be in [0, 13]");
}

double subband_center_hz(SubBand b) {
    return kBandLowHz + (b.index() + 0.5) * (kBandHighHz - kBandLowHz) / SubBand::kCount;
}

} // namespace uwb
