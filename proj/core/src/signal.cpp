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

#include "uwb/signal.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace uwb {

void validate(const SampleBuffer &buf) {
    if (!(buf.rate_hz > 0.0) || !std::isfinite(buf.rate_hz))
        throw InvalidParameter("sample rate must be positive");
    if (buf.is_real()) {
        for (const auto &x : buf.samples)
            if (x.imag() != 0.0)
                throw InvalidParameter("real-domain buffer carries an imaginary part");
    }
}

ModulationConfig ModulationConfig::from_bit_rate(double bit_rate_bps, Mode mode) {
    return ModulationConfig{1.0 / bit_rate_bps, bit_rate_bps, mode};
}

void validate(const PulseShape &shape) {
    if (!(shape.sigma_s > 0.0)) throw InvalidParameter("pulse sigma must be positive");
    if (!(shape.span_sigmas >= 3.0)) throw InvalidParameter("pulse span must be >= 3 sigma");
}

void validate(const ModulationConfig &mod) {
    if (!(mod.pri_s > 0.0) || !(mod.bit_rate_bps > 0.0))
        throw InvalidParameter("pri and bit rate must be positive");
    if (std::abs(mod.pri_s * mod.bit_rate_bps - 1.0) > 1e-9)
        throw InvalidParameter("pri_s * bit_rate_bps must equal 1");
}

SampleBuffer gaussian_pulse(const PulseShape &shape, double rate_hz, SignalDomain domain) {
    validate(shape);
    if (!(rate_hz > 0.0)) throw InvalidParameter("sample rate must be positive");
    if (rate_hz < 4.0 / (kTwoPi * shape.sigma_s))
        throw InvalidParameter("sample rate too low for pulse sigma");

    const double sigma_samples = shape.sigma_s * rate_hz;
    const auto half = static_cast<long>(std::floor(shape.span_sigmas * sigma_samples + 1e-9));
    std::vector<Complex> p(static_cast<std::size_t>(2 * half + 1));
    double sum = 0.0;
    for (long n = -half; n <= half; ++n) {
        const double t = static_cast<double>(n) / sigma_samples;
        const double v = std::exp(-0.5 * t * t);
        p[static_cast<std::size_t>(n + half)] = v;
        sum += v * v;
    }
    const double norm = std::sqrt(rate_hz / sum);
    for (auto &v : p) v *= norm;
    return SampleBuffer(std::move(p), rate_hz, -static_cast<double>(half) / rate_hz, domain);
}

std::size_t pulse_center_index(const SampleBuffer &pulse) {
    return static_cast<std::size_t>(std::llround(-pulse.t0_s * pulse.rate_hz));
}

std::size_t samples_per_symbol(const ModulationConfig &mod, double rate_hz) {
    const auto sps = std::llround(mod.pri_s * rate_hz);
    if (sps < 1) throw InvalidParameter("pulse repetition interval shorter than one sample");
    return static_cast<std::size_t>(sps);
}

bool pulses_overlap(const ModulationConfig &mod, const PulseShape &shape, double rate_hz) {
    const auto pulse = gaussian_pulse(shape, rate_hz);
    return samples_per_symbol(mod, rate_hz) < pulse.size();
}

Chips make_sfd(const Chips &pn_period, std::size_t length) {
    if (pn_period.empty()) throw InvalidParameter("empty PN period");
    Chips sfd(length);
    for (std::size_t i = 0; i < length; ++i) sfd[length - 1 - i] = pn_period[i % pn_period.size()];
    return sfd;
}

Frame make_frame(const Chips &pn_period, int reps, Bits payload) {
    if (reps < 1) throw InvalidParameter("preamble repetitions must be >= 1");
    Frame f;
    f.preamble.reserve(pn_period.size() * static_cast<std::size_t>(reps));
    for (int r = 0; r < reps; ++r) f.preamble.insert(f.preamble.end(), pn_period.begin(), pn_period.end());
    f.sfd = make_sfd(pn_period);
    f.payload = std::move(payload);
    return f;
}

bool sfd_matches_preamble_shift(const Chips &pn_period, const Chips &sfd) {
    const std::size_t n = pn_period.size();
    for (std::size_t shift = 0; shift < n; ++shift) {
        bool same = true;
        for (std::size_t i = 0; i < sfd.size() && same; ++i) same = sfd[i] == pn_period[(shift + i) % n];
        if (same) return true;
    }
    return false;
}

std::vector<double> frame_symbols(const Frame &frame) {
    std::vector<double> a;
    a.reserve(frame.symbol_count());
    for (auto c : frame.preamble) a.push_back(static_cast<double>(c));
    for (auto c : frame.sfd) a.push_back(static_cast<double>(c));
    for (auto b : frame.payload) a.push_back(b ? 1.0 : -1.0);
    return a;
}

SampleBuffer modulate_symbols(std::span<const double> amplitudes, const SampleBuffer &pulse,
                              std::size_t sps) {
    SampleBuffer out;
    out.rate_hz = pulse.rate_hz;
    out.t0_s = pulse.t0_s;
    out.domain = pulse.domain;
    if (amplitudes.empty()) return out;
    out.samples.assign((amplitudes.size() - 1) * sps + pulse.size(), Complex{});
    for (std::size_t k = 0; k < amplitudes.size(); ++k) {
        const double a = amplitudes[k];
        if (a == 0.0) continue;
        Complex *dst = out.samples.data() + k * sps;
        for (std::size_t n = 0; n < pulse.size(); ++n) dst[n] += a * pulse[n];
    }
    return out;
}

SampleBuffer modulate_frame(const Frame &frame, const ModulationConfig &mod,
                            const PulseShape &shape, double rate_hz) {
    validate(mod);
    const auto pulse = gaussian_pulse(shape, rate_hz, domain_of(mod.mode));
    const auto amps = frame_symbols(frame);
    return modulate_symbols(amps, pulse, samples_per_symbol(mod, rate_hz));
}

double max_tx_power_dbm(double bandwidth_hz) {
    if (!(bandwidth_hz >= 1e6)) throw InvalidParameter("bandwidth must be >= 1 MHz");
    return kMaskDbmPerMhz + 10.0 * std::log10(bandwidth_hz / 1e6);
}

} // namespace uwb
