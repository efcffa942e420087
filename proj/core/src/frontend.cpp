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

#include "uwb/frontend.hpp"

#include <cmath>

namespace uwb {

void validate(const FrontEndConfig &cfg) {
    if (!(cfg.agc_loading > 0.0)) throw InvalidParameter("agc_loading must be > 0");
    if (cfg.notch) {
        const double r = cfg.notch->pole_radius;
        if (!(r > 0.0 && r < 1.0)) throw InvalidParameter("notch pole_radius must be in (0, 1)");
    }
}

NotchState::NotchState(NotchSettings settings) : settings_(settings) {
    const double r = settings.pole_radius;
    if (!(r > 0.0 && r < 1.0)) throw InvalidParameter("notch pole_radius must be in (0, 1)");
}

void NotchState::process(std::vector<Complex> &samples, double rate_hz) {
    const double w0 = kTwoPi * settings_.f0_hz / rate_hz;
    const Complex zero = std::polar(1.0, w0);
    const Complex pole = settings_.pole_radius * zero;
    Complex x1 = x1_, y1 = y1_;
    for (auto &x : samples) {
        const Complex y = x - zero * x1 + pole * y1;
        x1 = x;
        y1 = y;
        x = y;
    }
    x1_ = x1;
    y1_ = y1;
}

double notch_magnitude(const NotchSettings &s, double f_hz, double rate_hz) {
    const double w0 = kTwoPi * s.f0_hz / rate_hz;
    const double w = kTwoPi * f_hz / rate_hz;
    const Complex zinv = std::polar(1.0, -w);
    const Complex e0 = std::polar(1.0, w0);
    return std::abs((1.0 - e0 * zinv) / (1.0 - s.pole_radius * e0 * zinv));
}

SampleBuffer downconvert(SampleBuffer buf, double cfo_hz, double phase_rad) {
    if (buf.is_real()) return buf;
    if (!(std::abs(cfo_hz) < buf.rate_hz / 2.0)) throw InvalidParameter("|cfo| must be below rate/2");
    if (cfo_hz == 0.0 && phase_rad == 0.0) return buf;
    const double w = kTwoPi * cfo_hz / buf.rate_hz;
    for (std::size_t n = 0; n < buf.size(); ++n)
        buf[n] *= std::polar(1.0, w * static_cast<double>(n) + phase_rad);
    return buf;
}

double agc_gain(const SampleBuffer &buf, double loading) {
    if (!(loading > 0.0)) throw InvalidParameter("loading must be > 0");
    const double rms = buf.rms();
    if (!(rms > 0.0)) throw SignalError("AGC input is all zero");
    return 1.0 / (loading * rms);
}

SampleBuffer notch_apply(SampleBuffer buf, NotchState &state) {
    if (buf.is_real()) throw InvalidParameter("complex notch needs a complex I/Q buffer");
    state.process(buf.samples, buf.rate_hz);
    return buf;
}

FrontEndOutput front_end_chain(SampleBuffer buf, const FrontEndConfig &cfg) {
    validate(cfg);
    buf = downconvert(std::move(buf), cfg.cfo_hz, cfg.phase_rad);
    if (cfg.notch) {
        NotchState state(*cfg.notch);
        buf = notch_apply(std::move(buf), state);
    }
    const double g = agc_gain(buf, cfg.agc_loading);
    for (auto &x : buf.samples) x *= g;
    return FrontEndOutput{std::move(buf), g};
}

} // namespace uwb
