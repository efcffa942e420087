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

#ifndef UWB_FRONTEND_HPP
#define UWB_FRONTEND_HPP

#include <optional>

#include "uwb/types.hpp"

namespace uwb {

inline constexpr double kDefaultNotchPoleRadius = 0.995;
inline constexpr double kDefaultAgcLoading = 3.0;

struct NotchSettings {
    double f0_hz = 0.0;
    double pole_radius = kDefaultNotchPoleRadius;
};

struct FrontEndConfig {
    double cfo_hz = 0.0;
    double phase_rad = 0.0;
    /// ADC full scale over signal rms.
    double agc_loading = kDefaultAgcLoading;
    std::optional<NotchSettings> notch;
};

void validate(const FrontEndConfig &cfg);

/// First-order complex notch
///
///     y[n] = x[n] - e^{j w0} x[n-1] + r e^{j w0} y[n-1],   w0 = 2 pi f0 / rate
///
/// with its zero on the unit circle at +f0 only. The delay registers persist
/// between notch_apply calls, so a long stream can be filtered in blocks.
/// One state per stream.
class NotchState {
  public:
    explicit NotchState(NotchSettings settings);
    NotchState(double f0_hz, double pole_radius) : NotchState(NotchSettings{f0_hz, pole_radius}) {}

    const NotchSettings &settings() const noexcept { return settings_; }
    void reset() noexcept { x1_ = y1_ = Complex{}; }

    /// Filters in place.
    void process(std::vector<Complex> &samples, double rate_hz);

  private:
    NotchSettings settings_;
    Complex x1_{};
    Complex y1_{};
};

/// |H(e^{jw})| of the notch at frequency f_hz.
double notch_magnitude(const NotchSettings &s, double f_hz, double rate_hz);

/// y[n] = x[n] exp(j (2 pi cfo n / rate + phase)). Identity on a real-domain
/// (carrierless) buffer.
SampleBuffer downconvert(SampleBuffer buf, double cfo_hz, double phase_rad);

/// g = 1 / (loading * rms(buf)), so the scaled signal has rms 1/loading and a
/// full scale of 1.0 sits `loading` times above it. Throws SignalError on an
/// all-zero buffer.
double agc_gain(const SampleBuffer &buf, double loading);

/// Complex notch over `buf`; requires a complex I/Q buffer.
SampleBuffer notch_apply(SampleBuffer buf, NotchState &state);

struct FrontEndOutput {
    SampleBuffer buffer;
    double gain = 1.0;
};

/// downconvert, optional notch, then AGC scaling.
FrontEndOutput front_end_chain(SampleBuffer buf, const FrontEndConfig &cfg);

} // namespace uwb

#endif
