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

#ifndef UWB_ADC_HPP
#define UWB_ADC_HPP

#include <vector>

#include "uwb/rng.hpp"
#include "uwb/types.hpp"

namespace uwb {

/// Behavioral converter: a uniform mid-rise quantizer per way, with static
/// per-way offset and gain and optional comparator noise. A flash converter
/// is modeled with ways > 1; an SAR pair with ways == 1 and comparator noise.
struct AdcConfig {
    int bits = 5;
    double full_scale = 1.0;
    int ways = 1;
    std::vector<double> way_offset{0.0};
    std::vector<double> way_gain{1.0};
    double comparator_noise_sigma = 0.0;

    /// Mismatch-free converter.
    static AdcConfig ideal(int bits, int ways = 1, double full_scale = 1.0);
};

inline constexpr int kMaxAdcBits = 12;

void validate(const AdcConfig &cfg);

/// Mid-rise uniform quantizer: step = 2 fs / 2^bits, output
/// step * (floor(x / step) + 0.5) clipped to +-(fs - step / 2). With one bit
/// this is fs/2 * sign(x) with sign(0) = +1.
double quantize_uniform(double x, int bits, double full_scale);

/// Sample n goes through way n mod ways:
/// q(way_gain[w] * x + way_offset[w] + noise). Real and imaginary parts of a
/// complex buffer are converted independently (I and Q converters); a real
/// buffer only has its real part converted.
SampleBuffer adc_sample(SampleBuffer buf, const AdcConfig &cfg, Rng &rng);

/// 10 log10(sum |clean|^2 / sum |clean - quantized|^2); +inf when identical.
double sqnr_db(const SampleBuffer &clean, const SampleBuffer &quantized);

} // namespace uwb

#endif
