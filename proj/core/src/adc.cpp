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

#include "uwb/adc.hpp"

#include <algorithm>
#include <cmath>

namespace uwb {

AdcConfig AdcConfig::ideal(int bits, int ways, double full_scale) {
    AdcConfig c;
    c.bits = bits;
    c.full_scale = full_scale;
    c.ways = ways;
    c.way_offset.assign(static_cast<std::size_t>(std::max(ways, 1)), 0.0);
    c.way_gain.assign(static_cast<std::size_t>(std::max(ways, 1)), 1.0);
    return c;
}

void validate(const AdcConfig &cfg) {
    if (cfg.bits < 1 || cfg.bits > kMaxAdcBits) throw InvalidParameter("adc bits must be in [1, 12]");
    if (!(cfg.full_scale > 0.0)) throw InvalidParameter("adc full_scale must be > 0");
    if (cfg.ways < 1) throw InvalidParameter("adc ways must be >= 1");
    const auto w = static_cast<std::size_t>(cfg.ways);
    if (cfg.way_offset.size() != w || cfg.way_gain.size() != w)
        throw InvalidParameter("way_offset and way_gain need one entry per way");
    if (!(cfg.comparator_noise_sigma >= 0.0)) throw InvalidParameter("comparator noise must be >= 0");
}

double quantize_uniform(double x, int bits, double full_scale) {
    if (bits < 1 || bits > 52) throw InvalidParameter("bits must be in [1, 52]");
    const double step = 2.0 * full_scale / std::ldexp(1.0, bits);
    const double top = full_scale - step / 2.0;
    const double y = step * (std::floor(x / step) + 0.5);
    return std::clamp(y, -top, top);
}

SampleBuffer adc_sample(SampleBuffer buf, const AdcConfig &cfg, Rng &rng) {
    validate(cfg);
    const auto ways = static_cast<std::size_t>(cfg.ways);
    const bool noisy = cfg.comparator_noise_sigma > 0.0;
    std::normal_distribution<double> noise(0.0, noisy ? cfg.comparator_noise_sigma : 1.0);
    const bool real = buf.is_real();
    for (std::size_t n = 0; n < buf.size(); ++n) {
        const std::size_t w = n % ways;
        const double g = cfg.way_gain[w];
        const double off = cfg.way_offset[w];
        double re = g * buf[n].real() + off;
        if (noisy) re += noise(rng);
        re = quantize_uniform(re, cfg.bits, cfg.full_scale);
        double im = 0.0;
        if (!real) {
            im = g * buf[n].imag() + off;
            if (noisy) im += noise(rng);
            im = quantize_uniform(im, cfg.bits, cfg.full_scale);
        }
        buf[n] = Complex{re, im};
    }
    return buf;
}

double sqnr_db(const SampleBuffer &clean, const SampleBuffer &quantized) {
    if (clean.size() != quantized.size()) throw InvalidParameter("buffer lengths differ");
    double sig = 0.0, err = 0.0;
    for (std::size_t n = 0; n < clean.size(); ++n) {
        sig += std::norm(clean[n]);
        err += std::norm(clean[n] - quantized[n]);
    }
    if (err == 0.0) return kInfinity;
    return 10.0 * std::log10(sig / err);
}

} // namespace uwb
