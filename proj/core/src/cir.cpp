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

#include "uwb/adc.hpp"

#include <algorithm>
#include <cmath>

namespace uwb {

std::vector<Complex> correlate_cir(const SampleBuffer &rx, const SampleBuffer &tmpl, std::int64_t offset,
                                   const CirOptions &opts) {
    if (offset < 0) throw InvalidParameter("negative correlation offset");
    if (opts.window == 0) throw InvalidParameter("empty delay window");
    if (tmpl.empty()) throw InvalidParameter("empty template");

    std::size_t first = 0, last = tmpl.size();
    const std::size_t period = opts.period_samples;
    if (period > 0 && tmpl.size() >= 2 * period) {
        first = period / 2;
        const std::size_t periods = (tmpl.size() - first) / period;
        last = first + periods * period;
    }

    double energy = 0.0;
    for (std::size_t n = first; n < last; ++n) energy += std::norm(tmpl[n]);
    if (energy == 0.0) throw InvalidParameter("all-zero template");

    const auto base = static_cast<std::size_t>(offset);
    if (base + opts.window - 1 + last > rx.size()) throw SignalError("receive buffer too short for channel estimate");

    std::vector<Complex> c(opts.window);
    for (std::size_t n = first; n < last; ++n) {
        const Complex p = std::conj(tmpl[n]);
        if (p == Complex{}) continue;
        const Complex *r = rx.samples.data() + base + n;
        for (std::size_t d = 0; d < opts.window; ++d) c[d] += r[d] * p;
    }
    for (auto &v : c) v /= energy;
    return c;
}

CirEstimate make_cir(std::span<const Finger> taps, int q_bits) {
    if (taps.empty()) throw InvalidParameter("no taps");
    if (q_bits < 0 || q_bits > kMaxCirBits) throw InvalidParameter("q_bits out of range");

    CirEstimate est;
    est.q_bits = q_bits;
    est.fingers.assign(taps.begin(), taps.end());
    std::sort(est.fingers.begin(), est.fingers.end(),
              [](const Finger &a, const Finger &b) { return a.delay_samples < b.delay_samples; });
    for (std::size_t i = 0; i < est.fingers.size(); ++i) {
        if (est.fingers[i].delay_samples < 0) throw InvalidParameter("negative finger delay");
        if (i > 0 && est.fingers[i].delay_samples == est.fingers[i - 1].delay_samples)
            throw InvalidParameter("duplicate finger delay");
    }

    double scale = 0.0;
    for (const auto &f : est.fingers) scale = std::max(scale, std::abs(f.coeff));
    if (scale == 0.0) throw SignalError("all channel taps are zero");
    est.scale = scale;

    for (auto &f : est.fingers) {
        const Complex c = f.coeff / scale;
        f.coeff = q_bits == 0 ? c
                              : Complex{quantize_uniform(c.real(), q_bits, 1.0),
                                        quantize_uniform(c.imag(), q_bits, 1.0)};
    }
    return est;
}

CirEstimate estimate_cir(const SampleBuffer &rx, const SampleBuffer &tmpl, const SyncResult &sync,
                         std::size_t max_fingers, int q_bits, const CirOptions &opts) {
    if (!sync.detected) throw SignalError("channel estimate needs a detected preamble");
    if (max_fingers == 0) throw InvalidParameter("max_fingers must be positive");
    if (!(opts.finger_floor >= 0.0 && opts.finger_floor < 1.0)) throw InvalidParameter("finger_floor must be in [0, 1)");

    const auto c = correlate_cir(rx, tmpl, sync.offset_samples, opts);
    const std::size_t w = c.size();
    std::vector<double> mag(w);
    for (std::size_t d = 0; d < w; ++d) mag[d] = std::abs(c[d]);

    std::vector<std::size_t> peaks;
    for (std::size_t d = 0; d < w; ++d) {
        const bool left = d == 0 || mag[d] >= mag[d - 1];
        const bool right = d + 1 == w || mag[d] > mag[d + 1];
        if (left && right && mag[d] > 0.0) peaks.push_back(d);
    }
    if (peaks.empty()) throw SignalError("no channel taps found");
    std::stable_sort(peaks.begin(), peaks.end(), [&](std::size_t a, std::size_t b) { return mag[a] > mag[b]; });

    const double floor = opts.finger_floor * mag[peaks.front()];
    std::vector<Finger> fingers;
    for (std::size_t d : peaks) {
        if (fingers.size() == max_fingers || mag[d] < floor) break;
        fingers.push_back({static_cast<std::int64_t>(d), c[d]});
    }
    return make_cir(fingers, q_bits);
}

} // namespace uwb
