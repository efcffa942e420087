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

#include "fft.hpp"

namespace uwb {

namespace {

bool is_power_of_two(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

} // namespace

double Psd::integrated_power() const noexcept {
    double acc = 0.0;
    for (double d : density) acc += d;
    return acc * bin_hz;
}

WelchAccumulator::WelchAccumulator(std::size_t nfft, double rate_hz)
    : nfft_(nfft), rate_hz_(rate_hz), window_(nfft), accum_(nfft, 0.0) {
    if (!is_power_of_two(nfft) || nfft < 2) throw InvalidParameter("nfft must be a power of two >= 2");
    if (!(rate_hz > 0.0)) throw InvalidParameter("sample rate must be positive");
    for (std::size_t n = 0; n < nfft; ++n) {
        window_[n] = 0.5 * (1.0 - std::cos(kTwoPi * static_cast<double>(n) / static_cast<double>(nfft)));
        window_power_ += window_[n] * window_[n];
    }
}

std::size_t WelchAccumulator::add(const SampleBuffer &buf, std::size_t max_segments) {
    if (buf.rate_hz != rate_hz_) throw InvalidParameter("buffer rate differs from accumulator rate");
    if (buf.size() < nfft_) return 0;
    const std::size_t hop = nfft_ / 2;
    std::size_t count = (buf.size() - nfft_) / hop + 1;
    if (max_segments != 0) count = std::min(count, max_segments);

    std::vector<Complex> seg(nfft_);
    for (std::size_t s = 0; s < count; ++s) {
        const Complex *src = buf.samples.data() + s * hop;
        for (std::size_t n = 0; n < nfft_; ++n) seg[n] = window_[n] * src[n];
        detail::fft_forward(seg);
        for (std::size_t k = 0; k < nfft_; ++k) accum_[k] += std::norm(seg[k]);
    }
    segments_ += count;
    return count;
}

Psd WelchAccumulator::result() const {
    if (segments_ == 0) throw SignalError("no segments accumulated");
    Psd psd;
    psd.bin_hz = rate_hz_ / static_cast<double>(nfft_);
    psd.segments = segments_;
    psd.freq_hz.resize(nfft_);
    psd.density.resize(nfft_);
    const double scale = 1.0 / (static_cast<double>(segments_) * rate_hz_ * window_power_);
    const std::size_t half = nfft_ / 2;
    for (std::size_t i = 0; i < nfft_; ++i) {
        const std::size_t k = (i + half) % nfft_;
        psd.freq_hz[i] = (static_cast<double>(i) - static_cast<double>(half)) * psd.bin_hz;
        psd.density[i] = accum_[k] * scale;
    }
    return psd;
}

Psd psd_estimate(const SampleBuffer &buf, std::size_t nfft, std::size_t n_segments) {
    WelchAccumulator acc(nfft, buf.rate_hz);
    if (buf.size() < nfft) throw SignalError("buffer shorter than nfft");
    acc.add(buf, n_segments);
    return acc.result();
}

double occupied_bandwidth(const Psd &psd, double threshold_db) {
    if (psd.density.empty()) throw InvalidParameter("empty PSD");
    if (!(threshold_db < 0.0)) throw InvalidParameter("threshold must be negative");
    const auto peak_it = std::max_element(psd.density.begin(), psd.density.end());
    const double level = *peak_it * std::pow(10.0, threshold_db / 10.0);
    auto lo = static_cast<std::size_t>(peak_it - psd.density.begin());
    auto hi = lo;
    while (lo > 0 && psd.density[lo - 1] >= level) --lo;
    while (hi + 1 < psd.size() && psd.density[hi + 1] >= level) ++hi;
    return static_cast<double>(hi - lo + 1) * psd.bin_hz;
}

} // namespace uwb
