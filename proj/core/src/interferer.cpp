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

#include <algorithm>
#include <cmath>

namespace uwb {

InterfererEstimate estimate_interferer(const SampleBuffer &buf, std::size_t nfft, double margin_db,
                                       std::size_t max_segments) {
    if (!(margin_db > 0.0)) throw InvalidParameter("detection margin must be positive");
    const Psd psd = psd_estimate(buf, nfft, max_segments);
    const std::size_t n = psd.size();
    const auto &p = psd.density;

    const auto peak = static_cast<std::size_t>(std::max_element(p.begin(), p.end()) - p.begin());
    std::vector<double> sorted(p);
    std::nth_element(sorted.begin(), sorted.begin() + n / 2, sorted.end());
    const double median = sorted[n / 2];

    InterfererEstimate est;
    if (p[peak] <= 0.0) return est;
    est.peak_to_median_db = median > 0.0 ? 10.0 * std::log10(p[peak] / median) : kInfinity;
    est.detected = est.peak_to_median_db >= margin_db;

    // The spectrum wraps, so the neighbours of the edge bins are on the other side.
    const double a = p[(peak + n - 1) % n], b = p[peak], c = p[(peak + 1) % n];
    double delta = 0.0;
    if (a > 0.0 && c > 0.0) {
        const double la = std::log(a), lb = std::log(b), lc = std::log(c);
        const double den = la - 2.0 * lb + lc;
        if (den < 0.0) delta = std::clamp(0.5 * (la - lc) / den, -0.5, 0.5);
    }
    double f = psd.freq_hz[peak] + delta * psd.bin_hz;
    if (f >= buf.rate_hz / 2) f -= buf.rate_hz;
    if (f < -buf.rate_hz / 2) f += buf.rate_hz;
    est.freq_hz = f;

    double tone = 0.0;
    for (int j = -2; j <= 2; ++j) tone += p[(peak + n + static_cast<std::size_t>(j + 2) - 2) % n];
    const double total = psd.integrated_power();
    est.power_rel_db = 10.0 * std::log10(std::min(1.0, tone * psd.bin_hz / total));
    return est;
}

} // namespace uwb
