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

#include <cmath>

namespace uwb {

std::vector<Complex> rake_combine(const SampleBuffer &buf, const CirEstimate &cir, const ModulationConfig &mod,
                                  const SampleBuffer &pulse, std::size_t n_bits) {
    if (cir.fingers.empty()) throw InvalidParameter("channel estimate has no fingers");
    if (buf.rate_hz != pulse.rate_hz) throw InvalidParameter("pulse rate differs from buffer rate");
    const std::size_t sps = samples_per_symbol(mod, buf.rate_hz);
    const std::size_t plen = pulse.size();
    const double ep = pulse.sum_power();
    if (ep == 0.0) throw InvalidParameter("zero-energy pulse");

    std::int64_t max_delay = 0;
    for (const auto &f : cir.fingers) {
        if (f.delay_samples < 0) throw InvalidParameter("negative finger delay");
        max_delay = std::max(max_delay, f.delay_samples);
    }
    if (n_bits > 0 && (n_bits - 1) * sps + static_cast<std::size_t>(max_delay) + plen > buf.size())
        throw SignalError("buffer too short for RAKE");

    std::vector<Complex> p(plen);
    for (std::size_t n = 0; n < plen; ++n) p[n] = std::conj(pulse[n]) / ep;

    std::vector<Complex> z(n_bits);
    for (std::size_t k = 0; k < n_bits; ++k) {
        Complex acc{};
        for (const auto &f : cir.fingers) {
            const Complex *r = buf.samples.data() + k * sps + static_cast<std::size_t>(f.delay_samples);
            Complex mf{};
            for (std::size_t n = 0; n < plen; ++n) mf += r[n] * p[n];
            acc += std::conj(f.coeff) * mf;
        }
        z[k] = acc;
    }
    return z;
}

IsiChannel derive_isi_channel(const CirEstimate &cir, const SampleBuffer &pulse, const ModulationConfig &mod,
                              std::size_t memory) {
    if (cir.fingers.empty()) throw InvalidParameter("channel estimate has no fingers");
    const std::size_t sps = samples_per_symbol(mod, pulse.rate_hz);
    std::int64_t max_delay = 0;
    for (const auto &f : cir.fingers) max_delay = std::max(max_delay, f.delay_samples);
    const auto md = static_cast<std::size_t>(max_delay);

    SampleBuffer probe(std::vector<Complex>(memory * sps + 2 * md + pulse.size()), pulse.rate_hz, 0.0,
                       SignalDomain::complex_iq);
    for (const auto &f : cir.fingers) {
        const Complex g = f.coeff * cir.scale;
        for (std::size_t n = 0; n < pulse.size(); ++n)
            probe.samples[static_cast<std::size_t>(f.delay_samples) + n] += g * pulse[n];
    }

    IsiChannel out;
    out.taps = rake_combine(probe, cir, mod, pulse, memory + 1);
    const double m0 = std::abs(out.taps[0]);
    if (m0 > 0.0) out.rotation = std::conj(out.taps[0]) / m0;
    for (auto &g : out.taps) g *= out.rotation;
    out.taps[0] = Complex{out.taps[0].real(), 0.0};
    return out;
}

} // namespace uwb
