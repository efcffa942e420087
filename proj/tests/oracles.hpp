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

#ifndef UWB_TESTS_ORACLES_HPP
#define UWB_TESTS_ORACLES_HPP

// Independent reference implementations used as test oracles. They are slow
// and straightforward on purpose and share no code with the library.

#include <cmath>
#include <complex>
#include <cstdint>
#include <limits>
#include <vector>

namespace oracle {

using cd = std::complex<double>;
inline constexpr double pi = 3.14159265358979323846;

/// X(f) = sum_n x[n] exp(-j 2 pi f n / rate), evaluated directly.
inline cd dtft(const std::vector<cd> &x, double f_hz, double rate_hz) {
    cd acc{};
    for (std::size_t n = 0; n < x.size(); ++n)
        acc += x[n] * std::polar(1.0, -2.0 * pi * f_hz * static_cast<double>(n) / rate_hz);
    return acc;
}

/// Naive DFT, bin k of length-N input.
inline std::vector<cd> dft(const std::vector<cd> &x) {
    const std::size_t n = x.size();
    std::vector<cd> out(n);
    for (std::size_t k = 0; k < n; ++k)
        for (std::size_t m = 0; m < n; ++m)
            out[k] += x[m] * std::polar(1.0, -2.0 * pi * static_cast<double>((k * m) % n) / static_cast<double>(n));
    return out;
}

/// y[n] = sum_l h[l] x[n - d_l], full length.
inline std::vector<cd> convolve_sparse(const std::vector<cd> &x, const std::vector<std::size_t> &delays,
                                       const std::vector<cd> &gains) {
    std::size_t max_d = 0;
    for (auto d : delays) max_d = std::max(max_d, d);
    std::vector<cd> y(x.size() + max_d);
    for (std::size_t n = 0; n < y.size(); ++n)
        for (std::size_t l = 0; l < delays.size(); ++l)
            if (n >= delays[l] && n - delays[l] < x.size()) y[n] += gains[l] * x[n - delays[l]];
    return y;
}

/// Q(x), Gaussian tail probability.
inline double q_function(double x) { return 0.5 * std::erfc(x / std::sqrt(2.0)); }

/// BPSK in AWGN: Q(sqrt(2 Eb/N0)).
inline double bpsk_ber(double ebn0_db) { return q_function(std::sqrt(2.0 * std::pow(10.0, ebn0_db / 10.0))); }

/// Two-branch maximal ratio combining over independent Rayleigh branches with
/// average per-branch SNR gbar: p^2 (3 - 2p) with p = (1 - sqrt(gbar / (1 + gbar))) / 2.
inline double mrc2_ber(double gbar) {
    const double p = 0.5 * (1.0 - std::sqrt(gbar / (1.0 + gbar)));
    return p * p * (3.0 - 2.0 * p);
}

/// Sum_k |z_k - sum_m g[m] a_{k-m}|^2 with a_i = 0 for i < 0. The expected
/// value is formed as g0 a_k + (sum_{m>=1} ...) to match the library's
/// rounding order, so exact ties compare exactly.
inline double mlse_metric(const std::vector<cd> &z, const std::vector<cd> &g, const std::vector<int> &a) {
    double total = 0.0;
    for (std::size_t k = 0; k < z.size(); ++k) {
        cd isi{};
        for (std::size_t m = 1; m < g.size() && m <= k; ++m) isi += g[m] * static_cast<double>(a[k - m]);
        const cd expected = g[0] * static_cast<double>(a[k]) + isi;
        total += std::norm(z[k] - expected);
    }
    return total;
}

/// Exhaustive minimizer of mlse_metric. Among equal metrics the winner is the
/// one whose final `memory` symbols, read oldest first as a binary number with
/// +1 = 1, are smallest; remaining ties go to the sequence with the smaller
/// earlier symbols, compared from a_{n-memory-1} down to a_0 (-1 before +1).
/// Returns bits (1 for +1).
inline std::vector<std::uint8_t> mlse_exhaustive(const std::vector<cd> &z, const std::vector<cd> &g) {
    const std::size_t n = z.size();
    const std::size_t memory = g.size() - 1;
    std::vector<int> a(n);
    double best = std::numeric_limits<double>::infinity();
    std::vector<int> best_a;
    auto key = [&](const std::vector<int> &s) {
        // Lexicographic key: final-state bits (oldest first), then earlier
        // symbols from newest to oldest.
        std::vector<int> k;
        const std::size_t m = std::min(memory, n);
        for (std::size_t i = n - m; i < n; ++i) k.push_back(s[i] > 0);
        for (std::size_t i = n - m; i-- > 0;) k.push_back(s[i] > 0);
        return k;
    };
    for (std::uint64_t word = 0; word < (std::uint64_t{1} << n); ++word) {
        for (std::size_t i = 0; i < n; ++i) a[i] = (word >> i) & 1 ? 1 : -1;
        const double m = mlse_metric(z, g, a);
        if (m < best || (m == best && key(a) < key(best_a))) {
            best = m;
            best_a = a;
        }
    }
    std::vector<std::uint8_t> bits(n);
    for (std::size_t i = 0; i < n; ++i) bits[i] = best_a[i] > 0 ? 1 : 0;
    return bits;
}

} // namespace oracle

#endif
