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

#ifndef UWB_BACKEND_HPP
#define UWB_BACKEND_HPP

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "uwb/signal.hpp"
#include "uwb/types.hpp"

namespace uwb {

// ------------------------------------------------------------------------
// Acquisition

struct SyncResult {
    bool detected = false;
    std::int64_t offset_samples = 0;
    double peak_metric = 0.0; ///< normalized correlation at the chosen offset, [0, 1]
    std::int64_t searched_samples = 0; ///< number of offsets evaluated
};

/// Best hypothesis over a contiguous range of offsets.
struct SyncCandidate {
    std::int64_t offset = -1;
    double metric = -1.0;
};

/// Deterministic argmax: larger metric wins, equal metrics go to the smaller
/// offset. Associative and commutative, so shards can be merged in any order.
SyncCandidate merge(const SyncCandidate &a, const SyncCandidate &b) noexcept;

/// Correlates `tmpl` against `buf` for offsets [begin, end) and returns the
/// best one among those with metric >= threshold (offset -1 if none).
///
///     rho(tau) = |sum_n r[n + tau] conj(p[n])|^2 / (sum |p|^2 * sum_{window} |r|^2)
///
/// The window is the template support {tau + n : p[n] != 0}, so rho stays in
/// [0, 1] and the noise between the pulses of a low duty cycle template does
/// not dilute it. Zero template samples cost nothing.
SyncCandidate acquire_range(const SampleBuffer &buf, const SampleBuffer &tmpl, double threshold,
                            std::size_t begin, std::size_t end);

/// Searches offsets [0, max_search] (clipped to the buffer) split into
/// `shards` contiguous ranges that run on separate threads when shards > 1.
SyncResult acquire(const SampleBuffer &buf, const SampleBuffer &tmpl, double threshold,
                   std::size_t max_search, std::size_t shards = 1);

// ------------------------------------------------------------------------
// Channel estimate

struct Finger {
    std::int64_t delay_samples = 0;
    Complex coeff{};
};

/// Fingers sorted by delay. Coefficients are normalized by `scale` (the
/// magnitude of the strongest unquantized tap) and then quantized to q_bits
/// per component with the mid-rise quantizer at full scale 1; q_bits == 0
/// means unquantized. The channel tap the estimate represents is
/// coeff * scale.
struct CirEstimate {
    std::vector<Finger> fingers;
    int q_bits = 4;
    double scale = 1.0;
};

inline constexpr int kDefaultCirBits = 4;
inline constexpr int kMaxCirBits = 16;

struct CirOptions {
    /// Delay window [0, window) searched for fingers.
    std::size_t window = 64;
    /// PN period in samples. When set and the template spans at least two
    /// periods, correlation runs over whole periods starting half a period in,
    /// which makes it cyclic for every delay in the window.
    std::size_t period_samples = 0;
    /// Fingers weaker than this fraction of the strongest are dropped.
    double finger_floor = 0.1;
};

/// Raw correlation c[d] = sum_n rx[offset + d + n] conj(p[n]) / sum |p[n]|^2
/// for d in [0, window), over the template span selected by `opts`.
std::vector<Complex> correlate_cir(const SampleBuffer &rx, const SampleBuffer &tmpl,
                                   std::int64_t offset, const CirOptions &opts = {});

/// Builds a quantized estimate from explicit (delay, tap) pairs.
CirEstimate make_cir(std::span<const Finger> taps, int q_bits);

/// Channel estimate from the preamble: correlate, take the local maxima of
/// |c[d]| (strongest first, at most max_fingers, above the finger floor),
/// normalize by the strongest and quantize. Throws SignalError unless
/// sync.detected.
CirEstimate estimate_cir(const SampleBuffer &rx, const SampleBuffer &tmpl, const SyncResult &sync,
                         std::size_t max_fingers, int q_bits = kDefaultCirBits,
                         const CirOptions &opts = {});

// ------------------------------------------------------------------------
// RAKE and MLSE

struct RakeConfig {
    std::size_t n_fingers = 4;
};

/// z_k = sum_l conj(coeff_l) * mf(k * sps + delay_l), with mf the pulse
/// matched filter normalized by pulse energy. `buf` is aligned so the
/// zero-delay pulse of symbol k starts at sample k * sps.
std::vector<Complex> rake_combine(const SampleBuffer &buf, const CirEstimate &cir,
                                  const ModulationConfig &mod, const SampleBuffer &pulse,
                                  std::size_t n_bits);

/// Symbol-spaced channel seen at the RAKE output.
struct IsiChannel {
    /// g[m]: response of z_k to a +1 sent m symbols earlier, after rotation.
    std::vector<Complex> taps;
    /// Unit-modulus factor that makes g[0] real positive; apply it to the
    /// statistics as well.
    Complex rotation{1.0, 0.0};
};

/// Sends one +1 pulse through the estimated channel (taps coeff * scale) and
/// the RAKE, and keeps the first memory + 1 statistics.
IsiChannel derive_isi_channel(const CirEstimate &cir, const SampleBuffer &pulse,
                              const ModulationConfig &mod, std::size_t memory);

struct ViterbiConfig {
    int memory = 2;
    /// Decision lag in symbols; 0 or anything >= the sequence length decides
    /// from the best final state only.
    int traceback_depth = 10;

    static ViterbiConfig with_memory(int memory) { return {memory, 5 * memory}; }
};

inline constexpr int kMaxViterbiMemory = 10;

/// Sequence a in {-1,+1}^n minimizing sum_k |z_k - sum_m g[m] a_{k-m}|^2,
/// with a_i = 0 for i < 0. States hold the last `memory` symbols (newest in
/// bit 0, bit value 1 for +1). Ties go to the smaller predecessor state and
/// to the smaller final state. memory == 0 is the slicer Re(z conj g0) >= 0.
/// Returns bits (1 for +1).
Bits viterbi_mlse(std::span<const Complex> stats, std::span<const Complex> g, const ViterbiConfig &cfg);

// ------------------------------------------------------------------------
// Interferer

struct InterfererEstimate {
    double freq_hz = 0.0;
    double power_rel_db = -kInfinity; ///< tone power over total buffer power
    double peak_to_median_db = 0.0;   ///< detection statistic
    bool detected = false;            ///< peak_to_median_db >= margin
};

inline constexpr double kDefaultInterfererMarginDb = 15.0;

/// Welch PSD, detection when the peak bin clears the median bin by
/// margin_db, frequency refined by a parabola through the log-power of the
/// peak and its two neighbours.
InterfererEstimate estimate_interferer(const SampleBuffer &buf, std::size_t nfft,
                                       double margin_db = kDefaultInterfererMarginDb,
                                       std::size_t max_segments = 0);

} // namespace uwb

#endif
