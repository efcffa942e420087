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

#ifndef UWB_SIGNAL_HPP
#define UWB_SIGNAL_HPP

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "uwb/types.hpp"

namespace uwb {

/// Gaussian sigma whose |P(f)|^2 is 10 dB down at +-250 MHz, i.e. a 500 MHz
/// wide pulse: sqrt(ln 10) / (2 pi 250 MHz), about 0.966 ns.
inline const double kDefaultPulseSigma = std::sqrt(std::log(10.0)) / (kTwoPi * 250e6);

/// Default sample rates: complex I/Q path and real carrierless path.
inline constexpr double kGen2RateHz = 1e9;
inline constexpr double kGen1RateHz = 2e9;

inline constexpr double kGen2BitRate = 100e6;
inline constexpr double kGen1BitRate = 193e3;

enum class Mode { gen1_baseband, gen2_iq };

inline SignalDomain domain_of(Mode m) {
    return m == Mode::gen1_baseband ? SignalDomain::real_baseband : SignalDomain::complex_iq;
}

/// Truncated Gaussian pulse.
struct PulseShape {
    double sigma_s = kDefaultPulseSigma;
    double span_sigmas = 5.0; ///< truncation half-width, in sigmas
};

/// One pulse per bit, pri_s * bit_rate_bps == 1.
struct ModulationConfig {
    double pri_s = 1.0 / kGen2BitRate;
    double bit_rate_bps = kGen2BitRate;
    Mode mode = Mode::gen2_iq;

    static ModulationConfig from_bit_rate(double bit_rate_bps, Mode mode);
};

void validate(const PulseShape &shape);
void validate(const ModulationConfig &mod);

/// Unit-energy (sum |p|^2 / rate == 1), even-symmetric pulse sampled on the
/// grid n / rate for |n / rate| <= span_sigmas * sigma_s. The buffer's t0_s is
/// the time of its first sample, so the peak sits at t = 0.
SampleBuffer gaussian_pulse(const PulseShape &shape, double rate_hz,
                            SignalDomain domain = SignalDomain::complex_iq);

/// Index of the pulse peak inside a pulse buffer.
std::size_t pulse_center_index(const SampleBuffer &pulse);

/// Pulse repetition interval on the sample grid. The modulator, the RAKE and
/// every timing computation use this rounded value.
std::size_t samples_per_symbol(const ModulationConfig &mod, double rate_hz);

/// True if consecutive pulses overlap at the given rate.
bool pulses_overlap(const ModulationConfig &mod, const PulseShape &shape, double rate_hz);

// ------------------------------------------------------------------------
// Frame

/// m-sequence of length 2^order - 1 from a Fibonacci LFSR with a fixed
/// primitive feedback polynomial per order (2 <= order <= 16). Register bit 0
/// is the output; bit value 0 maps to chip +1 and 1 maps to chip -1. `state`
/// is masked to `order` bits and must be non-zero.
Chips generate_pn_sequence(int order, std::uint32_t state);

/// Feedback taps (1-based exponents) of the polynomial used for `order`.
std::vector<int> pn_feedback_taps(int order);

struct Frame {
    Chips preamble;
    Chips sfd;
    Bits payload;

    std::size_t symbol_count() const noexcept {
        return preamble.size() + sfd.size() + payload.size();
    }
    std::size_t header_chips() const noexcept { return preamble.size() + sfd.size(); }
};

inline constexpr std::size_t kSfdLength = 16;

/// Start-of-frame delimiter: the first `length` chips of the periodically
/// extended PN period, in reverse order.
Chips make_sfd(const Chips &pn_period, std::size_t length = kSfdLength);

/// `reps` repetitions of `pn_period`, the SFD, then the payload.
Frame make_frame(const Chips &pn_period, int reps, Bits payload);

/// Whether `sfd` appears as a contiguous window of the periodic PN sequence.
bool sfd_matches_preamble_shift(const Chips &pn_period, const Chips &sfd);

/// Amplitude sequence of a frame: preamble, SFD, then payload bits mapped to
/// +-1.
std::vector<double> frame_symbols(const Frame &frame);

/// Sum over k of a_k * p(t - k * pri). Output t0_s equals the pulse's t0_s,
/// so with the pulse buffer as the unit of alignment symbol k starts at sample
/// k * samples_per_symbol. Throws InvalidParameter when the shape cannot be
/// sampled at rate_hz. An empty frame yields an empty buffer.
SampleBuffer modulate_frame(const Frame &frame, const ModulationConfig &mod,
                            const PulseShape &shape, double rate_hz);

/// Lower-level modulator over explicit amplitudes and a pre-built pulse.
SampleBuffer modulate_symbols(std::span<const double> amplitudes, const SampleBuffer &pulse,
                              std::size_t samples_per_symbol);

// ------------------------------------------------------------------------
// Spectrum

/// Two-sided power spectral density, frequencies ascending from -rate/2.
/// density integrates (sum * bin_hz) to the mean power of the analysed data.
struct Psd {
    std::vector<double> freq_hz;
    std::vector<double> density;
    double bin_hz = 0.0;
    std::size_t segments = 0;

    std::size_t size() const noexcept { return density.size(); }
    double integrated_power() const noexcept;
};

/// Welch averaging with a Hann window and 50% overlap. Accumulates any number
/// of buffers of the same rate; segments never straddle two buffers.
class WelchAccumulator {
  public:
    WelchAccumulator(std::size_t nfft, double rate_hz);

    /// Adds up to `max_segments` segments of `buf` (0 = as many as fit).
    /// Returns the number of segments added.
    std::size_t add(const SampleBuffer &buf, std::size_t max_segments = 0);

    std::size_t segments() const noexcept { return segments_; }
    Psd result() const;

  private:
    std::size_t nfft_;
    double rate_hz_;
    std::vector<double> window_;
    double window_power_ = 0.0; ///< sum of w[n]^2
    std::vector<double> accum_;  ///< natural FFT order
    std::size_t segments_ = 0;
};

/// Welch periodogram of `buf` using at most n_segments segments (0 = all).
/// nfft must be a power of two no larger than the buffer.
Psd psd_estimate(const SampleBuffer &buf, std::size_t nfft, std::size_t n_segments);

/// Width of the contiguous band around the PSD peak whose density stays at or
/// above peak + threshold_db, counted in whole bins.
double occupied_bandwidth(const Psd &psd, double threshold_db);

/// EIRP spectral density ceiling of the 3.1-10.6 GHz band, dBm/MHz.
inline constexpr double kMaskDbmPerMhz = -41.3;

/// Total power ceiling over `bandwidth_hz` of mask-filling emission, dBm.
double max_tx_power_dbm(double bandwidth_hz);

} // namespace uwb

#endif
