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

#ifndef UWB_CHANNEL_HPP
#define UWB_CHANNEL_HPP

#include <cstdint>
#include <vector>

#include "uwb/rng.hpp"
#include "uwb/types.hpp"

namespace uwb {

struct Tap {
    double delay_s = 0.0;
    Complex gain{1.0, 0.0};
};

/// Tapped delay line. Delays are non-negative and strictly increasing.
struct ChannelRealization {
    std::vector<Tap> taps;

    double total_power() const noexcept;
    /// Largest tap delay rounded to the sample grid of `rate_hz`.
    std::size_t max_delay_samples(double rate_hz) const;
};

enum class Fading {
    rayleigh, ///< each tap is CN(0, mean power)
    fixed,    ///< each tap takes its mean amplitude
};

enum class PowerNormalization {
    per_realization, ///< every draw has sum |gain|^2 == 1
    average,         ///< the mean power-delay profile sums to 1; draws fluctuate
};

struct ChannelConfig {
    /// Exponential power-delay-profile constant. 0 gives a single unit tap.
    double decay_gamma_s = 20e-9;
    double tap_spacing_s = 1e-9;
    /// Tap horizon, in units of decay_gamma_s.
    double span_gammas = 5.0;
    std::uint64_t seed = 1;

    /// Explicit profile. When non-empty it replaces the exponential profile:
    /// tap l has mean power |profile[l].gain|^2 (Rayleigh) or takes
    /// profile[l].gain as is (fixed).
    std::vector<Tap> profile;
    Fading fading = Fading::rayleigh;
    PowerNormalization normalization = PowerNormalization::per_realization;
    /// Draw real-valued Rayleigh taps (carrierless real signal path).
    bool real_taps = false;
};

void validate(const ChannelConfig &cfg);
void validate(const ChannelRealization &ch);

/// One realization of the configured channel.
ChannelRealization draw_channel(const ChannelConfig &cfg, Rng &rng);

/// Same, with an engine seeded from cfg.seed.
ChannelRealization draw_channel(const ChannelConfig &cfg);

/// Power-weighted rms spread of the tap delays, seconds.
double rms_delay_spread(const ChannelRealization &ch);

/// Linear convolution with the tap delays snapped to the sample grid:
/// y[n] = sum_l gain_l * x[n - round(delay_l * rate)]. The output is longer
/// than the input by the largest delay in samples.
SampleBuffer apply_channel(const SampleBuffer &buf, const ChannelRealization &ch);

/// Adds white Gaussian noise for the given Eb/N0 with N0 = eb / 10^(ebn0/10):
/// complex CN(0, N0 * rate) per sample, or real N(0, N0 * rate / 2) for a
/// real-domain buffer. `eb` is the energy per payload bit (sum |x|^2 / rate /
/// bits). ebn0_db = +inf returns the input unchanged.
SampleBuffer add_awgn(SampleBuffer buf, double ebn0_db, double eb, Rng &rng);

/// Per-sample noise variance add_awgn uses.
double awgn_variance(double ebn0_db, double eb, double rate_hz);

struct InterfererConfig {
    double offset_hz = 80e6;
    double sir_db = -10.0;
    double phase_rad = 0.0;
};

/// Adds A * exp(j (2 pi offset t + phase)) with A^2 = signal_power / 10^(sir/10),
/// t = n / rate. sir_db = +inf returns the input unchanged.
SampleBuffer add_cw_interferer(SampleBuffer buf, const InterfererConfig &cfg, double signal_power);

/// One of the 14 equal slices of 3.1-10.6 GHz.
class SubBand {
  public:
    static constexpr int kCount = 14;
    explicit SubBand(int index);
    int index() const noexcept { return index_; }

  private:
    int index_;
};

inline constexpr double kBandLowHz = 3.1e9;
inline constexpr double kBandHighHz = 10.6e9;

/// 3.1 GHz + (index + 0.5) * 7.5 GHz / 14.
double subband_center_hz(SubBand b);

} // namespace uwb

#endif
