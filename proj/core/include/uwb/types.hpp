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

#ifndef UWB_TYPES_HPP
#define UWB_TYPES_HPP

#include <cmath>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

namespace uwb {

using Complex = std::complex<double>;

/// Bits are stored one per byte, values 0 or 1. Bit 1 maps to the +1 symbol.
using Bits = std::vector<std::uint8_t>;

/// Antipodal chips, values -1 or +1.
using Chips = std::vector<std::int8_t>;

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kTwoPi = 2.0 * kPi;

/// Sentinel for "no noise" / "no interferer" operating points.
inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

// ------------------------------------------------------------------------
// Errors

/// A precondition on an argument was violated.
class InvalidParameter : public std::invalid_argument {
  public:
    using std::invalid_argument::invalid_argument;
};

/// The data handed to a block cannot be processed (too short, all zero, ...).
class SignalError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// A simulation configuration is invalid. `field()` names the offending key
/// using the snake_case path of the JSON config (e.g. "adc.bits").
class ConfigError : public std::runtime_error {
  public:
    ConfigError(std::string field, const std::string &what)
        : std::runtime_error(field + ": " + what), field_(std::move(field)) {}
    const std::string &field() const noexcept { return field_; }

  private:
    std::string field_;
};

// ------------------------------------------------------------------------
// Waveforms

/// Whether a buffer carries a complex I/Q signal or a real carrierless one.
/// Real-domain buffers keep every imaginary part at exactly zero.
enum class SignalDomain { complex_iq, real_baseband };

/// Uniformly sampled waveform. Sample n sits at time t0_s + n / rate_hz.
struct SampleBuffer {
    std::vector<Complex> samples;
    double rate_hz = 1.0;
    double t0_s = 0.0;
    SignalDomain domain = SignalDomain::complex_iq;

    SampleBuffer() = default;
    SampleBuffer(std::vector<Complex> s, double rate, double t0 = 0.0,
                 SignalDomain d = SignalDomain::complex_iq)
        : samples(std::move(s)), rate_hz(rate), t0_s(t0), domain(d) {}

    std::size_t size() const noexcept { return samples.size(); }
    bool empty() const noexcept { return samples.empty(); }
    bool is_real() const noexcept { return domain == SignalDomain::real_baseband; }

    Complex &operator[](std::size_t i) { return samples[i]; }
    const Complex &operator[](std::size_t i) const { return samples[i]; }

    /// Sum of |x|^2.
    double sum_power() const noexcept {
        double acc = 0.0;
        for (const auto &x : samples) acc += std::norm(x);
        return acc;
    }
    /// Continuous-time energy, sum(|x|^2) / rate.
    double energy() const noexcept { return sum_power() / rate_hz; }
    /// Mean |x|^2 per sample; zero for an empty buffer.
    double mean_power() const noexcept {
        return samples.empty() ? 0.0 : sum_power() / static_cast<double>(samples.size());
    }
    double rms() const noexcept { return std::sqrt(mean_power()); }
};

/// Throws InvalidParameter unless rate_hz > 0 and a real-domain buffer has
/// no imaginary content.
void validate(const SampleBuffer &buf);

} // namespace uwb

#endif
