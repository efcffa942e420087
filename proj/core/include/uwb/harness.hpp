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

#ifndef UWB_HARNESS_HPP
#define UWB_HARNESS_HPP

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "uwb/adc.hpp"
#include "uwb/backend.hpp"
#include "uwb/channel.hpp"
#include "uwb/frontend.hpp"
#include "uwb/signal.hpp"
#include "uwb/types.hpp"

namespace uwb {

/// Receiver synchronization and channel-estimation settings.
struct SyncConfig {
    /// Acquisition threshold on the normalized correlation.
    double threshold = 0.02;
    /// Offsets [0, search_samples] are tested.
    std::size_t search_samples = 512;
    /// The frame starts after a random idle lead of [0, max_lead_samples].
    std::size_t max_lead_samples = 256;
    /// Channel estimation starts this many samples before the acquired
    /// offset, so precursor taps still land inside the delay window.
    std::size_t cir_guard_samples = 8;
    std::size_t cir_window = 64;
    double finger_floor = 0.1;
    int cir_bits = kDefaultCirBits;
    /// Genie timing and the true channel (unquantized) instead of acquisition
    /// and estimation.
    bool perfect_csi = false;
};

/// Interferer detection on the digitized signal and, when found, a second
/// pass through the front end with the notch placed at the estimate.
struct NotchSteering {
    bool enabled = true;
    std::size_t nfft = 4096;
    double margin_db = kDefaultInterfererMarginDb;
    double pole_radius = kDefaultNotchPoleRadius;
};

struct PsdCheckConfig {
    std::size_t nfft = 256;
    double threshold_db = -10.0;
    /// Bins beyond +-shape_offset_hz must stay shape_margin_db below the
    /// in-band mean.
    double shape_offset_hz = 350e6;
    double shape_margin_db = 10.0;
};

struct SimConfig {
    Mode mode = Mode::gen2_iq;
    double rate_hz = kGen2RateHz;
    ModulationConfig modulation{};
    PulseShape pulse{};
    ChannelConfig channel{};
    std::optional<InterfererConfig> interferer;
    FrontEndConfig frontend{};
    AdcConfig adc{};
    RakeConfig rake{};
    /// memory 0 selects the slicer.
    ViterbiConfig viterbi{};
    SubBand subband{3};
    int preamble_order = 7;
    int preamble_reps = 4;
    std::size_t n_payload_bits = 1000;
    /// Empty means no noise.
    std::optional<double> ebn0_db = 10.0;
    std::uint64_t master_seed = 1;
    std::size_t n_trials = 100;

    SyncConfig sync{};
    NotchSteering notch_steering{};
    PsdCheckConfig psd{};
};

/// Complex I/Q path, 1 GS/s, 100 Mbps, 5-bit single-way converter pair.
SimConfig preset_gen2();
/// Real carrierless path, 2 GS/s, 193 kbps, 4-way 4-bit flash converter.
SimConfig preset_gen1();
/// 100 ns PRI on a two-tap equal-power Rayleigh channel with perfect CSI:
/// a RAKE diversity setup without inter-symbol interference.
SimConfig preset_isi_free();
/// "gen1", "gen2" or "isi_free".
SimConfig preset(std::string_view name);

/// Throws ConfigError naming the offending field.
void validate(const SimConfig &cfg);

/// The SimConfig as a JSON document, every field present.
std::string config_to_json(const SimConfig &cfg);
/// Parses a JSON config. An optional top-level "preset" names the base the
/// other keys override (default gen2). Unknown keys and type mismatches throw
/// ConfigError.
SimConfig config_from_json(std::string_view text);
SimConfig load_config(const std::filesystem::path &path);
/// FNV-1a 64 of the canonical (sorted-key, compact) JSON form.
std::uint64_t config_hash(const SimConfig &cfg);

struct RunOptions {
    /// Trial worker threads; results do not depend on it.
    unsigned workers = 1;
};

struct MetricsRecord {
    std::uint64_t config_hash = 0;
    double ebn0_db = kInfinity; ///< +inf: no noise
    double sir_db = kInfinity;  ///< +inf: no interferer
    int adc_bits = 0;
    std::size_t rake_fingers = 0;
    double ber = 0.0;
    double per = 0.0;
    std::uint64_t n_bits = 0;
    std::uint64_t n_errors = 0;
    double p_detect = 0.0;
    double mean_sync_time_us = 0.0;
    double cir_rmse = 0.0;
    double interferer_freq_error_hz = 0.0;
    double wall_time_s = 0.0;
    std::uint64_t seed = 0;

    std::uint64_t n_trials = 0;
    std::uint64_t n_packet_errors = 0;
    std::uint64_t sync_failures = 0;
    /// Sum over trials of squared per-trial error counts, for error bars
    /// that account for errors clustering within a trial.
    double trial_error_sq_sum = 0.0;
    std::uint64_t false_alarms = 0;
    std::uint64_t false_alarm_trials = 0;
    double false_alarm_rate = 0.0;
    /// Detected offset minus the true one, in samples, over detections.
    std::map<std::int64_t, std::uint64_t> timing_histogram;
    std::uint64_t interferer_detections = 0;

    /// +-3 sqrt(ber (1 - ber) / n_bits).
    double ber_confidence() const noexcept;
    /// Standard error of ber treating trials as independent clusters.
    double ber_cluster_sigma() const noexcept;
    /// Share of detections with |timing error| <= samples.
    double timing_within(std::int64_t samples) const noexcept;
};

/// Counters compare bit-for-bit; wall_time_s is ignored.
bool same_counters(const MetricsRecord &a, const MetricsRecord &b) noexcept;

/// Monte-Carlo BER at the configured operating point. Trial k draws
/// everything from make_stream(master_seed, k): channel, payload, idle lead,
/// interferer phase, noise and converter noise. A trial whose acquisition
/// fails counts all its payload bits as errors.
MetricsRecord run_ber_point(const SimConfig &cfg, const RunOptions &opts = {});

enum class SweepAxis { ebn0, sir, adc_bits, rake_fingers };

SweepAxis parse_sweep_axis(std::string_view name);
std::string_view to_string(SweepAxis axis);

/// One run_ber_point per value with the same master seed (paired trials).
/// For the sir axis an interferer is added with default settings if the
/// config has none.
std::vector<MetricsRecord> run_sweep(const SimConfig &cfg, SweepAxis axis, const std::vector<double> &values,
                                     const RunOptions &opts = {});

/// Detection probability, timing-error histogram and acquisition time over
/// n_trials frames, plus the false-alarm rate on noise-only buffers of the same
/// length. No payload is demodulated.
MetricsRecord run_sync_stats(const SimConfig &cfg, const RunOptions &opts = {});

struct PsdReport {
    Psd psd;
    double occupied_bw_hz = 0.0;
    double max_power_dbm = 0.0;
    double in_band_mean_db = 0.0;
    /// Highest out-of-band bin relative to the in-band mean.
    double worst_out_of_band_db = 0.0;
    bool pass = false;
};

/// Welch PSD of the transmitted frames of n_trials trials, occupied
/// bandwidth, mask power ceiling and the spectral shape check.
PsdReport run_psd_check(const SimConfig &cfg);

struct DemoPulse {
    std::vector<double> time_s;
    std::vector<double> amplitude;
    double carrier_hz = 0.0;
};

/// One pulse on the sub-band carrier, sampled at 8x the carrier frequency.
DemoPulse demo_pulse(const SimConfig &cfg);
/// Writes demo_pulse as CSV (time_s,amplitude). Throws std::runtime_error if
/// the file cannot be written.
void run_demo_pulse(const SimConfig &cfg, const std::filesystem::path &out_path);

// ------------------------------------------------------------------------
// Reports

inline constexpr std::string_view kCsvHeader =
    "ebn0_db,sir_db,adc_bits,rake_fingers,n_bits,n_errors,ber,p_detect,mean_sync_time_us,seed";

std::string to_csv(const std::vector<MetricsRecord> &records);
/// Parses to_csv output back; fields outside the CSV keep their defaults.
std::vector<MetricsRecord> from_csv(std::string_view text);
std::string to_json(const MetricsRecord &record);
std::string psd_to_csv(const Psd &psd);

} // namespace uwb

#endif
