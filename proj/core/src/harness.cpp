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

#include "uwb/harness.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <fstream>
#include <limits>
#include <mutex>
#include <thread>

namespace uwb {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

/// Everything that is the same for every trial of a run.
struct Setup {
    SampleBuffer pulse;
    std::size_t sps = 0;
    Chips pn;
    Chips sfd;
    SampleBuffer header; ///< modulated preamble + SFD, the acquisition template
    std::vector<double> pulse_acf; ///< pulse autocorrelation, lag -(len-1) .. len-1
    CirOptions cir_opts;
    double header_time_s = 0.0;
};

Setup make_setup(const SimConfig &cfg) {
    Setup s;
    s.pulse = gaussian_pulse(cfg.pulse, cfg.rate_hz, domain_of(cfg.mode));
    s.sps = samples_per_symbol(cfg.modulation, cfg.rate_hz);
    s.pn = generate_pn_sequence(cfg.preamble_order, 1);
    const Frame header = make_frame(s.pn, cfg.preamble_reps, {});
    s.sfd = header.sfd;
    s.header = modulate_symbols(frame_symbols(header), s.pulse, s.sps);
    s.header_time_s = static_cast<double>(header.header_chips() * s.sps) / cfg.rate_hz;

    const std::size_t len = s.pulse.size();
    s.pulse_acf.assign(2 * len - 1, 0.0);
    for (std::size_t lag = 0; lag < len; ++lag) {
        double acc = 0.0;
        for (std::size_t n = 0; n + lag < len; ++n) acc += (s.pulse[n] * std::conj(s.pulse[n + lag])).real();
        s.pulse_acf[len - 1 + lag] = acc;
        s.pulse_acf[len - 1 - lag] = acc;
    }

    s.cir_opts.window = cfg.sync.cir_window;
    s.cir_opts.finger_floor = cfg.sync.finger_floor;
    if (cfg.preamble_reps >= 2) s.cir_opts.period_samples = s.pn.size() * s.sps;
    return s;
}

Bits random_bits(std::size_t n, Rng &rng) {
    Bits b(n);
    for (auto &x : b) x = static_cast<std::uint8_t>(rng() >> 63);
    return b;
}

std::int64_t delay_samples(const Tap &t, double rate_hz) { return std::llround(t.delay_s * rate_hz); }

/// Delay of the strongest peak of the noiseless channel-filtered pulse
/// correlated with the pulse: where a perfect acquisition would lock.
std::int64_t timing_reference(const ChannelRealization &ch, const Setup &s, double rate_hz) {
    if (ch.taps.size() == 1) return delay_samples(ch.taps[0], rate_hz);
    const auto len = static_cast<std::int64_t>(s.pulse.size());
    std::int64_t best = 0;
    double best_mag = -1.0;
    const std::int64_t last = delay_samples(ch.taps.back(), rate_hz) + len;
    for (std::int64_t d = 0; d <= last; ++d) {
        Complex acc{};
        for (const auto &t : ch.taps) {
            const std::int64_t lag = d - delay_samples(t, rate_hz);
            if (lag <= -len || lag >= len) continue;
            acc += t.gain * s.pulse_acf[static_cast<std::size_t>(lag + len - 1)];
        }
        if (std::abs(acc) > best_mag) {
            best_mag = std::abs(acc);
            best = d;
        }
    }
    return best;
}

struct Received {
    SampleBuffer adc;
    ChannelRealization channel;
    Bits payload;
    std::size_t lead = 0;
    double eb = 0.0;
    std::optional<InterfererEstimate> interferer;
};

SampleBuffer digitize(SampleBuffer rx, const FrontEndConfig &fe, const AdcConfig &adc, Rng &rng) {
    auto out = front_end_chain(std::move(rx), fe);
    return adc_sample(std::move(out.buffer), adc, rng);
}

Received receive(const SimConfig &cfg, const Setup &s, Rng &rng) {
    Received r;
    r.channel = draw_channel(cfg.channel, rng);
    r.payload = random_bits(cfg.n_payload_bits, rng);
    r.lead = static_cast<std::size_t>(rng() % (cfg.sync.max_lead_samples + 1));
    const double phase = std::uniform_real_distribution<double>(0.0, kTwoPi)(rng);

    const Frame frame = make_frame(s.pn, cfg.preamble_reps, r.payload);
    const auto symbols = frame_symbols(frame);
    const SampleBuffer tx = modulate_symbols(symbols, s.pulse, s.sps);
    if (!r.payload.empty()) {
        const std::span<const double> data(symbols.data() + frame.header_chips(), r.payload.size());
        r.eb = modulate_symbols(data, s.pulse, s.sps).energy() / static_cast<double>(r.payload.size());
    } else {
        r.eb = s.header.energy() / static_cast<double>(frame.header_chips());
    }

    const std::size_t tail = cfg.sync.search_samples + cfg.sync.cir_window + s.pulse.size();
    SampleBuffer padded(std::vector<Complex>(r.lead + tx.size() + tail), cfg.rate_hz, 0.0, tx.domain);
    std::copy(tx.samples.begin(), tx.samples.end(), padded.samples.begin() + static_cast<std::ptrdiff_t>(r.lead));
    SampleBuffer rx = apply_channel(padded, r.channel);

    if (cfg.interferer) {
        InterfererConfig ic = *cfg.interferer;
        ic.phase_rad += phase;
        const double signal_power = r.eb * cfg.rate_hz / static_cast<double>(s.sps);
        rx = add_cw_interferer(std::move(rx), ic, signal_power);
    }
    rx = add_awgn(std::move(rx), cfg.ebn0_db.value_or(kInfinity), r.eb, rng);

    const bool steer = cfg.notch_steering.enabled && !cfg.frontend.notch && !rx.is_real();
    if (!steer) {
        r.adc = digitize(std::move(rx), cfg.frontend, cfg.adc, rng);
        return r;
    }
    r.adc = digitize(rx, cfg.frontend, cfg.adc, rng);
    if (r.adc.size() >= cfg.notch_steering.nfft) {
        r.interferer = estimate_interferer(r.adc, cfg.notch_steering.nfft, cfg.notch_steering.margin_db);
        if (r.interferer->detected) {
            FrontEndConfig fe = cfg.frontend;
            fe.notch = NotchSettings{r.interferer->freq_hz, cfg.notch_steering.pole_radius};
            r.adc = digitize(std::move(rx), fe, cfg.adc, rng);
        }
    }
    return r;
}

/// Sine of the angle between the estimated and true tap vectors on the delay
/// window: 0 for an estimate exact up to a complex gain, 1 for orthogonal.
double cir_error(const CirEstimate &cir, const ChannelRealization &ch, std::int64_t origin, std::size_t window,
                 double rate_hz) {
    std::vector<Complex> h(window), e(window);
    for (const auto &t : ch.taps) {
        const std::int64_t d = origin + delay_samples(t, rate_hz);
        if (d >= 0 && d < static_cast<std::int64_t>(window)) h[static_cast<std::size_t>(d)] += t.gain;
    }
    for (const auto &f : cir.fingers)
        if (f.delay_samples < static_cast<std::int64_t>(window))
            e[static_cast<std::size_t>(f.delay_samples)] += f.coeff * cir.scale;
    Complex inner{};
    double eh = 0.0, ee = 0.0;
    for (std::size_t d = 0; d < window; ++d) {
        inner += e[d] * std::conj(h[d]);
        eh += std::norm(h[d]);
        ee += std::norm(e[d]);
    }
    if (eh == 0.0 || ee == 0.0) return 1.0;
    return std::sqrt(std::max(0.0, 1.0 - std::norm(inner) / (eh * ee)));
}

struct TrialResult {
    std::uint64_t n_errors = 0;
    bool detected = false;
    std::int64_t timing_error = 0;
    std::int64_t searched = 0;
    double cir_rmse = kNaN;
    bool interferer_detected = false;
    double freq_error_hz = kNaN;
    bool fa_tested = false;
    bool false_alarm = false;
};

void record_interferer(const SimConfig &cfg, const Received &r, TrialResult &out) {
    if (!r.interferer || !r.interferer->detected) return;
    out.interferer_detected = true;
    if (cfg.interferer) out.freq_error_hz = r.interferer->freq_hz - cfg.interferer->offset_hz;
}

CirEstimate true_cir(const ChannelRealization &ch, std::size_t n_fingers, double rate_hz) {
    std::vector<Finger> taps;
    for (const auto &t : ch.taps) taps.push_back({delay_samples(t, rate_hz), t.gain});
    std::stable_sort(taps.begin(), taps.end(),
                     [](const Finger &a, const Finger &b) { return std::abs(a.coeff) > std::abs(b.coeff); });
    taps.resize(std::min(taps.size(), n_fingers));
    return make_cir(taps, 0);
}

TrialResult ber_trial(const SimConfig &cfg, const Setup &s, std::uint64_t trial) {
    Rng rng = make_stream(cfg.master_seed, trial);
    Received r = receive(cfg, s, rng);
    TrialResult out;
    record_interferer(cfg, r, out);
    const std::size_t n = r.payload.size();

    CirEstimate cir;
    std::int64_t start = 0;
    if (cfg.sync.perfect_csi) {
        out.detected = true;
        cir = true_cir(r.channel, cfg.rake.n_fingers, cfg.rate_hz);
        start = static_cast<std::int64_t>(r.lead);
    } else {
        const SyncResult sync = acquire(r.adc, s.header, cfg.sync.threshold, cfg.sync.search_samples);
        out.searched = sync.searched_samples;
        if (!sync.detected) {
            out.n_errors = n;
            return out;
        }
        out.detected = true;
        out.timing_error = sync.offset_samples - static_cast<std::int64_t>(r.lead) -
                           timing_reference(r.channel, s, cfg.rate_hz);
        SyncResult shifted = sync;
        shifted.offset_samples =
            std::max<std::int64_t>(0, sync.offset_samples - static_cast<std::int64_t>(cfg.sync.cir_guard_samples));
        cir = estimate_cir(r.adc, s.header, shifted, cfg.rake.n_fingers, cfg.sync.cir_bits, s.cir_opts);
        start = shifted.offset_samples;
        out.cir_rmse = cir_error(cir, r.channel, static_cast<std::int64_t>(r.lead) - start, cfg.sync.cir_window,
                                 cfg.rate_hz);
    }
    if (n == 0) return out;

    const std::size_t begin = static_cast<std::size_t>(start) + (s.pn.size() * cfg.preamble_reps + s.sfd.size()) * s.sps;
    SampleBuffer data(std::vector<Complex>(r.adc.samples.begin() + static_cast<std::ptrdiff_t>(begin), r.adc.samples.end()),
                      cfg.rate_hz, 0.0, r.adc.domain);
    auto z = rake_combine(data, cir, cfg.modulation, s.pulse, n);

    const auto memory = static_cast<std::size_t>(cfg.viterbi.memory);
    const IsiChannel isi = derive_isi_channel(cir, s.pulse, cfg.modulation, memory);
    for (auto &v : z) v *= isi.rotation;
    // Remove the known tail of the SFD from the first statistics.
    for (std::size_t k = 0; k < std::min(memory, n); ++k)
        for (std::size_t m = k + 1; m <= memory; ++m) {
            const std::size_t back = m - k; // SFD chip `back` symbols before the payload
            if (back <= s.sfd.size()) z[k] -= isi.taps[m] * static_cast<double>(s.sfd[s.sfd.size() - back]);
        }
    const Bits bits = viterbi_mlse(z, isi.taps, cfg.viterbi);
    for (std::size_t k = 0; k < n; ++k) out.n_errors += bits[k] != r.payload[k] ? 1 : 0;
    return out;
}

TrialResult sync_trial(const SimConfig &cfg, const Setup &s, std::uint64_t trial) {
    Rng rng = make_stream(cfg.master_seed, trial);
    Received r = receive(cfg, s, rng);
    TrialResult out;
    record_interferer(cfg, r, out);
    const SyncResult sync = acquire(r.adc, s.header, cfg.sync.threshold, cfg.sync.search_samples);
    out.searched = sync.searched_samples;
    out.detected = sync.detected;
    if (sync.detected)
        out.timing_error = sync.offset_samples - static_cast<std::int64_t>(r.lead) -
                           timing_reference(r.channel, s, cfg.rate_hz);

    if (cfg.ebn0_db) {
        SampleBuffer noise(std::vector<Complex>(r.adc.size()), cfg.rate_hz, 0.0, r.adc.domain);
        noise = add_awgn(std::move(noise), *cfg.ebn0_db, r.eb, rng);
        FrontEndConfig fe = cfg.frontend;
        const SampleBuffer q = digitize(std::move(noise), fe, cfg.adc, rng);
        out.fa_tested = true;
        out.false_alarm = acquire(q, s.header, cfg.sync.threshold, cfg.sync.search_samples).detected;
    }
    return out;
}

template <class Fn>
std::vector<TrialResult> run_trials(std::size_t n, unsigned workers, Fn fn) {
    std::vector<TrialResult> results(n);
    workers = std::max(1u, std::min<unsigned>(workers, static_cast<unsigned>(std::max<std::size_t>(n, 1))));
    if (workers == 1) {
        for (std::size_t k = 0; k < n; ++k) results[k] = fn(k);
        return results;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr error;
    std::atomic<bool> failed{false};
    std::mutex error_mutex;
    {
        std::vector<std::jthread> pool;
        for (unsigned w = 0; w < workers; ++w)
            pool.emplace_back([&] {
                for (std::size_t k; !failed && (k = next++) < n;) {
                    try {
                        results[k] = fn(k);
                    } catch (...) {
                        std::lock_guard lock(error_mutex);
                        if (!error) error = std::current_exception();
                        failed = true;
                    }
                }
            });
    }
    if (error) std::rethrow_exception(error);
    return results;
}

MetricsRecord base_record(const SimConfig &cfg) {
    MetricsRecord m;
    m.config_hash = config_hash(cfg);
    m.ebn0_db = cfg.ebn0_db.value_or(kInfinity);
    m.sir_db = cfg.interferer ? cfg.interferer->sir_db : kInfinity;
    m.adc_bits = cfg.adc.bits;
    m.rake_fingers = cfg.rake.n_fingers;
    m.seed = cfg.master_seed;
    m.n_trials = cfg.n_trials;
    return m;
}

/// Folds trial results in trial order, so the record does not depend on how
/// the trials were scheduled.
void aggregate(MetricsRecord &m, const SimConfig &cfg, const Setup &s, const std::vector<TrialResult> &trials) {
    std::uint64_t detections = 0;
    double sync_time = 0.0, cir_sum = 0.0, freq_sq = 0.0;
    std::uint64_t cir_count = 0, freq_count = 0;
    for (const auto &t : trials) {
        m.n_bits += cfg.n_payload_bits;
        m.n_errors += t.n_errors;
        m.trial_error_sq_sum += static_cast<double>(t.n_errors) * static_cast<double>(t.n_errors);
        if (t.n_errors > 0) ++m.n_packet_errors;
        if (t.detected) {
            ++detections;
            sync_time += static_cast<double>(t.searched) / cfg.rate_hz + s.header_time_s;
            ++m.timing_histogram[t.timing_error];
        } else {
            ++m.sync_failures;
        }
        if (!std::isnan(t.cir_rmse)) {
            cir_sum += t.cir_rmse;
            ++cir_count;
        }
        if (t.interferer_detected) ++m.interferer_detections;
        if (!std::isnan(t.freq_error_hz)) {
            freq_sq += t.freq_error_hz * t.freq_error_hz;
            ++freq_count;
        }
        if (t.fa_tested) {
            ++m.false_alarm_trials;
            if (t.false_alarm) ++m.false_alarms;
        }
    }
    const auto n = static_cast<double>(trials.size());
    m.ber = m.n_bits ? static_cast<double>(m.n_errors) / static_cast<double>(m.n_bits) : 0.0;
    m.per = trials.empty() ? 0.0 : static_cast<double>(m.n_packet_errors) / n;
    m.p_detect = trials.empty() ? 0.0 : static_cast<double>(detections) / n;
    m.mean_sync_time_us = detections ? 1e6 * sync_time / static_cast<double>(detections) : 0.0;
    m.cir_rmse = cir_count ? cir_sum / static_cast<double>(cir_count) : 0.0;
    m.interferer_freq_error_hz = freq_count ? std::sqrt(freq_sq / static_cast<double>(freq_count)) : 0.0;
    m.false_alarm_rate =
        m.false_alarm_trials ? static_cast<double>(m.false_alarms) / static_cast<double>(m.false_alarm_trials) : 0.0;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

int integral_value(double v, const char *field) {
    if (v != std::floor(v) || v < 0 || v > 1e9) throw ConfigError(field, "sweep value must be a non-negative integer");
    return static_cast<int>(v);
}

} // namespace

// ------------------------------------------------------------------------
// Presets

SimConfig preset_gen2() {
    SimConfig c;
    c.mode = Mode::gen2_iq;
    c.rate_hz = kGen2RateHz;
    c.modulation = ModulationConfig::from_bit_rate(kGen2BitRate, Mode::gen2_iq);
    c.channel.decay_gamma_s = 0.0;
    c.adc = AdcConfig::ideal(5, 1);
    c.rake.n_fingers = 4;
    c.viterbi = ViterbiConfig{2, 10};
    c.n_payload_bits = 1000;
    c.ebn0_db = 10.0;
    c.n_trials = 100;
    return c;
}

SimConfig preset_gen1() {
    SimConfig c;
    c.mode = Mode::gen1_baseband;
    c.rate_hz = kGen1RateHz;
    c.modulation = ModulationConfig::from_bit_rate(kGen1BitRate, Mode::gen1_baseband);
    c.channel.decay_gamma_s = 0.0;
    c.channel.real_taps = true;
    c.adc = AdcConfig::ideal(4, 4);
    c.adc.way_offset.assign(4, 0.0);
    c.adc.way_gain.assign(4, 1.0);
    c.rake.n_fingers = 4;
    c.viterbi = ViterbiConfig{0, 0};
    c.n_payload_bits = 100;
    c.ebn0_db = 10.0;
    c.n_trials = 10;
    c.notch_steering.enabled = false;
    return c;
}

SimConfig preset_isi_free() {
    SimConfig c = preset_gen2();
    c.modulation = ModulationConfig::from_bit_rate(10e6, Mode::gen2_iq);
    const double a = std::sqrt(0.5);
    c.channel.profile = {Tap{0.0, Complex{a, 0.0}}, Tap{20e-9, Complex{a, 0.0}}};
    c.channel.fading = Fading::rayleigh;
    c.channel.normalization = PowerNormalization::average;
    c.adc = AdcConfig::ideal(12, 1);
    c.frontend.agc_loading = 8.0;
    c.rake.n_fingers = 2;
    c.viterbi = ViterbiConfig{0, 0};
    c.preamble_reps = 1;
    c.n_payload_bits = 100;
    c.ebn0_db = 12.0;
    c.n_trials = 2000;
    c.sync.perfect_csi = true;
    c.notch_steering.enabled = false;
    return c;
}

SimConfig preset(std::string_view name) {
    if (name == "gen2") return preset_gen2();
    if (name == "gen1") return preset_gen1();
    if (name == "isi_free") return preset_isi_free();
    throw ConfigError("preset", "unknown preset '" + std::string(name) + "'");
}

void validate(const SimConfig &cfg) {
    auto check = [](bool ok, const char *field, const std::string &what) {
        if (!ok) throw ConfigError(field, what);
    };
    auto wrap = [](const char *field, auto &&fn) {
        try {
            fn();
        } catch (const InvalidParameter &e) {
            throw ConfigError(field, e.what());
        }
    };
    check(cfg.rate_hz > 0.0 && std::isfinite(cfg.rate_hz), "rate_hz", "must be positive");
    check(cfg.modulation.mode == cfg.mode, "modulation", "mode differs from the top-level mode");
    wrap("modulation", [&] { validate(cfg.modulation); });
    wrap("pulse", [&] { validate(cfg.pulse); });
    wrap("pulse", [&] { (void)gaussian_pulse(cfg.pulse, cfg.rate_hz); });
    check(cfg.modulation.pri_s * cfg.rate_hz >= 1.0, "modulation.pri_s", "shorter than one sample");
    wrap("channel", [&] { validate(cfg.channel); });
    check(cfg.mode == Mode::gen2_iq || cfg.channel.real_taps || cfg.channel.fading == Fading::fixed ||
              (cfg.channel.profile.empty() && cfg.channel.decay_gamma_s == 0.0),
          "channel.real_taps", "the real signal path needs real channel taps");
    if (cfg.mode == Mode::gen1_baseband)
        for (const auto &t : cfg.channel.profile)
            check(t.gain.imag() == 0.0, "channel.profile", "the real signal path needs real channel taps");
    if (cfg.interferer) {
        check(std::abs(cfg.interferer->offset_hz) < cfg.rate_hz / 2.0, "interferer.offset_hz",
              "must be inside +-rate/2");
        check(!std::isnan(cfg.interferer->sir_db), "interferer.sir_db", "must be a number");
    }
    wrap("frontend", [&] { validate(cfg.frontend); });
    check(cfg.mode == Mode::gen2_iq || (cfg.frontend.cfo_hz == 0.0 && !cfg.frontend.notch), "frontend",
          "carrier offset and notch need the complex signal path");
    wrap("adc", [&] { validate(cfg.adc); });
    check(cfg.adc.full_scale == 1.0, "adc.full_scale", "the AGC targets a full scale of 1.0");
    check(cfg.rake.n_fingers >= 1, "rake.n_fingers", "must be >= 1");
    check(cfg.viterbi.memory >= 0 && cfg.viterbi.memory <= kMaxViterbiMemory, "viterbi.memory",
          "must be in [0, 10]");
    check(cfg.viterbi.traceback_depth >= 0, "viterbi.traceback_depth", "must be >= 0");
    check(cfg.preamble_order >= 2 && cfg.preamble_order <= 16, "preamble_order", "must be in [2, 16]");
    check(cfg.preamble_reps >= 1, "preamble_reps", "must be >= 1");
    check(cfg.n_trials >= 1, "n_trials", "must be >= 1");
    if (cfg.ebn0_db) check(!std::isnan(*cfg.ebn0_db), "ebn0_db", "must be a number or null");
    check(cfg.sync.threshold > 0.0 && cfg.sync.threshold < 1.0, "sync.threshold", "must be in (0, 1)");
    check(cfg.sync.search_samples >= cfg.sync.max_lead_samples, "sync.search_samples",
          "must cover max_lead_samples");
    check(cfg.sync.cir_window >= 1, "sync.cir_window", "must be >= 1");
    check(cfg.sync.cir_guard_samples < cfg.sync.cir_window, "sync.cir_guard_samples", "must be below cir_window");
    check(cfg.sync.finger_floor >= 0.0 && cfg.sync.finger_floor < 1.0, "sync.finger_floor", "must be in [0, 1)");
    check(cfg.sync.cir_bits >= 0 && cfg.sync.cir_bits <= kMaxCirBits, "sync.cir_bits", "must be in [0, 16]");
    const auto nfft = cfg.notch_steering.nfft;
    check(nfft >= 2 && (nfft & (nfft - 1)) == 0, "notch_steering.nfft", "must be a power of two");
    check(cfg.notch_steering.margin_db > 0.0, "notch_steering.margin_db", "must be positive");
    check(cfg.notch_steering.pole_radius > 0.0 && cfg.notch_steering.pole_radius < 1.0,
          "notch_steering.pole_radius", "must be in (0, 1)");
    check(cfg.psd.nfft >= 2 && (cfg.psd.nfft & (cfg.psd.nfft - 1)) == 0, "psd.nfft", "must be a power of two");
    check(cfg.psd.threshold_db < 0.0, "psd.threshold_db", "must be negative");
}

// ------------------------------------------------------------------------
// Metrics

double MetricsRecord::ber_confidence() const noexcept {
    if (n_bits == 0) return 0.0;
    return 3.0 * std::sqrt(ber * (1.0 - ber) / static_cast<double>(n_bits));
}

double MetricsRecord::ber_cluster_sigma() const noexcept {
    if (n_trials < 2 || n_bits == 0) return 0.0;
    // Ratio estimator: sum_i (e_i - ber m)^2 with equal trial sizes m.
    const double t = static_cast<double>(n_trials);
    const double m = static_cast<double>(n_bits) / t;
    const double e = static_cast<double>(n_errors);
    const double ss = trial_error_sq_sum - e * e / t;
    return std::sqrt(std::max(0.0, ss) / (t * (t - 1.0))) / m;
}

double MetricsRecord::timing_within(std::int64_t samples) const noexcept {
    std::uint64_t total = 0, inside = 0;
    for (const auto &[err, count] : timing_histogram) {
        total += count;
        if (std::abs(err) <= samples) inside += count;
    }
    return total ? static_cast<double>(inside) / static_cast<double>(total) : 0.0;
}

bool same_counters(const MetricsRecord &a, const MetricsRecord &b) noexcept {
    auto same = [](double x, double y) { return x == y || (std::isnan(x) && std::isnan(y)); };
    return a.config_hash == b.config_hash && same(a.ebn0_db, b.ebn0_db) && same(a.sir_db, b.sir_db) &&
           a.adc_bits == b.adc_bits && a.rake_fingers == b.rake_fingers && same(a.ber, b.ber) &&
           same(a.per, b.per) && a.n_bits == b.n_bits && a.n_errors == b.n_errors && same(a.p_detect, b.p_detect) &&
           same(a.mean_sync_time_us, b.mean_sync_time_us) && same(a.cir_rmse, b.cir_rmse) &&
           same(a.interferer_freq_error_hz, b.interferer_freq_error_hz) && a.seed == b.seed &&
           a.n_trials == b.n_trials && a.n_packet_errors == b.n_packet_errors && a.sync_failures == b.sync_failures &&
           same(a.trial_error_sq_sum, b.trial_error_sq_sum) && a.false_alarms == b.false_alarms &&
           a.false_alarm_trials == b.false_alarm_trials && a.timing_histogram == b.timing_histogram &&
           a.interferer_detections == b.interferer_detections;
}

// ------------------------------------------------------------------------
// Runs

MetricsRecord run_ber_point(const SimConfig &cfg, const RunOptions &opts) {
    validate(cfg);
    const auto t0 = std::chrono::steady_clock::now();
    const Setup s = make_setup(cfg);
    const auto trials = run_trials(cfg.n_trials, opts.workers, [&](std::size_t k) { return ber_trial(cfg, s, k); });
    MetricsRecord m = base_record(cfg);
    aggregate(m, cfg, s, trials);
    m.wall_time_s = seconds_since(t0);
    return m;
}

MetricsRecord run_sync_stats(const SimConfig &cfg, const RunOptions &opts) {
    validate(cfg);
    const auto t0 = std::chrono::steady_clock::now();
    const Setup s = make_setup(cfg);
    const auto trials = run_trials(cfg.n_trials, opts.workers, [&](std::size_t k) { return sync_trial(cfg, s, k); });
    MetricsRecord m = base_record(cfg);
    aggregate(m, cfg, s, trials);
    // Nothing is demodulated here.
    m.n_bits = m.n_errors = m.n_packet_errors = 0;
    m.trial_error_sq_sum = 0.0;
    m.ber = m.per = 0.0;
    m.wall_time_s = seconds_since(t0);
    return m;
}

SweepAxis parse_sweep_axis(std::string_view name) {
    if (name == "ebn0") return SweepAxis::ebn0;
    if (name == "sir") return SweepAxis::sir;
    if (name == "adc_bits") return SweepAxis::adc_bits;
    if (name == "rake_fingers") return SweepAxis::rake_fingers;
    throw ConfigError("axis", "unknown sweep axis '" + std::string(name) + "'");
}

std::string_view to_string(SweepAxis axis) {
    switch (axis) {
    case SweepAxis::ebn0: return "ebn0";
    case SweepAxis::sir: return "sir";
    case SweepAxis::adc_bits: return "adc_bits";
    case SweepAxis::rake_fingers: return "rake_fingers";
    }
    return "";
}

std::vector<MetricsRecord> run_sweep(const SimConfig &cfg, SweepAxis axis, const std::vector<double> &values,
                                     const RunOptions &opts) {
    if (values.empty()) throw ConfigError("values", "sweep needs at least one value");
    std::vector<SimConfig> points;
    for (double v : values) {
        SimConfig c = cfg;
        switch (axis) {
        case SweepAxis::ebn0:
            c.ebn0_db = v;
            break;
        case SweepAxis::sir:
            if (!c.interferer) c.interferer = InterfererConfig{};
            c.interferer->sir_db = v;
            break;
        case SweepAxis::adc_bits:
            c.adc.bits = integral_value(v, "adc.bits");
            break;
        case SweepAxis::rake_fingers:
            c.rake.n_fingers = static_cast<std::size_t>(integral_value(v, "rake.n_fingers"));
            break;
        }
        validate(c);
        points.push_back(std::move(c));
    }
    std::vector<MetricsRecord> out;
    for (const auto &c : points) out.push_back(run_ber_point(c, opts));
    return out;
}

PsdReport run_psd_check(const SimConfig &cfg) {
    validate(cfg);
    const Setup s = make_setup(cfg);
    WelchAccumulator acc(cfg.psd.nfft, cfg.rate_hz);
    for (std::size_t k = 0; k < cfg.n_trials; ++k) {
        Rng rng = make_stream(cfg.master_seed, k);
        const Frame frame = make_frame(s.pn, cfg.preamble_reps, random_bits(cfg.n_payload_bits, rng));
        acc.add(modulate_symbols(frame_symbols(frame), s.pulse, s.sps));
    }

    PsdReport rep;
    rep.psd = acc.result();
    rep.occupied_bw_hz = occupied_bandwidth(rep.psd, cfg.psd.threshold_db);
    rep.max_power_dbm = max_tx_power_dbm(rep.occupied_bw_hz);

    double in_band = 0.0;
    std::size_t in_count = 0;
    for (std::size_t i = 0; i < rep.psd.size(); ++i)
        if (std::abs(rep.psd.freq_hz[i]) <= rep.occupied_bw_hz / 2.0) {
            in_band += rep.psd.density[i];
            ++in_count;
        }
    in_band /= static_cast<double>(std::max<std::size_t>(in_count, 1));
    rep.in_band_mean_db = 10.0 * std::log10(in_band);

    double worst = 0.0;
    for (std::size_t i = 0; i < rep.psd.size(); ++i)
        if (std::abs(rep.psd.freq_hz[i]) > cfg.psd.shape_offset_hz) worst = std::max(worst, rep.psd.density[i]);
    rep.worst_out_of_band_db = worst > 0.0 ? 10.0 * std::log10(worst / in_band) : -kInfinity;
    rep.pass = rep.worst_out_of_band_db <= -cfg.psd.shape_margin_db;
    return rep;
}

DemoPulse demo_pulse(const SimConfig &cfg) {
    validate(cfg);
    DemoPulse d;
    d.carrier_hz = subband_center_hz(cfg.subband);
    const double fs = 8.0 * d.carrier_hz;
    const SampleBuffer p = gaussian_pulse(cfg.pulse, fs, SignalDomain::real_baseband);
    const double peak = p[pulse_center_index(p)].real();
    for (std::size_t n = 0; n < p.size(); ++n) {
        const double t = p.t0_s + static_cast<double>(n) / fs;
        d.time_s.push_back(t);
        d.amplitude.push_back(p[n].real() / peak * std::cos(kTwoPi * d.carrier_hz * t));
    }
    return d;
}

void run_demo_pulse(const SimConfig &cfg, const std::filesystem::path &out_path) {
    const DemoPulse d = demo_pulse(cfg);
    std::ofstream f(out_path);
    if (!f) throw std::runtime_error("cannot open " + out_path.string() + " for writing");
    f.precision(17);
    f << "time_s,amplitude\n";
    for (std::size_t n = 0; n < d.time_s.size(); ++n) f << d.time_s[n] << ',' << d.amplitude[n] << '\n';
    if (!f) throw std::runtime_error("write to " + out_path.string() + " failed");
}

} // namespace uwb
