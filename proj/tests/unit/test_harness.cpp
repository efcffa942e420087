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

#include <gtest/gtest.h>

#include <cmath>

#include "oracles.hpp"
#include "uwb/harness.hpp"

using namespace uwb;

namespace {

SimConfig awgn_slicer(double ebn0_db, std::size_t trials) {
    SimConfig c = preset_gen2();
    c.adc = AdcConfig::ideal(12);
    c.viterbi = ViterbiConfig{0, 0};
    c.ebn0_db = ebn0_db;
    c.n_trials = trials;
    return c;
}

} // namespace

TEST(Harness, NoiselessRunHasNoErrors) {
    SimConfig c = preset_gen2();
    c.ebn0_db.reset();
    c.n_trials = 5;
    const auto m = run_ber_point(c);
    EXPECT_EQ(m.n_bits, 5000u);
    EXPECT_EQ(m.n_errors, 0u);
    EXPECT_EQ(m.p_detect, 1.0);
    EXPECT_EQ(m.timing_within(0), 1.0);
    EXPECT_EQ(m.ebn0_db, kInfinity);
    EXPECT_EQ(m.sir_db, kInfinity);
}

TEST(Harness, NoiselessGen1RunHasNoErrors) {
    SimConfig c = preset_gen1();
    c.ebn0_db.reset();
    c.n_trials = 2;
    const auto m = run_ber_point(c);
    EXPECT_EQ(m.n_errors, 0u);
    EXPECT_EQ(m.p_detect, 1.0);
}

TEST(Harness, SixDbMatchesClosedForm) {
    const auto m = run_ber_point(awgn_slicer(6.0, 100));
    ASSERT_GE(m.n_bits, 100000u);
    const double expected = oracle::bpsk_ber(6.0);
    EXPECT_NEAR(expected, 2.388e-3, 1e-6);
    EXPECT_NEAR(m.ber, expected, 3.0 * std::sqrt(expected * (1 - expected) / static_cast<double>(m.n_bits)));
}

TEST(Harness, DeterministicForAnyWorkerCount) {
    SimConfig c = preset_gen2();
    c.ebn0_db = 5.0;
    c.n_trials = 12;
    const auto a = run_ber_point(c, {1});
    const auto b = run_ber_point(c, {1});
    const auto d = run_ber_point(c, {3});
    EXPECT_TRUE(same_counters(a, b));
    EXPECT_TRUE(same_counters(a, d));
    EXPECT_GT(a.n_errors, 0u);
    c.master_seed = 2;
    EXPECT_FALSE(same_counters(a, run_ber_point(c)));
}

TEST(Harness, SweepPointEqualsSingleRun) {
    SimConfig c = preset_gen2();
    c.n_trials = 6;
    const auto sweep = run_sweep(c, SweepAxis::ebn0, {4.0, 7.0});
    ASSERT_EQ(sweep.size(), 2u);
    c.ebn0_db = 7.0;
    EXPECT_TRUE(same_counters(sweep[1], run_ber_point(c)));
    EXPECT_EQ(sweep[0].ebn0_db, 4.0);
}

TEST(Harness, OneBitConverterLosesToFineConverters) {
    SimConfig c = awgn_slicer(6.0, 40);
    const auto r = run_sweep(c, SweepAxis::adc_bits, {1, 4, 12});
    EXPECT_GT(r[0].ber, r[1].ber);
    EXPECT_GT(r[0].ber, r[2].ber);
    EXPECT_EQ(r[0].adc_bits, 1);
    EXPECT_THROW(run_sweep(c, SweepAxis::adc_bits, {2.5}), ConfigError);
}

TEST(Harness, SecondFingerHelpsOnTwoPathChannel) {
    SimConfig c = preset_isi_free();
    c.n_trials = 400;
    c.ebn0_db = 8.0;
    const auto r = run_sweep(c, SweepAxis::rake_fingers, {1, 2});
    EXPECT_LT(r[1].ber, r[0].ber);
    EXPECT_EQ(r[1].rake_fingers, 2u);
}

TEST(Harness, SirSweepAddsAnInterferer) {
    SimConfig c = preset_gen2();
    c.n_trials = 3;
    c.n_payload_bits = 200;
    const auto r = run_sweep(c, SweepAxis::sir, {-10.0});
    EXPECT_EQ(r[0].sir_db, -10.0);
    EXPECT_EQ(r[0].interferer_detections, 3u);
    EXPECT_LT(r[0].interferer_freq_error_hz, 122e3);
}

TEST(Harness, SyncStatistics) {
    SimConfig c = preset_gen2();
    c.n_trials = 20;
    const auto m = run_sync_stats(c);
    EXPECT_EQ(m.p_detect, 1.0);
    EXPECT_EQ(m.false_alarm_trials, 20u);
    EXPECT_EQ(m.false_alarms, 0u);
    EXPECT_EQ(m.n_bits, 0u);
    EXPECT_GE(m.timing_within(1), 0.99);
    EXPECT_LT(m.mean_sync_time_us, 70.0);
    // 4 x 127 + 16 chips at 10 ns plus 513 searched offsets at 1 ns.
    EXPECT_NEAR(m.mean_sync_time_us, 5.24 + 0.513, 1e-9);
}

TEST(Harness, PsdCheckPasses) {
    SimConfig c = preset_gen2();
    c.n_trials = 10;
    const auto rep = run_psd_check(c);
    EXPECT_TRUE(rep.pass);
    EXPECT_NEAR(rep.occupied_bw_hz, 500e6, 5e6);
    EXPECT_NEAR(rep.max_power_dbm, max_tx_power_dbm(rep.occupied_bw_hz), 1e-12);
    c.psd.shape_offset_hz = 100e6;
    EXPECT_FALSE(run_psd_check(c).pass);
}

TEST(Harness, DemoPulseOnSubbandCarrier) {
    SimConfig c = preset_gen2();
    const auto d = demo_pulse(c);
    EXPECT_NEAR(d.carrier_hz, 4.975e9, 1e3);
    // Zero crossings of cos(2 pi fc t) are half a carrier period apart.
    std::vector<double> crossings;
    for (std::size_t i = 1; i < d.amplitude.size(); ++i)
        if ((d.amplitude[i - 1] < 0) != (d.amplitude[i] < 0)) {
            const double a = d.amplitude[i - 1], b = d.amplitude[i];
            crossings.push_back(d.time_s[i - 1] + (d.time_s[i] - d.time_s[i - 1]) * a / (a - b));
        }
    ASSERT_GT(crossings.size(), 10u);
    const double mean_gap = (crossings.back() - crossings.front()) / static_cast<double>(crossings.size() - 1);
    EXPECT_NEAR(mean_gap, 100.5e-12, 0.5e-12);
    // Envelope peaks at t = 0 and is symmetric around it.
    const std::size_t n = d.amplitude.size();
    ASSERT_EQ(n % 2, 1u);
    EXPECT_NEAR(d.time_s[n / 2], 0.0, 1e-15);
    EXPECT_NEAR(d.amplitude[n / 2], 1.0, 1e-12);
    for (std::size_t i = 0; i < n; ++i) EXPECT_NEAR(d.amplitude[i], d.amplitude[n - 1 - i], 1e-9);

    c.subband = SubBand(0);
    const double f0 = demo_pulse(c).carrier_hz;
    c.subband = SubBand(13);
    EXPECT_NEAR(demo_pulse(c).carrier_hz - f0, 13 * 7.5e9 / 14, 1e3);
}

TEST(Harness, ValidationNamesTheField) {
    auto field_of = [](SimConfig c) {
        try {
            validate(c);
        } catch (const ConfigError &e) {
            return e.field();
        }
        return std::string("<none>");
    };
    SimConfig c = preset_gen2();
    EXPECT_EQ(field_of(c), "<none>");
    c.adc.bits = 0;
    EXPECT_EQ(field_of(c), "adc");
    c = preset_gen2();
    c.sync.threshold = 1.5;
    EXPECT_EQ(field_of(c), "sync.threshold");
    c = preset_gen2();
    c.viterbi.memory = 11;
    EXPECT_EQ(field_of(c), "viterbi.memory");
    c = preset_gen2();
    c.rake.n_fingers = 0;
    EXPECT_EQ(field_of(c), "rake.n_fingers");
    c = preset_gen1();
    c.channel.decay_gamma_s = 20e-9;
    c.channel.real_taps = false;
    EXPECT_EQ(field_of(c), "channel.real_taps");
    EXPECT_THROW(preset("gen3"), ConfigError);
}

TEST(Metrics, ConfidenceAndClusterSigma) {
    MetricsRecord m;
    m.n_bits = 10000;
    m.n_errors = 100;
    m.ber = 0.01;
    EXPECT_NEAR(m.ber_confidence(), 3 * std::sqrt(0.01 * 0.99 / 10000), 1e-15);
    // Ten trials of 1000 bits, errors spread evenly: no extra variance.
    m.n_trials = 10;
    m.trial_error_sq_sum = 10 * 10.0 * 10.0;
    EXPECT_NEAR(m.ber_cluster_sigma(), 0.0, 1e-15);
    m.timing_histogram = {{-1, 1}, {0, 97}, {3, 2}};
    EXPECT_NEAR(m.timing_within(1), 0.98, 1e-15);
}
