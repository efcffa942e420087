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

#include <fstream>

#include "json.hpp"
#include "uwb/harness.hpp"

using namespace uwb;
using nlohmann::json;

namespace {

std::string error_field(const std::string &text) {
    try {
        config_from_json(text);
    } catch (const ConfigError &e) {
        return e.field();
    }
    return "<none>";
}

} // namespace

TEST(Config, RoundTripsEveryPreset) {
    for (const char *name : {"gen1", "gen2", "isi_free"}) {
        SimConfig c = preset(name);
        c.interferer = InterfererConfig{-120e6, -7.5, 0.25};
        if (c.mode == Mode::gen2_iq) c.frontend.notch = NotchSettings{33e6, 0.99};
        c.ebn0_db.reset();
        c.master_seed = 0xFFFFFFFFFFFFFFFFull;
        const std::string text = config_to_json(c);
        const SimConfig back = config_from_json(text);
        EXPECT_EQ(config_to_json(back), text) << name;
        EXPECT_EQ(config_hash(back), config_hash(c)) << name;
    }
}

TEST(Config, PresetKeyAndOverrides) {
    const auto c = config_from_json(R"({"preset": "gen1", "adc": {"bits": 2}, "ebn0_db": null})");
    EXPECT_EQ(c.mode, Mode::gen1_baseband);
    EXPECT_EQ(c.adc.bits, 2);
    EXPECT_EQ(c.adc.ways, 4);
    EXPECT_FALSE(c.ebn0_db.has_value());

    const auto d = config_from_json(R"({"modulation": {"bit_rate_bps": 50e6}, "adc": {"ways": 2}})");
    EXPECT_DOUBLE_EQ(d.modulation.pri_s, 20e-9);
    EXPECT_EQ(d.adc.way_offset.size(), 2u);
    EXPECT_EQ(d.adc.way_gain, (std::vector<double>{1.0, 1.0}));
}

TEST(Config, EmptyObjectIsGen2) {
    EXPECT_EQ(config_hash(config_from_json("{}")), config_hash(preset_gen2()));
}

TEST(Config, UnknownKeysNameTheirPath) {
    EXPECT_EQ(error_field(R"({"bogus": 1})"), "bogus");
    EXPECT_EQ(error_field(R"({"adc": {"bitz": 3}})"), "adc.bitz");
    EXPECT_EQ(error_field(R"({"sync": {"perfect_csi": true, "extra": 0}})"), "sync.extra");
}

TEST(Config, TypeErrorsNameTheirPath) {
    EXPECT_EQ(error_field(R"({"adc": {"bits": "five"}})"), "adc.bits");
    EXPECT_EQ(error_field(R"({"n_trials": -3})"), "n_trials");
    EXPECT_EQ(error_field(R"({"n_trials": 2.5})"), "n_trials");
    EXPECT_EQ(error_field(R"({"mode": "gen9"})"), "mode");
    EXPECT_EQ(error_field(R"({"sync": {"perfect_csi": 1}})"), "sync.perfect_csi");
    EXPECT_EQ(error_field(R"({"subband": 14})"), "subband");
    EXPECT_EQ(error_field(R"({"preset": 3})"), "preset");
    EXPECT_EQ(error_field(R"([1, 2])"), "<root>");
    EXPECT_EQ(error_field(R"({"adc": )"), "<root>");
}

TEST(Config, ValidationRunsAfterParsing) {
    EXPECT_EQ(error_field(R"({"sync": {"threshold": 0}})"), "sync.threshold");
    EXPECT_EQ(error_field(R"({"adc": {"ways": 2, "way_gain": [1]}})"), "adc");
}

TEST(Config, LoadFromFile) {
    const auto path = std::filesystem::temp_directory_path() / "uwbsim_test_config.json";
    {
        std::ofstream f(path);
        f << R"({"n_trials": 7})";
    }
    EXPECT_EQ(load_config(path).n_trials, 7u);
    std::filesystem::remove(path);
    EXPECT_THROW(load_config(path), ConfigError);
}

TEST(Config, HashIsStableAndSensitive) {
    const SimConfig a = preset_gen2();
    SimConfig b = a;
    EXPECT_EQ(config_hash(a), config_hash(b));
    b.master_seed = 2;
    EXPECT_NE(config_hash(a), config_hash(b));
    // FNV-1a 64 of the compact canonical form.
    const std::string canon = json::parse(config_to_json(a)).dump();
    std::uint64_t h = 0xcbf29ce484222325ull;
    for (unsigned char ch : canon) h = (h ^ ch) * 0x100000001b3ull;
    EXPECT_EQ(config_hash(a), h);
}

TEST(Report, CsvRoundTrip) {
    MetricsRecord a;
    a.ebn0_db = 6.25;
    a.adc_bits = 5;
    a.rake_fingers = 4;
    a.n_bits = 100000;
    a.n_errors = 239;
    a.ber = 0.00239;
    a.p_detect = 0.999;
    a.mean_sync_time_us = 5.753;
    a.seed = 0xFFFFFFFFFFFFFFFFull;
    MetricsRecord b;
    b.sir_db = -10.0;
    b.ber = 1.0 / 3.0;
    const std::string csv = to_csv({a, b});
    EXPECT_EQ(csv.substr(0, csv.find('\n')), kCsvHeader);
    const auto back = from_csv(csv);
    ASSERT_EQ(back.size(), 2u);
    EXPECT_EQ(back[0].ebn0_db, a.ebn0_db);
    EXPECT_EQ(back[0].sir_db, kInfinity);
    EXPECT_EQ(back[0].n_errors, a.n_errors);
    EXPECT_EQ(back[0].seed, a.seed);
    EXPECT_EQ(back[0].mean_sync_time_us, a.mean_sync_time_us);
    EXPECT_EQ(back[1].ebn0_db, kInfinity);
    EXPECT_EQ(back[1].ber, b.ber);
    EXPECT_EQ(to_csv(back), csv);
}

TEST(Report, CsvRejectsMalformedInput) {
    EXPECT_THROW(from_csv("a,b\n1,2\n"), std::runtime_error);
    EXPECT_THROW(from_csv(std::string(kCsvHeader) + "\n1,2,3\n"), std::runtime_error);
    EXPECT_THROW(from_csv(std::string(kCsvHeader) + "\nx,inf,5,4,10,1,0.1,1,5,1\n"), std::runtime_error);
}

TEST(Report, JsonSummaryFields) {
    MetricsRecord m;
    m.config_hash = 0xABCull;
    m.ebn0_db = 8.0;
    m.n_bits = 1000;
    m.n_errors = 3;
    m.ber = 0.003;
    m.timing_histogram = {{0, 9}, {-1, 1}};
    const auto j = json::parse(to_json(m));
    for (const char *k : {"config_hash", "ebn0_db", "sir_db", "adc_bits", "rake_fingers", "ber", "per", "n_bits",
                          "n_errors", "p_detect", "mean_sync_time_us", "cir_rmse", "interferer_freq_error_hz",
                          "wall_time_s", "seed"})
        EXPECT_TRUE(j.contains(k)) << k;
    EXPECT_EQ(j["config_hash"], "0x0000000000000abc");
    EXPECT_TRUE(j["sir_db"].is_null());
    EXPECT_EQ(j["ebn0_db"], 8.0);
    EXPECT_EQ(j["n_errors"], 3);
}

TEST(Report, PsdCsv) {
    Psd p;
    p.freq_hz = {-1.0, 0.0};
    p.density = {0.5, 2.0};
    p.bin_hz = 1.0;
    const std::string csv = psd_to_csv(p);
    EXPECT_EQ(csv.substr(0, csv.find('\n')).find("freq_hz"), 0u);
    EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 3);
}
