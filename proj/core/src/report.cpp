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

#include <charconv>
#include <cinttypes>
#include <cstdio>
#include <cstdlib>

#include "json.hpp"

namespace uwb {

namespace {

std::string fmt_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::vector<std::string_view> split(std::string_view line, char sep) {
    std::vector<std::string_view> out;
    std::size_t start = 0;
    for (;;) {
        const auto pos = line.find(sep, start);
        out.push_back(line.substr(start, pos - start));
        if (pos == std::string_view::npos) break;
        start = pos + 1;
    }
    return out;
}

double parse_double(std::string_view s, std::size_t line) {
    const std::string str(s);
    char *end = nullptr;
    const double v = std::strtod(str.c_str(), &end);
    if (str.empty() || end != str.c_str() + str.size())
        throw std::runtime_error("CSV line " + std::to_string(line) + ": bad number '" + str + "'");
    return v;
}

template <class T>
T parse_int(std::string_view s, std::size_t line) {
    T v{};
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || ptr != s.data() + s.size())
        throw std::runtime_error("CSV line " + std::to_string(line) + ": bad integer '" + std::string(s) + "'");
    return v;
}

/// JSON has no infinities or NaN; they are written as null.
nlohmann::json finite_or_null(double v) { return std::isfinite(v) ? nlohmann::json(v) : nlohmann::json(nullptr); }

std::string hex64(std::uint64_t v) {
    char buf[24];
    std::snprintf(buf, sizeof buf, "0x%016" PRIx64, v);
    return buf;
}

} // namespace

std::string to_csv(const std::vector<MetricsRecord> &records) {
    std::string out(kCsvHeader);
    out += '\n';
    for (const auto &r : records) {
        out += fmt_double(r.ebn0_db) + ',' + fmt_double(r.sir_db) + ',' + std::to_string(r.adc_bits) + ',' +
               std::to_string(r.rake_fingers) + ',' + std::to_string(r.n_bits) + ',' + std::to_string(r.n_errors) +
               ',' + fmt_double(r.ber) + ',' + fmt_double(r.p_detect) + ',' + fmt_double(r.mean_sync_time_us) + ',' +
               std::to_string(r.seed) + '\n';
    }
    return out;
}

std::vector<MetricsRecord> from_csv(std::string_view text) {
    std::vector<MetricsRecord> out;
    std::size_t line_no = 0;
    bool header = true;
    while (!text.empty()) {
        const auto nl = text.find('\n');
        std::string_view line = text.substr(0, nl);
        text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
        if (line.empty()) continue;
        if (header) {
            if (line != kCsvHeader) throw std::runtime_error("CSV header mismatch");
            header = false;
            continue;
        }
        const auto f = split(line, ',');
        if (f.size() != 10) throw std::runtime_error("CSV line " + std::to_string(line_no) + ": expected 10 fields");
        MetricsRecord r;
        r.ebn0_db = parse_double(f[0], line_no);
        r.sir_db = parse_double(f[1], line_no);
        r.adc_bits = parse_int<int>(f[2], line_no);
        r.rake_fingers = parse_int<std::size_t>(f[3], line_no);
        r.n_bits = parse_int<std::uint64_t>(f[4], line_no);
        r.n_errors = parse_int<std::uint64_t>(f[5], line_no);
        r.ber = parse_double(f[6], line_no);
        r.p_detect = parse_double(f[7], line_no);
        r.mean_sync_time_us = parse_double(f[8], line_no);
        r.seed = parse_int<std::uint64_t>(f[9], line_no);
        out.push_back(r);
    }
    if (header) throw std::runtime_error("CSV is empty");
    return out;
}

std::string to_json(const MetricsRecord &r) {
    nlohmann::json hist = nlohmann::json::object();
    for (const auto &[err, count] : r.timing_histogram) hist[std::to_string(err)] = count;
    const nlohmann::json j = {
        {"config_hash", hex64(r.config_hash)},
        {"ebn0_db", finite_or_null(r.ebn0_db)},
        {"sir_db", finite_or_null(r.sir_db)},
        {"adc_bits", r.adc_bits},
        {"rake_fingers", r.rake_fingers},
        {"ber", r.ber},
        {"ber_ci_3sigma", r.ber_confidence()},
        {"per", r.per},
        {"n_bits", r.n_bits},
        {"n_errors", r.n_errors},
        {"p_detect", r.p_detect},
        {"mean_sync_time_us", r.mean_sync_time_us},
        {"cir_rmse", r.cir_rmse},
        {"interferer_freq_error_hz", r.interferer_freq_error_hz},
        {"wall_time_s", r.wall_time_s},
        {"seed", r.seed},
        {"n_trials", r.n_trials},
        {"n_packet_errors", r.n_packet_errors},
        {"sync_failures", r.sync_failures},
        {"false_alarms", r.false_alarms},
        {"false_alarm_trials", r.false_alarm_trials},
        {"false_alarm_rate", r.false_alarm_rate},
        {"interferer_detections", r.interferer_detections},
        {"timing_histogram", hist},
    };
    return j.dump(2);
}

std::string psd_to_csv(const Psd &psd) {
    std::string out = "freq_hz,density\n";
    for (std::size_t i = 0; i < psd.size(); ++i)
        out += fmt_double(psd.freq_hz[i]) + ',' + fmt_double(psd.density[i]) + '\n';
    return out;
}

} // namespace uwb
