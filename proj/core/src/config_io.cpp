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

#include <cstdio>
#include <fstream>
#include <functional>
#include <sstream>

#include "json.hpp"

namespace uwb {

namespace {

using nlohmann::json;

template <class E>
struct EnumName {
    E value;
    const char *name;
};

constexpr EnumName<Mode> kModes[] = {{Mode::gen1_baseband, "gen1_baseband"}, {Mode::gen2_iq, "gen2_iq"}};
constexpr EnumName<Fading> kFadings[] = {{Fading::rayleigh, "rayleigh"}, {Fading::fixed, "fixed"}};
constexpr EnumName<PowerNormalization> kNormalizations[] = {
    {PowerNormalization::per_realization, "per_realization"}, {PowerNormalization::average, "average"}};

template <class E, std::size_t N>
const char *enum_name(const EnumName<E> (&table)[N], E v) {
    for (const auto &e : table)
        if (e.value == v) return e.name;
    return "";
}

json tap_to_json(const Tap &t) {
    return {{"delay_s", t.delay_s}, {"gain_re", t.gain.real()}, {"gain_im", t.gain.imag()}};
}

json to_json_value(const SimConfig &c) {
    json taps = json::array();
    for (const auto &t : c.channel.profile) taps.push_back(tap_to_json(t));

    json interferer = nullptr;
    if (c.interferer)
        interferer = {{"offset_hz", c.interferer->offset_hz},
                      {"sir_db", c.interferer->sir_db},
                      {"phase_rad", c.interferer->phase_rad}};
    json notch = nullptr;
    if (c.frontend.notch) notch = {{"f0_hz", c.frontend.notch->f0_hz}, {"pole_radius", c.frontend.notch->pole_radius}};

    return {
        {"mode", enum_name(kModes, c.mode)},
        {"rate_hz", c.rate_hz},
        {"modulation", {{"pri_s", c.modulation.pri_s}, {"bit_rate_bps", c.modulation.bit_rate_bps}}},
        {"pulse", {{"sigma_s", c.pulse.sigma_s}, {"span_sigmas", c.pulse.span_sigmas}}},
        {"channel",
         {{"decay_gamma_s", c.channel.decay_gamma_s},
          {"tap_spacing_s", c.channel.tap_spacing_s},
          {"span_gammas", c.channel.span_gammas},
          {"seed", c.channel.seed},
          {"profile", taps},
          {"fading", enum_name(kFadings, c.channel.fading)},
          {"normalization", enum_name(kNormalizations, c.channel.normalization)},
          {"real_taps", c.channel.real_taps}}},
        {"interferer", interferer},
        {"frontend",
         {{"cfo_hz", c.frontend.cfo_hz},
          {"phase_rad", c.frontend.phase_rad},
          {"agc_loading", c.frontend.agc_loading},
          {"notch", notch}}},
        {"adc",
         {{"bits", c.adc.bits},
          {"full_scale", c.adc.full_scale},
          {"ways", c.adc.ways},
          {"way_offset", c.adc.way_offset},
          {"way_gain", c.adc.way_gain},
          {"comparator_noise_sigma", c.adc.comparator_noise_sigma}}},
        {"rake", {{"n_fingers", c.rake.n_fingers}}},
        {"viterbi", {{"memory", c.viterbi.memory}, {"traceback_depth", c.viterbi.traceback_depth}}},
        {"subband", c.subband.index()},
        {"preamble_order", c.preamble_order},
        {"preamble_reps", c.preamble_reps},
        {"n_payload_bits", c.n_payload_bits},
        {"ebn0_db", c.ebn0_db ? json(*c.ebn0_db) : json(nullptr)},
        {"master_seed", c.master_seed},
        {"n_trials", c.n_trials},
        {"sync",
         {{"threshold", c.sync.threshold},
          {"search_samples", c.sync.search_samples},
          {"max_lead_samples", c.sync.max_lead_samples},
          {"cir_guard_samples", c.sync.cir_guard_samples},
          {"cir_window", c.sync.cir_window},
          {"finger_floor", c.sync.finger_floor},
          {"cir_bits", c.sync.cir_bits},
          {"perfect_csi", c.sync.perfect_csi}}},
        {"notch_steering",
         {{"enabled", c.notch_steering.enabled},
          {"nfft", c.notch_steering.nfft},
          {"margin_db", c.notch_steering.margin_db},
          {"pole_radius", c.notch_steering.pole_radius}}},
        {"psd",
         {{"nfft", c.psd.nfft},
          {"threshold_db", c.psd.threshold_db},
          {"shape_offset_hz", c.psd.shape_offset_hz},
          {"shape_margin_db", c.psd.shape_margin_db}}},
    };
}

// ------------------------------------------------------------------------
// Strict reader

std::string join(const std::string &path, const std::string &key) { return path.empty() ? key : path + "." + key; }

double as_double(const json &j, const std::string &path) {
    if (!j.is_number()) throw ConfigError(path, "expected a number");
    return j.get<double>();
}

std::int64_t as_int(const json &j, const std::string &path) {
    if (j.is_number_integer()) return j.get<std::int64_t>();
    throw ConfigError(path, "expected an integer");
}

std::uint64_t as_u64(const json &j, const std::string &path) {
    if (j.is_number_unsigned()) return j.get<std::uint64_t>();
    if (j.is_number_integer()) throw ConfigError(path, "must be non-negative");
    throw ConfigError(path, "expected an integer");
}

std::size_t as_size(const json &j, const std::string &path) { return static_cast<std::size_t>(as_u64(j, path)); }

int as_small_int(const json &j, const std::string &path) {
    const auto v = as_int(j, path);
    if (v < -1000000 || v > 1000000) throw ConfigError(path, "out of range");
    return static_cast<int>(v);
}

bool as_bool(const json &j, const std::string &path) {
    if (!j.is_boolean()) throw ConfigError(path, "expected true or false");
    return j.get<bool>();
}

template <class E, std::size_t N>
E as_enum(const json &j, const std::string &path, const EnumName<E> (&table)[N]) {
    if (!j.is_string()) throw ConfigError(path, "expected a string");
    const auto s = j.get<std::string>();
    for (const auto &e : table)
        if (s == e.name) return e.value;
    throw ConfigError(path, "unknown value '" + s + "'");
}

std::vector<double> as_doubles(const json &j, const std::string &path) {
    if (!j.is_array()) throw ConfigError(path, "expected an array");
    std::vector<double> v;
    for (std::size_t i = 0; i < j.size(); ++i) v.push_back(as_double(j[i], path + "[" + std::to_string(i) + "]"));
    return v;
}

using Handler = std::function<void(const json &, const std::string &)>;

/// Applies `handlers` to the keys of object `j`; any other key is an error.
void read_object(const json &j, const std::string &path, const std::map<std::string, Handler> &handlers) {
    if (!j.is_object()) throw ConfigError(path.empty() ? "<root>" : path, "expected an object");
    for (const auto &[key, value] : j.items()) {
        const auto it = handlers.find(key);
        const std::string p = join(path, key);
        if (it == handlers.end()) throw ConfigError(p, "unknown key");
        it->second(value, p);
    }
}

Tap read_tap(const json &j, const std::string &path) {
    Tap t;
    double re = 0.0, im = 0.0;
    read_object(j, path,
                {{"delay_s", [&](const json &v, const std::string &p) { t.delay_s = as_double(v, p); }},
                 {"gain_re", [&](const json &v, const std::string &p) { re = as_double(v, p); }},
                 {"gain_im", [&](const json &v, const std::string &p) { im = as_double(v, p); }}});
    t.gain = Complex{re, im};
    return t;
}

void apply_json(SimConfig &c, const json &root) {
    auto num = [](double &dst) { return [&dst](const json &v, const std::string &p) { dst = as_double(v, p); }; };
    auto size = [](std::size_t &dst) { return [&dst](const json &v, const std::string &p) { dst = as_size(v, p); }; };
    auto integer = [](int &dst) { return [&dst](const json &v, const std::string &p) { dst = as_small_int(v, p); }; };
    auto flag = [](bool &dst) { return [&dst](const json &v, const std::string &p) { dst = as_bool(v, p); }; };

    std::optional<double> pri, bit_rate;
    read_object(
        root, "",
        {{"preset", [](const json &v, const std::string &p) {
              if (!v.is_string()) throw ConfigError(p, "expected a string");
          }},
         {"mode", [&](const json &v, const std::string &p) { c.mode = as_enum(v, p, kModes); }},
         {"rate_hz", num(c.rate_hz)},
         {"modulation",
          [&](const json &v, const std::string &p) {
              read_object(v, p,
                          {{"pri_s", [&](const json &x, const std::string &q) { pri = as_double(x, q); }},
                           {"bit_rate_bps", [&](const json &x, const std::string &q) { bit_rate = as_double(x, q); }}});
          }},
         {"pulse",
          [&](const json &v, const std::string &p) {
              read_object(v, p, {{"sigma_s", num(c.pulse.sigma_s)}, {"span_sigmas", num(c.pulse.span_sigmas)}});
          }},
         {"channel",
          [&](const json &v, const std::string &p) {
              auto &ch = c.channel;
              read_object(
                  v, p,
                  {{"decay_gamma_s", num(ch.decay_gamma_s)},
                   {"tap_spacing_s", num(ch.tap_spacing_s)},
                   {"span_gammas", num(ch.span_gammas)},
                   {"seed", [&](const json &x, const std::string &q) { ch.seed = as_u64(x, q); }},
                   {"profile",
                    [&](const json &x, const std::string &q) {
                        if (!x.is_array()) throw ConfigError(q, "expected an array");
                        ch.profile.clear();
                        for (std::size_t i = 0; i < x.size(); ++i)
                            ch.profile.push_back(read_tap(x[i], q + "[" + std::to_string(i) + "]"));
                    }},
                   {"fading", [&](const json &x, const std::string &q) { ch.fading = as_enum(x, q, kFadings); }},
                   {"normalization",
                    [&](const json &x, const std::string &q) { ch.normalization = as_enum(x, q, kNormalizations); }},
                   {"real_taps", flag(ch.real_taps)}});
          }},
         {"interferer",
          [&](const json &v, const std::string &p) {
              if (v.is_null()) {
                  c.interferer.reset();
                  return;
              }
              InterfererConfig ic = c.interferer.value_or(InterfererConfig{});
              read_object(v, p,
                          {{"offset_hz", num(ic.offset_hz)}, {"sir_db", num(ic.sir_db)}, {"phase_rad", num(ic.phase_rad)}});
              c.interferer = ic;
          }},
         {"frontend",
          [&](const json &v, const std::string &p) {
              auto &fe = c.frontend;
              read_object(v, p,
                          {{"cfo_hz", num(fe.cfo_hz)},
                           {"phase_rad", num(fe.phase_rad)},
                           {"agc_loading", num(fe.agc_loading)},
                           {"notch", [&](const json &x, const std::string &q) {
                                if (x.is_null()) {
                                    fe.notch.reset();
                                    return;
                                }
                                NotchSettings ns = fe.notch.value_or(NotchSettings{});
                                read_object(x, q, {{"f0_hz", num(ns.f0_hz)}, {"pole_radius", num(ns.pole_radius)}});
                                fe.notch = ns;
                            }}});
          }},
         {"adc",
          [&](const json &v, const std::string &p) {
              auto &a = c.adc;
              std::optional<int> ways;
              bool offsets = false, gains = false;
              read_object(v, p,
                          {{"bits", integer(a.bits)},
                           {"full_scale", num(a.full_scale)},
                           {"ways", [&](const json &x, const std::string &q) { ways = as_small_int(x, q); }},
                           {"way_offset",
                            [&](const json &x, const std::string &q) {
                                a.way_offset = as_doubles(x, q);
                                offsets = true;
                            }},
                           {"way_gain",
                            [&](const json &x, const std::string &q) {
                                a.way_gain = as_doubles(x, q);
                                gains = true;
                            }},
                           {"comparator_noise_sigma", num(a.comparator_noise_sigma)}});
              // Changing the way count alone resets the mismatch to zero.
              if (ways && *ways != a.ways) {
                  a.ways = *ways;
                  const auto n = static_cast<std::size_t>(std::max(*ways, 1));
                  if (!offsets) a.way_offset.assign(n, 0.0);
                  if (!gains) a.way_gain.assign(n, 1.0);
              }
          }},
         {"rake",
          [&](const json &v, const std::string &p) { read_object(v, p, {{"n_fingers", size(c.rake.n_fingers)}}); }},
         {"viterbi",
          [&](const json &v, const std::string &p) {
              read_object(v, p,
                          {{"memory", integer(c.viterbi.memory)},
                           {"traceback_depth", integer(c.viterbi.traceback_depth)}});
          }},
         {"subband",
          [&](const json &v, const std::string &p) {
              try {
                  c.subband = SubBand(as_small_int(v, p));
              } catch (const InvalidParameter &e) {
                  throw ConfigError(p, e.what());
              }
          }},
         {"preamble_order", integer(c.preamble_order)},
         {"preamble_reps", integer(c.preamble_reps)},
         {"n_payload_bits", size(c.n_payload_bits)},
         {"ebn0_db",
          [&](const json &v, const std::string &p) {
              if (v.is_null())
                  c.ebn0_db.reset();
              else
                  c.ebn0_db = as_double(v, p);
          }},
         {"master_seed", [&](const json &v, const std::string &p) { c.master_seed = as_u64(v, p); }},
         {"n_trials", size(c.n_trials)},
         {"sync",
          [&](const json &v, const std::string &p) {
              auto &s = c.sync;
              read_object(v, p,
                          {{"threshold", num(s.threshold)},
                           {"search_samples", size(s.search_samples)},
                           {"max_lead_samples", size(s.max_lead_samples)},
                           {"cir_guard_samples", size(s.cir_guard_samples)},
                           {"cir_window", size(s.cir_window)},
                           {"finger_floor", num(s.finger_floor)},
                           {"cir_bits", integer(s.cir_bits)},
                           {"perfect_csi", flag(s.perfect_csi)}});
          }},
         {"notch_steering",
          [&](const json &v, const std::string &p) {
              auto &n = c.notch_steering;
              read_object(v, p,
                          {{"enabled", flag(n.enabled)},
                           {"nfft", size(n.nfft)},
                           {"margin_db", num(n.margin_db)},
                           {"pole_radius", num(n.pole_radius)}});
          }},
         {"psd", [&](const json &v, const std::string &p) {
              auto &s = c.psd;
              read_object(v, p,
                          {{"nfft", size(s.nfft)},
                           {"threshold_db", num(s.threshold_db)},
                           {"shape_offset_hz", num(s.shape_offset_hz)},
                           {"shape_margin_db", num(s.shape_margin_db)}});
          }}});

    if (pri && bit_rate) {
        c.modulation.pri_s = *pri;
        c.modulation.bit_rate_bps = *bit_rate;
    } else if (pri) {
        c.modulation.pri_s = *pri;
        c.modulation.bit_rate_bps = 1.0 / *pri;
    } else if (bit_rate) {
        c.modulation.bit_rate_bps = *bit_rate;
        c.modulation.pri_s = 1.0 / *bit_rate;
    }
    c.modulation.mode = c.mode;
}

} // namespace

std::string config_to_json(const SimConfig &cfg) { return to_json_value(cfg).dump(2); }

SimConfig config_from_json(std::string_view text) {
    json root;
    try {
        root = json::parse(text);
    } catch (const json::parse_error &e) {
        throw ConfigError("<root>", std::string("invalid JSON: ") + e.what());
    }
    if (!root.is_object()) throw ConfigError("<root>", "expected an object");
    SimConfig cfg = preset_gen2();
    if (const auto it = root.find("preset"); it != root.end()) {
        if (!it->is_string()) throw ConfigError("preset", "expected a string");
        cfg = preset(it->get<std::string>());
    }
    apply_json(cfg, root);
    validate(cfg);
    return cfg;
}

SimConfig load_config(const std::filesystem::path &path) {
    std::ifstream f(path);
    if (!f) throw ConfigError("<file>", "cannot read " + path.string());
    std::stringstream ss;
    ss << f.rdbuf();
    return config_from_json(ss.str());
}

std::uint64_t config_hash(const SimConfig &cfg) {
    const std::string canon = to_json_value(cfg).dump();
    std::uint64_t h = 0xcbf29ce484222325ull;
    for (unsigned char ch : canon) {
        h ^= ch;
        h *= 0x100000001b3ull;
    }
    return h;
}

} // namespace uwb
