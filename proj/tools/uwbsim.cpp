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

// uwbsim command-line driver: BER points and sweeps, sync statistics, the
// PSD mask check and the demo pulse export.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "uwb/harness.hpp"

namespace {

enum ExitCode { kOk = 0, kConfigError = 1, kRuntimeError = 2, kCheckFailed = 3 };

struct Common {
    std::string config;
    std::string preset;
    std::optional<std::uint64_t> seed;
    std::string out;
    std::optional<std::size_t> trials;
    std::optional<std::size_t> bits;
    std::optional<double> ebn0;
    unsigned workers = 1;
    bool quiet = false;
};

void add_common(CLI::App *cmd, Common &c) {
    cmd->add_option("--config", c.config, "JSON config file")->check(CLI::ExistingFile);
    cmd->add_option("--preset", c.preset, "Base preset when no config is given (gen1, gen2, isi_free)");
    cmd->add_option("--seed", c.seed, "Master seed");
    cmd->add_option("--out", c.out, "Output file (.json for a summary, anything else for CSV)");
    cmd->add_option("--trials", c.trials, "Number of Monte-Carlo trials");
    cmd->add_option("--bits", c.bits, "Payload bits per trial");
    cmd->add_option("--ebn0", c.ebn0, "Eb/N0 in dB");
    cmd->add_option("--workers", c.workers, "Worker threads")->check(CLI::Range(1u, 1024u));
    cmd->add_flag("--quiet", c.quiet, "Only write --out, print nothing");
}

uwb::SimConfig resolve(const Common &c) {
    uwb::SimConfig cfg = c.config.empty() ? uwb::preset(c.preset.empty() ? "gen2" : c.preset)
                                          : uwb::load_config(c.config);
    if (!c.config.empty() && !c.preset.empty())
        throw uwb::ConfigError("preset", "give either --config or --preset");
    if (c.seed) cfg.master_seed = *c.seed;
    if (c.trials) cfg.n_trials = *c.trials;
    if (c.bits) cfg.n_payload_bits = *c.bits;
    if (c.ebn0) cfg.ebn0_db = *c.ebn0;
    uwb::validate(cfg);
    return cfg;
}

bool wants_json(const std::string &path) {
    return path.size() >= 5 && path.compare(path.size() - 5, 5, ".json") == 0;
}

void write_file(const std::string &path, const std::string &text) {
    std::ofstream f(path);
    if (!f) throw std::runtime_error("cannot open " + path + " for writing");
    f << text;
    if (!f) throw std::runtime_error("write to " + path + " failed");
}

std::string summaries(const std::vector<uwb::MetricsRecord> &records) {
    std::string out = "[\n";
    for (std::size_t i = 0; i < records.size(); ++i) {
        out += uwb::to_json(records[i]);
        out += i + 1 < records.size() ? ",\n" : "\n";
    }
    return out + "]\n";
}

void emit(const Common &c, const std::vector<uwb::MetricsRecord> &records, bool single) {
    const std::string csv = uwb::to_csv(records);
    if (!c.out.empty()) {
        if (wants_json(c.out))
            write_file(c.out, single ? uwb::to_json(records.front()) + "\n" : summaries(records));
        else
            write_file(c.out, csv);
    }
    if (!c.quiet) std::cout << csv;
}

} // namespace

int main(int argc, char **argv) {
    CLI::App app{"Sample-level pulsed UWB transceiver simulator"};
    app.require_subcommand(1);

    Common common;
    auto *ber = app.add_subcommand("ber", "BER at one operating point");
    add_common(ber, common);

    auto *sweep = app.add_subcommand("sweep", "BER over one axis with paired seeds");
    add_common(sweep, common);
    std::string axis;
    std::vector<double> values;
    sweep->add_option("--axis", axis, "ebn0, sir, adc_bits or rake_fingers")
        ->required()
        ->check(CLI::IsMember({"ebn0", "sir", "adc_bits", "rake_fingers"}));
    sweep->add_option("--values", values, "Comma-separated axis values")->required()->delimiter(',');

    auto *sync = app.add_subcommand("sync", "Acquisition statistics");
    add_common(sync, common);

    auto *psd = app.add_subcommand("psd", "Transmit PSD, occupied bandwidth and mask ceiling");
    add_common(psd, common);
    bool check = false;
    psd->add_flag("--check", check, "Exit with status 3 if the spectral shape check fails");

    auto *demo = app.add_subcommand("demo", "Export one pulse on the sub-band carrier");
    add_common(demo, common);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        const int rc = app.exit(e);
        return rc == 0 ? kOk : kConfigError;
    }

    try {
        const uwb::SimConfig cfg = resolve(common);
        const uwb::RunOptions opts{common.workers};

        if (ber->parsed()) {
            emit(common, {uwb::run_ber_point(cfg, opts)}, true);
        } else if (sweep->parsed()) {
            emit(common, uwb::run_sweep(cfg, uwb::parse_sweep_axis(axis), values, opts), false);
        } else if (sync->parsed()) {
            const auto m = uwb::run_sync_stats(cfg, opts);
            const std::string text = uwb::to_json(m) + "\n";
            if (!common.out.empty()) write_file(common.out, text);
            if (!common.quiet) std::cout << text;
        } else if (psd->parsed()) {
            const auto rep = uwb::run_psd_check(cfg);
            if (!common.out.empty()) write_file(common.out, uwb::psd_to_csv(rep.psd));
            if (!common.quiet) {
                std::printf("occupied_bw_hz=%.6g\n", rep.occupied_bw_hz);
                std::printf("max_tx_power_dbm=%.4f\n", rep.max_power_dbm);
                std::printf("worst_out_of_band_db=%.2f\n", rep.worst_out_of_band_db);
                std::printf("shape_check=%s\n", rep.pass ? "pass" : "fail");
            }
            if (check && !rep.pass) return kCheckFailed;
        } else if (demo->parsed()) {
            const std::string out = common.out.empty() ? "demo_pulse.csv" : common.out;
            uwb::run_demo_pulse(cfg, out);
            if (!common.quiet) std::printf("wrote %s (carrier %.6g Hz)\n", out.c_str(), uwb::subband_center_hz(cfg.subband));
        }
    } catch (const uwb::ConfigError &e) {
        std::fprintf(stderr, "config error: %s\n", e.what());
        return kConfigError;
    } catch (const std::exception &e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kRuntimeError;
    }
    return kOk;
}
