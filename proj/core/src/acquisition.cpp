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

#include "uwb/backend.hpp"

#include <algorithm>
#include <cmath>
#include <thread>

namespace uwb {

SyncCandidate merge(const SyncCandidate &a, const SyncCandidate &b) noexcept {
    if (a.offset < 0) return b;
    if (b.offset < 0) return a;
    if (a.metric != b.metric) return a.metric > b.metric ? a : b;
    return a.offset < b.offset ? a : b;
}

namespace {

void check_threshold(double threshold) {
    if (!(threshold > 0.0 && threshold < 1.0)) throw InvalidParameter("threshold must be in (0, 1)");
}

} // namespace

SyncCandidate acquire_range(const SampleBuffer &buf, const SampleBuffer &tmpl, double threshold,
                            std::size_t begin, std::size_t end) {
    check_threshold(threshold);
    const std::size_t tlen = tmpl.size();
    if (tlen == 0) throw InvalidParameter("empty template");
    if (tlen > buf.size()) throw InvalidParameter("template longer than buffer");
    end = std::min(end, buf.size() - tlen + 1);
    if (begin >= end) return {};
    const std::size_t count = end - begin;

    std::vector<std::size_t> idx;
    std::vector<double> pr, pi;
    double tmpl_energy = 0.0;
    for (std::size_t n = 0; n < tlen; ++n) {
        const Complex p = tmpl[n];
        if (p == Complex{}) continue;
        idx.push_back(n);
        pr.push_back(p.real());
        pi.push_back(-p.imag()); // conjugate
        tmpl_energy += std::norm(p);
    }
    if (tmpl_energy == 0.0) throw InvalidParameter("all-zero template");

    // Split the touched region into I, Q and power so the inner loop over
    // offsets runs on contiguous doubles.
    const std::size_t span = count - 1 + tlen;
    std::vector<double> rr(span), ri(span), pw(span);
    for (std::size_t n = 0; n < span; ++n) {
        const Complex r = buf[begin + n];
        rr[n] = r.real();
        ri[n] = r.imag();
        pw[n] = std::norm(r);
    }

    std::vector<double> acc_re(count, 0.0), acc_im(count, 0.0), acc_pw(count, 0.0);
    for (std::size_t i = 0; i < idx.size(); ++i) {
        const double a = pr[i], b = pi[i];
        const double *xr = rr.data() + idx[i];
        const double *xi = ri.data() + idx[i];
        const double *xp = pw.data() + idx[i];
        for (std::size_t t = 0; t < count; ++t) {
            acc_re[t] += xr[t] * a - xi[t] * b;
            acc_im[t] += xr[t] * b + xi[t] * a;
            acc_pw[t] += xp[t];
        }
    }

    SyncCandidate best;
    for (std::size_t t = 0; t < count; ++t) {
        const double window = acc_pw[t];
        double rho = 0.0;
        if (window > 0.0)
            rho = std::min(1.0, (acc_re[t] * acc_re[t] + acc_im[t] * acc_im[t]) / (tmpl_energy * window));
        if (rho >= threshold)
            best = merge(best, SyncCandidate{static_cast<std::int64_t>(begin + t), rho});
    }
    return best;
}

SyncResult acquire(const SampleBuffer &buf, const SampleBuffer &tmpl, double threshold,
                   std::size_t max_search, std::size_t shards) {
    check_threshold(threshold);
    if (tmpl.size() > buf.size()) throw InvalidParameter("template longer than buffer");
    if (tmpl.rate_hz != buf.rate_hz) throw InvalidParameter("template rate differs from buffer rate");
    const std::size_t hypotheses = std::min(max_search, buf.size() - tmpl.size()) + 1;
    shards = std::clamp<std::size_t>(shards, 1, hypotheses);

    std::vector<SyncCandidate> parts(shards);
    auto run = [&](std::size_t s) {
        const std::size_t b = hypotheses * s / shards;
        const std::size_t e = hypotheses * (s + 1) / shards;
        parts[s] = acquire_range(buf, tmpl, threshold, b, e);
    };
    if (shards == 1) {
        run(0);
    } else {
        std::vector<std::jthread> workers;
        workers.reserve(shards);
        for (std::size_t s = 0; s < shards; ++s) workers.emplace_back(run, s);
    }

    SyncCandidate best;
    for (const auto &p : parts) best = merge(best, p);

    SyncResult r;
    r.searched_samples = static_cast<std::int64_t>(hypotheses);
    r.detected = best.offset >= 0;
    if (r.detected) {
        r.offset_samples = best.offset;
        r.peak_metric = best.metric;
    }
    return r;
}

} // namespace uwb
