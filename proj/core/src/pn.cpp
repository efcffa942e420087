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

#include "uwb/signal.hpp"

#include <string>

namespace uwb {

namespace {

// Maximal-length feedback taps, as tabulated in Xilinx XAPP052.
const std::vector<int> &taps_for(int order) {
    static const std::vector<std::vector<int>> table = {
        {},                 {},          {2, 1},       {3, 2},         {4, 3},     {5, 3},
        {6, 5},             {7, 6},      {8, 6, 5, 4}, {9, 5},         {10, 7},    {11, 9},
        {12, 6, 4, 1},      {13, 4, 3, 1}, {14, 5, 3, 1}, {15, 14},    {16, 15, 13, 4},
    };
    return table[static_cast<std::size_t>(order)];
}

} // namespace

std::vector<int> pn_feedback_taps(int order) {
    if (order < 2 || order > 16) throw InvalidParameter("PN order must be in [2, 16]");
    return taps_for(order);
}

Chips generate_pn_sequence(int order, std::uint32_t state) {
    const auto &taps = pn_feedback_taps(order);
    const std::uint32_t mask = (1u << order) - 1u;
    std::uint32_t reg = state & mask;
    if (reg == 0) throw InvalidParameter("PN register state must be non-zero");

    const std::size_t length = (std::size_t{1} << order) - 1;
    Chips out(length);
    for (std::size_t i = 0; i < length; ++i) {
        const std::uint32_t bit = reg & 1u;
        out[i] = bit ? std::int8_t{-1} : std::int8_t{1};
        // Recurrence of x^order + sum x^t + 1: s[k+order] = s[k] ^ sum s[k+t].
        std::uint32_t fb = bit;
        for (int t : taps)
            if (t != order) fb ^= (reg >> t) & 1u;
        reg = (reg >> 1) | (fb << (order - 1));
    }
    return out;
}

} // namespace uwb
