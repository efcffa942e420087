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

#ifndef UWB_RNG_HPP
#define UWB_RNG_HPP

#include <cstdint>
#include <random>

#include "uwb/types.hpp"

namespace uwb {

/// Random engine used for every stochastic block. Blocks take it by reference
/// and never keep it, so a stream belongs to exactly one caller.
using Rng = std::mt19937_64;

/// SplitMix64 finalizer (Steele, Lea, Flood 2014). Bijective on 64 bits.
std::uint64_t splitmix64(std::uint64_t x) noexcept;

/// Seed of the independent stream `stream` under `master`:
///
///     splitmix64(master ^ splitmix64(stream + 0x9E3779B97F4A7C15))
///
/// Trial k of a Monte-Carlo run uses mix_seed(master_seed, k). Because the
/// mapping depends only on (master, k), results are identical for any worker
/// count or scheduling order.
std::uint64_t mix_seed(std::uint64_t master, std::uint64_t stream) noexcept;

inline Rng make_stream(std::uint64_t master, std::uint64_t stream) {
    return Rng(mix_seed(master, stream));
}

/// Circularly-symmetric complex Gaussian with E|z|^2 = variance.
Complex complex_gaussian(Rng &rng, double variance);

/// Real Gaussian with the given variance.
double real_gaussian(Rng &rng, double variance);

} // namespace uwb

#endif
