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

#ifndef UWB_DETAIL_FFT_HPP
#define UWB_DETAIL_FFT_HPP

#include <span>

#include "uwb/types.hpp"

namespace uwb::detail {

/// In-place forward DFT, X[k] = sum_n x[n] exp(-j 2 pi k n / N). Plans are
/// cached per length; safe to call from several threads.
void fft_forward(std::span<Complex> data);

} // namespace uwb::detail

#endif
