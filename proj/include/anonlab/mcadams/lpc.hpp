// Copyright 2026 The anonlab Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "anonlab/signal/framing.hpp"

namespace anonlab::mcadams {

/// All-pole model of one frame. Sign convention: the prediction filter is
/// A(z) = 1 - sum_k a_k z^-k, so x[n] = sum_k a_k x[n-k] + e[n].
struct LpcModel {
  std::vector<double> coefficients;  // a_1 .. a_p
  std::vector<double> residual;      // e[n], one per frame sample
  double gain = 0.0;                 // RMS of the residual
  bool degenerate = false;           // near-silent frame; coefficients and residual are zero

  std::size_t order() const { return coefficients.size(); }
};

/// Mean-square frame energy below which a frame is treated as silence.
inline constexpr double kDegenerateEnergy = 1e-12;

/// Autocorrelation-method LPC (Levinson-Durbin). The autocorrelation is taken
/// over the frame multiplied by `analysis_window`; the residual is the
/// unwindowed frame inverse-filtered through A(z) from zero state.
LpcModel lpc_analyze(std::span<const double> frame, std::size_t order,
                     signal::WindowKind analysis_window = signal::WindowKind::Hann);

/// e[n] = x[n] - sum_k a_k x[n-k], zero initial state.
std::vector<double> inverse_filter(std::span<const double> coefficients, std::span<const double> x);

struct SynthesisResult {
  std::vector<double> samples;
  bool clipped = false;
};

/// Output samples are clipped to +-kSynthesisClip.
inline constexpr double kSynthesisClip = 4.0;

/// All-pole synthesis y[n] = sum_k a_k y[n-k] + e[n] from zero state. Throws
/// UnstableFilter when the output energy exceeds 1e6 times the residual energy.
SynthesisResult resynthesize_frame(std::span<const double> coefficients, std::span<const double> residual);

}  // namespace anonlab::mcadams
