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
#include <string>
#include <vector>

#include "anonlab/signal/audio.hpp"

namespace anonlab::mcadams {

struct McAdamsConfig {
  double alpha = 0.8;
  std::size_t lpc_order = 20;
  std::size_t frame_length = 320;  // 20 ms at 16 kHz
  std::size_t hop = 160;           // 10 ms at 16 kHz
  double angle_clamp_epsilon = 1e-3;

  /// Throws InvalidConfig when an invariant is violated.
  void validate() const;
};

struct FrameResult {
  std::vector<double> samples;
  bool clipped = false;
  bool degenerate = false;
};

/// LPC analysis, pole warp and resynthesis of a single unwindowed frame.
/// Degenerate (near-silent) frames come back unchanged.
FrameResult anonymize_frame(std::span<const double> frame, const McAdamsConfig& config);

struct AnonymizeResult {
  signal::Waveform waveform;
  std::size_t frames = 0;
  std::size_t clipped_frames = 0;
  std::size_t degenerate_frames = 0;
  std::vector<std::string> warnings;
};

/// Frame-parallel anonymization (OpenMP when enabled). Output length equals
/// input length; stage errors are rethrown tagged with the frame index.
AnonymizeResult anonymize(const signal::Waveform& input, const McAdamsConfig& config);

/// Single-threaded reference with the same contract; kept for testing and
/// benchmarking the parallel path against.
AnonymizeResult anonymize_serial(const signal::Waveform& input, const McAdamsConfig& config);

}  // namespace anonlab::mcadams
