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

#include "anonlab/signal/audio.hpp"

namespace anonlab::signal {

enum class WindowKind { Rectangular, Hann };

struct FrameSequence {
  std::vector<std::vector<double>> frames;
  std::size_t frame_length = 0;
  std::size_t hop = 0;
  WindowKind window_kind = WindowKind::Hann;
  int sample_rate = 16000;
  /// Length of the waveform the frames were cut from; overlap_add trims to it.
  std::size_t source_length = 0;
};

/// Periodic window of the given length (the Hann variant sums to a constant
/// at 50% overlap).
std::vector<double> make_window(WindowKind kind, std::size_t length);

/// Number of frames frame_signal produces: every full frame, plus one
/// zero-padded frame when a tail is left uncovered.
std::size_t frame_count(std::size_t num_samples, std::size_t frame_length, std::size_t hop);

/// Cuts unwindowed frames at offsets 0, hop, 2*hop, ... The window kind is
/// recorded for the synthesis side.
FrameSequence frame_signal(const Waveform& waveform, std::size_t frame_length, std::size_t hop,
                           WindowKind window = WindowKind::Hann);

/// Applies the synthesis window to each frame, sums at the frame offsets and
/// divides out the summed window envelope wherever it exceeds 1e-6.
Waveform overlap_add(const FrameSequence& frames);

}  // namespace anonlab::signal
