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

#include "anonlab/metrics/verification.hpp"
#include "anonlab/signal/audio.hpp"

namespace anonlab::metrics {

struct EmbedderConfig {
  double window_seconds = 0.025;
  double hop_seconds = 0.010;
  std::size_t fft_size = 512;
  std::size_t mel_bands = 40;
};

/// Deterministic stand-in speaker embedding: per-band mean and standard
/// deviation of a log-mel spectrogram (2 * mel_bands values). The mean half
/// is centred on its average so overall loudness does not dominate cosine
/// scores. Throws AudioTooShort below three analysis frames.
Embedding reference_embed(const signal::Waveform& waveform, const EmbedderConfig& config = {});

}  // namespace anonlab::metrics
