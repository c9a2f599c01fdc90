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

#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <vector>

namespace anonlab::signal {

/// Mono PCM signal with amplitudes nominally in [-1, 1].
struct Waveform {
  std::vector<double> samples;
  int sample_rate = 16000;

  double duration_seconds() const {
    return sample_rate > 0 ? static_cast<double>(samples.size()) / sample_rate : 0.0;
  }
  bool operator==(const Waveform&) const = default;
};

/// Reads a RIFF/WAVE file holding 16-bit signed PCM, mono or stereo.
/// Samples are scaled by 1/32768 and stereo is averaged to mono.
Waveform load_audio(const std::filesystem::path& path);
Waveform decode_wav(std::span<const std::uint8_t> bytes);

/// Writes 16-bit mono PCM. Samples are clipped to [-1, 1] and quantized with
/// the same 32768 scale load_audio uses, saturating at +32767.
void save_audio(const Waveform& waveform, const std::filesystem::path& path);
std::vector<std::uint8_t> encode_wav(const Waveform& waveform);

}  // namespace anonlab::signal
