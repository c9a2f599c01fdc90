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

#include "anonlab/signal/framing.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "anonlab/error.hpp"

namespace anonlab::signal {
namespace {

constexpr double kEnvelopeFloor = 1e-6;

void check_framing(std::size_t frame_length, std::size_t hop) {
  if (frame_length < 2 || hop == 0 || hop > frame_length) {
    throw Error(ErrorCode::InvalidFraming,
                "need frame_length >= 2 and 0 < hop <= frame_length (got " +
                    std::to_string(frame_length) + ", " + std::to_string(hop) + ")");
  }
}

}  // namespace

std::vector<double> make_window(WindowKind kind, std::size_t length) {
  std::vector<double> w(length, 1.0);
  if (kind == WindowKind::Hann) {
    for (std::size_t n = 0; n < length; ++n) {
      w[n] = 0.5 - 0.5 * std::cos(2.0 * std::numbers::pi * static_cast<double>(n) / static_cast<double>(length));
    }
  }
  return w;
}

std::size_t frame_count(std::size_t num_samples, std::size_t frame_length, std::size_t hop) {
  check_framing(frame_length, hop);
  const std::size_t full = num_samples >= frame_length ? (num_samples - frame_length) / hop + 1 : 0;
  const std::size_t covered = full > 0 ? (full - 1) * hop + frame_length : 0;
  return full + (covered < num_samples ? 1 : 0);
}

FrameSequence frame_signal(const Waveform& waveform, std::size_t frame_length, std::size_t hop,
                           WindowKind window) {
  const std::size_t count = frame_count(waveform.samples.size(), frame_length, hop);
  FrameSequence seq;
  seq.frame_length = frame_length;
  seq.hop = hop;
  seq.window_kind = window;
  seq.sample_rate = waveform.sample_rate;
  seq.source_length = waveform.samples.size();
  seq.frames.reserve(count);
  const auto& x = waveform.samples;
  for (std::size_t f = 0; f < count; ++f) {
    const std::size_t offset = f * hop;
    std::vector<double> frame(frame_length, 0.0);
    const std::size_t take = std::min(frame_length, x.size() - offset);
    std::copy_n(x.begin() + static_cast<std::ptrdiff_t>(offset), take, frame.begin());
    seq.frames.push_back(std::move(frame));
  }
  return seq;
}

Waveform overlap_add(const FrameSequence& seq) {
  check_framing(seq.frame_length, seq.hop);
  if (seq.window_kind == WindowKind::Hann && 2 * seq.hop > seq.frame_length) {
    throw Error(ErrorCode::InvalidFraming, "hann overlap-add needs hop <= frame_length / 2");
  }
  if (seq.window_kind == WindowKind::Rectangular && seq.hop != seq.frame_length) {
    throw Error(ErrorCode::InvalidFraming, "rectangular overlap-add needs hop == frame_length");
  }
  for (const auto& frame : seq.frames) {
    if (frame.size() != seq.frame_length) {
      throw Error(ErrorCode::InvalidFraming, "frame length does not match the sequence");
    }
  }

  Waveform out;
  out.sample_rate = seq.sample_rate;
  if (seq.frames.empty()) return out;

  const std::size_t total = (seq.frames.size() - 1) * seq.hop + seq.frame_length;
  const auto window = make_window(seq.window_kind, seq.frame_length);
  std::vector<double> sum(total, 0.0);
  std::vector<double> envelope(total, 0.0);
  // Plain average, used where every covering window is zero (the first sample).
  std::vector<double> raw(total, 0.0);
  std::vector<double> cover(total, 0.0);
  for (std::size_t f = 0; f < seq.frames.size(); ++f) {
    const std::size_t offset = f * seq.hop;
    for (std::size_t n = 0; n < seq.frame_length; ++n) {
      sum[offset + n] += window[n] * seq.frames[f][n];
      envelope[offset + n] += window[n];
      raw[offset + n] += seq.frames[f][n];
      cover[offset + n] += 1.0;
    }
  }
  for (std::size_t i = 0; i < total; ++i) {
    sum[i] = envelope[i] > kEnvelopeFloor ? sum[i] / envelope[i] : raw[i] / cover[i];
  }
  if (seq.source_length > 0 && seq.source_length < total) sum.resize(seq.source_length);
  out.samples = std::move(sum);
  return out;
}

}  // namespace anonlab::signal
