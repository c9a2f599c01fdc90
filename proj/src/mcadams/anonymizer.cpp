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

#include "anonlab/mcadams/anonymizer.hpp"

#include <cmath>
#include <optional>

#include "anonlab/error.hpp"
#include "anonlab/mcadams/lpc.hpp"
#include "anonlab/mcadams/poles.hpp"
#include "anonlab/signal/framing.hpp"

namespace anonlab::mcadams {
namespace {

void check_input(const signal::Waveform& input) {
  if (input.samples.empty()) throw Error(ErrorCode::EmptyAudio, "cannot anonymize an empty waveform");
  for (double s : input.samples) {
    if (!std::isfinite(s)) throw Error(ErrorCode::NumericalFailure, "input has non-finite samples");
  }
}

std::vector<std::string> rate_warnings(const signal::Waveform& input) {
  if (input.sample_rate == 16000) return {};
  return {"sample rate is " + std::to_string(input.sample_rate) +
          " Hz; defaults are tuned for 16000 Hz"};
}

AnonymizeResult assemble(signal::FrameSequence seq, std::vector<FrameResult>& results,
                         std::vector<std::string> warnings) {
  AnonymizeResult out;
  out.frames = results.size();
  for (std::size_t f = 0; f < results.size(); ++f) {
    out.clipped_frames += results[f].clipped ? 1 : 0;
    out.degenerate_frames += results[f].degenerate ? 1 : 0;
    seq.frames[f] = std::move(results[f].samples);
  }
  out.waveform = signal::overlap_add(seq);
  out.warnings = std::move(warnings);
  return out;
}

Error tagged(std::size_t frame, const Error& e) {
  return Error(e.code(), "frame " + std::to_string(frame) + ": " + e.what());
}

}  // namespace

void McAdamsConfig::validate() const {
  if (!(alpha > 0.0) || !std::isfinite(alpha)) throw Error(ErrorCode::InvalidConfig, "alpha must be > 0");
  if (lpc_order < 2) throw Error(ErrorCode::InvalidConfig, "lpc_order must be >= 2");
  if (frame_length <= lpc_order) throw Error(ErrorCode::InvalidConfig, "frame_length must exceed lpc_order");
  if (hop == 0 || 2 * hop > frame_length) {
    throw Error(ErrorCode::InvalidConfig, "hop must be in (0, frame_length / 2] for hann overlap-add");
  }
  if (!(angle_clamp_epsilon > 0.0 && angle_clamp_epsilon < 0.1)) {
    throw Error(ErrorCode::InvalidConfig, "angle_clamp_epsilon must be in (0, 0.1)");
  }
}

FrameResult anonymize_frame(std::span<const double> frame, const McAdamsConfig& config) {
  const LpcModel model = lpc_analyze(frame, config.lpc_order);
  if (model.degenerate) {
    return {std::vector<double>(frame.begin(), frame.end()), false, true};
  }
  const PoleSet poles = find_poles(model.coefficients);
  const PoleSet warped = mcadams_transform(poles, config.alpha, config.angle_clamp_epsilon);
  // Apply the warp as a coefficient delta so the root round trip error cancels.
  const auto moved = poles_to_coefficients(warped);
  const auto fitted = poles_to_coefficients(poles);
  std::vector<double> coefficients(model.coefficients);
  for (std::size_t k = 0; k < coefficients.size(); ++k) coefficients[k] += moved[k] - fitted[k];
  auto synth = resynthesize_frame(coefficients, model.residual);
  return {std::move(synth.samples), synth.clipped, false};
}

AnonymizeResult anonymize_serial(const signal::Waveform& input, const McAdamsConfig& config) {
  config.validate();
  check_input(input);
  auto seq = signal::frame_signal(input, config.frame_length, config.hop, signal::WindowKind::Hann);
  std::vector<FrameResult> results(seq.frames.size());
  for (std::size_t f = 0; f < seq.frames.size(); ++f) {
    try {
      results[f] = anonymize_frame(seq.frames[f], config);
    } catch (const Error& e) {
      throw tagged(f, e);
    }
  }
  return assemble(std::move(seq), results, rate_warnings(input));
}

AnonymizeResult anonymize(const signal::Waveform& input, const McAdamsConfig& config) {
  config.validate();
  check_input(input);
  auto seq = signal::frame_signal(input, config.frame_length, config.hop, signal::WindowKind::Hann);
  const auto count = static_cast<std::ptrdiff_t>(seq.frames.size());
  std::vector<FrameResult> results(seq.frames.size());
  std::vector<std::optional<Error>> failures(seq.frames.size());

#pragma omp parallel for schedule(dynamic, 8)
  for (std::ptrdiff_t f = 0; f < count; ++f) {
    try {
      results[f] = anonymize_frame(seq.frames[f], config);
    } catch (const Error& e) {
      failures[f] = tagged(static_cast<std::size_t>(f), e);
    } catch (const std::exception& e) {
      failures[f] = Error(ErrorCode::NumericalFailure,
                          "frame " + std::to_string(f) + ": " + e.what());
    }
  }
  for (auto& failure : failures) {
    if (failure) throw *failure;
  }
  return assemble(std::move(seq), results, rate_warnings(input));
}

}  // namespace anonlab::mcadams
