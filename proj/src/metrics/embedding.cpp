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

#include "anonlab/metrics/embedding.hpp"

#include <unsupported/Eigen/FFT>
#include <algorithm>
#include <cmath>
#include <complex>

#include "anonlab/error.hpp"
#include "anonlab/signal/framing.hpp"

namespace anonlab::metrics {
namespace {

double hz_to_mel(double hz) { return 2595.0 * std::log10(1.0 + hz / 700.0); }
double mel_to_hz(double mel) { return 700.0 * (std::pow(10.0, mel / 2595.0) - 1.0); }

// Triangular filters on the HTK mel scale spanning 0 .. Nyquist.
std::vector<std::vector<double>> mel_filterbank(std::size_t bands, std::size_t fft_size, int sample_rate) {
  const std::size_t bins = fft_size / 2 + 1;
  const double top = hz_to_mel(sample_rate / 2.0);
  std::vector<double> edges(bands + 2);
  for (std::size_t i = 0; i < edges.size(); ++i) {
    edges[i] = mel_to_hz(top * static_cast<double>(i) / static_cast<double>(bands + 1));
  }
  std::vector<std::vector<double>> bank(bands, std::vector<double>(bins, 0.0));
  for (std::size_t b = 0; b < bands; ++b) {
    const double lo = edges[b], mid = edges[b + 1], hi = edges[b + 2];
    for (std::size_t k = 0; k < bins; ++k) {
      const double hz = static_cast<double>(k) * sample_rate / static_cast<double>(fft_size);
      if (hz > lo && hz < hi) bank[b][k] = hz <= mid ? (hz - lo) / (mid - lo) : (hi - hz) / (hi - mid);
    }
  }
  return bank;
}

}  // namespace

Embedding reference_embed(const signal::Waveform& waveform, const EmbedderConfig& config) {
  if (waveform.sample_rate <= 0) throw Error(ErrorCode::UnsupportedFormat, "sample rate must be positive");
  const auto window_len = static_cast<std::size_t>(std::lround(config.window_seconds * waveform.sample_rate));
  const auto hop = static_cast<std::size_t>(std::lround(config.hop_seconds * waveform.sample_rate));
  const std::size_t n = waveform.samples.size();
  if (window_len < 2 || hop == 0 || config.fft_size < window_len) {
    throw Error(ErrorCode::InvalidConfig, "embedder window does not fit the FFT size");
  }
  const std::size_t frames = n >= window_len ? (n - window_len) / hop + 1 : 0;
  if (frames < 3) throw Error(ErrorCode::AudioTooShort, "need at least three analysis frames");

  const auto window = signal::make_window(signal::WindowKind::Hann, window_len);
  const auto bank = mel_filterbank(config.mel_bands, config.fft_size, waveform.sample_rate);
  const std::size_t bins = config.fft_size / 2 + 1;

  Eigen::FFT<double> fft;
  std::vector<double> buffer(config.fft_size);
  std::vector<std::complex<double>> spectrum;
  std::vector<double> sum(config.mel_bands, 0.0), sum_sq(config.mel_bands, 0.0);
  for (std::size_t f = 0; f < frames; ++f) {
    std::fill(buffer.begin(), buffer.end(), 0.0);
    for (std::size_t i = 0; i < window_len; ++i) buffer[i] = waveform.samples[f * hop + i] * window[i];
    fft.fwd(spectrum, buffer);
    for (std::size_t b = 0; b < config.mel_bands; ++b) {
      double energy = 0.0;
      for (std::size_t k = 0; k < bins; ++k) energy += bank[b][k] * std::norm(spectrum[k]);
      const double logmel = std::log(std::max(energy, 1e-10));
      sum[b] += logmel;
      sum_sq[b] += logmel * logmel;
    }
  }

  Embedding out;
  out.vector.resize(2 * config.mel_bands);
  const double count = static_cast<double>(frames);
  double mean_of_means = 0.0;
  for (std::size_t b = 0; b < config.mel_bands; ++b) {
    const double mean = sum[b] / count;
    out.vector[b] = mean;
    out.vector[config.mel_bands + b] = std::sqrt(std::max(0.0, sum_sq[b] / count - mean * mean));
    mean_of_means += mean;
  }
  mean_of_means /= static_cast<double>(config.mel_bands);
  for (std::size_t b = 0; b < config.mel_bands; ++b) out.vector[b] -= mean_of_means;
  return out;
}

}  // namespace anonlab::metrics
