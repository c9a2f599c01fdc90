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

#include "anonlab/mcadams/lpc.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "anonlab/error.hpp"

namespace anonlab::mcadams {
namespace {

// Relative white-noise correction added to r[0]; keeps Levinson well posed
// for near-sinusoidal frames.
constexpr double kNoiseFloor = 1e-9;
constexpr double kUnstableEnergyRatio = 1e6;

}  // namespace

std::vector<double> inverse_filter(std::span<const double> a, std::span<const double> x) {
  std::vector<double> e(x.size());
  for (std::size_t n = 0; n < x.size(); ++n) {
    double pred = 0.0;
    const std::size_t kmax = std::min(a.size(), n);
    for (std::size_t k = 1; k <= kmax; ++k) pred += a[k - 1] * x[n - k];
    e[n] = x[n] - pred;
  }
  return e;
}

LpcModel lpc_analyze(std::span<const double> frame, std::size_t order, signal::WindowKind analysis_window) {
  if (order < 2 || frame.size() <= order) {
    throw Error(ErrorCode::InvalidConfig, "LPC needs order >= 2 and frame length > order");
  }
  const std::size_t n = frame.size();

  LpcModel model;
  const double energy = std::inner_product(frame.begin(), frame.end(), frame.begin(), 0.0) / n;
  if (!std::isfinite(energy)) throw Error(ErrorCode::NumericalFailure, "non-finite frame samples");
  if (energy < kDegenerateEnergy) {
    model.coefficients.assign(order, 0.0);
    model.residual.assign(n, 0.0);
    model.degenerate = true;
    return model;
  }

  const auto window = signal::make_window(analysis_window, n);
  std::vector<double> xw(n);
  for (std::size_t i = 0; i < n; ++i) xw[i] = frame[i] * window[i];

  std::vector<double> r(order + 1, 0.0);
  for (std::size_t lag = 0; lag <= order; ++lag) {
    double acc = 0.0;
    for (std::size_t i = lag; i < n; ++i) acc += xw[i] * xw[i - lag];
    r[lag] = acc;
  }
  if (r[0] <= 0.0) {
    model.coefficients.assign(order, 0.0);
    model.residual.assign(frame.begin(), frame.end());
    model.degenerate = true;
    return model;
  }
  r[0] *= 1.0 + kNoiseFloor;

  // c holds A(z) = 1 + sum c_k z^-k during the recursion.
  std::vector<double> c(order + 1, 0.0), prev(order + 1, 0.0);
  c[0] = 1.0;
  double err = r[0];
  for (std::size_t i = 1; i <= order; ++i) {
    double acc = r[i];
    for (std::size_t j = 1; j < i; ++j) acc += c[j] * r[i - j];
    const double k = -acc / err;
    prev = c;
    for (std::size_t j = 1; j < i; ++j) c[j] = prev[j] + k * prev[i - j];
    c[i] = k;
    err *= 1.0 - k * k;
    if (!std::isfinite(err) || err <= 0.0) {
      throw Error(ErrorCode::NumericalFailure, "Levinson recursion lost positivity");
    }
  }

  model.coefficients.resize(order);
  for (std::size_t k = 1; k <= order; ++k) model.coefficients[k - 1] = -c[k];
  model.residual = inverse_filter(model.coefficients, frame);
  const double res_energy =
      std::inner_product(model.residual.begin(), model.residual.end(), model.residual.begin(), 0.0);
  model.gain = std::sqrt(res_energy / n);
  return model;
}

SynthesisResult resynthesize_frame(std::span<const double> a, std::span<const double> residual) {
  SynthesisResult out;
  out.samples.resize(residual.size());
  double out_energy = 0.0;
  double res_energy = 0.0;
  for (std::size_t n = 0; n < residual.size(); ++n) {
    if (!std::isfinite(residual[n])) throw Error(ErrorCode::NumericalFailure, "non-finite residual");
    double acc = residual[n];
    const std::size_t kmax = std::min(a.size(), n);
    for (std::size_t k = 1; k <= kmax; ++k) acc += a[k - 1] * out.samples[n - k];
    out.samples[n] = acc;
    out_energy += acc * acc;
    res_energy += residual[n] * residual[n];
  }
  if (!std::isfinite(out_energy) || out_energy > kUnstableEnergyRatio * res_energy) {
    throw Error(ErrorCode::UnstableFilter, "synthesis filter output diverged");
  }
  for (double& s : out.samples) {
    if (std::abs(s) > kSynthesisClip) {
      s = std::clamp(s, -kSynthesisClip, kSynthesisClip);
      out.clipped = true;
    }
  }
  return out;
}

}  // namespace anonlab::mcadams
