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

#include "anonlab/stats/shapiro_wilk.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

#include "anonlab/error.hpp"
#include "anonlab/stats/distributions.hpp"

namespace anonlab::stats {
namespace {

// Royston's polynomial approximations (AS R94).
constexpr double kC1[] = {0.0, 0.221157, -0.147981, -2.07119, 4.434685, -2.706056};
constexpr double kC2[] = {0.0, 0.042981, -0.293762, -1.752461, 5.682633, -3.582633};
constexpr double kC3[] = {0.544, -0.39978, 0.025054, -6.714e-4};
constexpr double kC4[] = {1.3822, -0.77857, 0.062767, -0.0020322};
constexpr double kC5[] = {-1.5861, -0.31082, -0.083751, 0.0038915};
constexpr double kC6[] = {-0.4803, -0.082676, 0.0030302};
constexpr double kG[] = {-2.273, 0.459};

template <std::size_t N>
double poly(const double (&c)[N], double x) {
  double result = 0.0;
  for (std::size_t i = N; i-- > 0;) result = result * x + c[i];
  return result;
}

// Half of the antisymmetric coefficient vector: a[i] pairs x_(n-1-i) - x_(i).
std::vector<double> coefficients(std::size_t n) {
  const std::size_t half = n / 2;
  std::vector<double> a(half);
  if (n == 3) {
    a[0] = std::numbers::sqrt2 / 2.0;
    return a;
  }
  const double an = static_cast<double>(n);
  std::vector<double> m(half);
  double summ2 = 0.0;
  for (std::size_t i = 0; i < half; ++i) {
    m[i] = normal_quantile((static_cast<double>(i + 1) - 0.375) / (an + 0.25));
    summ2 += m[i] * m[i];
  }
  summ2 *= 2.0;
  const double ssumm2 = std::sqrt(summ2);
  const double rsn = 1.0 / std::sqrt(an);
  const double a1 = poly(kC1, rsn) - m[0] / ssumm2;

  std::size_t first = 1;
  double fac;
  if (n > 5) {
    first = 2;
    const double a2 = -m[1] / ssumm2 + poly(kC2, rsn);
    fac = std::sqrt((summ2 - 2.0 * m[0] * m[0] - 2.0 * m[1] * m[1]) / (1.0 - 2.0 * a1 * a1 - 2.0 * a2 * a2));
    a[1] = a2;
  } else {
    fac = std::sqrt((summ2 - 2.0 * m[0] * m[0]) / (1.0 - 2.0 * a1 * a1));
  }
  a[0] = a1;
  for (std::size_t i = first; i < half; ++i) a[i] = -m[i] / fac;
  return a;
}

}  // namespace

TestResult shapiro_wilk(std::span<const double> sample) {
  const std::size_t n = sample.size();
  if (n < 3) throw Error(ErrorCode::SampleTooSmall, "Shapiro-Wilk needs at least 3 observations");
  if (n > 5000) throw Error(ErrorCode::SampleTooSmall, "Shapiro-Wilk approximation is valid up to n = 5000");
  std::vector<double> x(sample.begin(), sample.end());
  for (double v : x) {
    if (!std::isfinite(v)) throw Error(ErrorCode::InvalidSample, "sample contains non-finite values");
  }
  std::sort(x.begin(), x.end());
  if (x.back() - x.front() <= 1e-19 * std::max(1.0, std::abs(x.back()))) {
    throw Error(ErrorCode::ConstantSample, "Shapiro-Wilk W is undefined for a constant sample");
  }

  const auto a = coefficients(n);
  double mean = 0.0;
  for (double v : x) mean += v;
  mean /= static_cast<double>(n);
  double ss = 0.0;
  for (double v : x) ss += (v - mean) * (v - mean);
  double num = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) num += a[i] * (x[n - 1 - i] - x[i]);
  const double w = std::min(1.0, num * num / ss);

  TestResult r;
  r.method = Method::ShapiroWilk;
  r.statistic = w;
  r.df = {};

  const double an = static_cast<double>(n);
  if (n == 3) {
    const double pi6 = 6.0 / std::numbers::pi;
    const double stqr = std::numbers::pi / 3.0;
    r.p_value = std::clamp(pi6 * (std::asin(std::sqrt(w)) - stqr), 0.0, 1.0);
    return r;
  }
  const double w1 = std::log1p(-w);
  if (!std::isfinite(w1)) {
    r.p_value = 1.0;  // W == 1
    return r;
  }
  double y = w1;
  double m, s;
  if (n <= 11) {
    const double gamma = poly(kG, an);
    if (y >= gamma) {
      r.p_value = 1e-99;
      return r;
    }
    y = -std::log(gamma - y);
    m = poly(kC3, an);
    s = std::exp(poly(kC4, an));
  } else {
    const double xx = std::log(an);
    m = poly(kC5, xx);
    s = std::exp(poly(kC6, xx));
  }
  r.p_value = normal_sf((y - m) / s);
  return r;
}

}  // namespace anonlab::stats
