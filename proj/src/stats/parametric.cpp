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

#include "anonlab/stats/parametric.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "anonlab/error.hpp"
#include "anonlab/stats/descriptive.hpp"
#include "anonlab/stats/distributions.hpp"

namespace anonlab::stats {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void check_finite(std::span<const double> x) {
  for (double v : x) {
    if (!std::isfinite(v)) throw Error(ErrorCode::InvalidSample, "sample contains non-finite values");
  }
}

// Shared handling of a zero standard error.
TestResult degenerate_t(Method method, double difference, std::vector<double> df) {
  TestResult r;
  r.method = method;
  r.df = std::move(df);
  r.degenerate = true;
  if (difference == 0.0) {
    r.statistic = 0.0;
    r.p_value = 1.0;
  } else {
    r.statistic = difference > 0.0 ? kInf : -kInf;
    r.p_value = 0.0;
  }
  return r;
}

}  // namespace

std::string_view to_string(Method method) {
  switch (method) {
    case Method::PairedT: return "paired_t";
    case Method::WelchT: return "welch_t";
    case Method::PooledT: return "pooled_t";
    case Method::RepeatedMeasuresAnova: return "repeated_measures_anova";
    case Method::OneWayAnova: return "one_way_anova";
    case Method::MannWhitneyExact: return "mann_whitney_exact";
    case Method::MannWhitneyNormal: return "mann_whitney_normal";
    case Method::ShapiroWilk: return "shapiro_wilk";
    case Method::Pearson: return "pearson";
  }
  return "unknown";
}

TestResult paired_t_test(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size() || x.size() < 2) {
    throw Error(ErrorCode::InvalidSample, "paired t-test needs two samples of equal length >= 2");
  }
  check_finite(x);
  check_finite(y);
  const std::size_t n = x.size();
  std::vector<double> d(n);
  for (std::size_t i = 0; i < n; ++i) d[i] = x[i] - y[i];
  const double dbar = mean(d);
  const double sd = standard_deviation(d);
  const double df = static_cast<double>(n - 1);
  if (!(sd > 0.0)) return degenerate_t(Method::PairedT, dbar, {df});

  TestResult r;
  r.method = Method::PairedT;
  r.statistic = dbar * std::sqrt(static_cast<double>(n)) / sd;
  r.df = {df};
  r.p_value = student_t_two_tailed(r.statistic, df);
  return r;
}

TestResult unpaired_t_test(std::span<const double> x, std::span<const double> y) {
  if (x.size() < 2 || y.size() < 2) throw Error(ErrorCode::InvalidSample, "unpaired t-test needs n >= 2 per group");
  check_finite(x);
  check_finite(y);
  const double n1 = static_cast<double>(x.size());
  const double n2 = static_cast<double>(y.size());
  const double v1 = variance(x) / n1;
  const double v2 = variance(y) / n2;
  const double diff = mean(x) - mean(y);
  if (!(v1 + v2 > 0.0)) return degenerate_t(Method::WelchT, diff, {n1 + n2 - 2.0});

  TestResult r;
  r.method = Method::WelchT;
  r.statistic = diff / std::sqrt(v1 + v2);
  const double df = (v1 + v2) * (v1 + v2) / (v1 * v1 / (n1 - 1.0) + v2 * v2 / (n2 - 1.0));
  r.df = {df};
  r.p_value = student_t_two_tailed(r.statistic, df);
  return r;
}

TestResult pooled_t_test(std::span<const double> x, std::span<const double> y) {
  if (x.size() < 2 || y.size() < 2) throw Error(ErrorCode::InvalidSample, "pooled t-test needs n >= 2 per group");
  check_finite(x);
  check_finite(y);
  const double n1 = static_cast<double>(x.size());
  const double n2 = static_cast<double>(y.size());
  const double df = n1 + n2 - 2.0;
  const double pooled = ((n1 - 1.0) * variance(x) + (n2 - 1.0) * variance(y)) / df;
  const double diff = mean(x) - mean(y);
  if (!(pooled > 0.0)) return degenerate_t(Method::PooledT, diff, {df});

  TestResult r;
  r.method = Method::PooledT;
  r.statistic = diff / std::sqrt(pooled * (1.0 / n1 + 1.0 / n2));
  r.df = {df};
  r.p_value = student_t_two_tailed(r.statistic, df);
  return r;
}

TestResult pearson_correlation(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size() || x.size() < 3) {
    throw Error(ErrorCode::InvalidSample, "correlation needs two samples of equal length >= 3");
  }
  check_finite(x);
  check_finite(y);
  const double mx = mean(x);
  const double my = mean(y);
  double sxx = 0.0, syy = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    syy += (y[i] - my) * (y[i] - my);
    sxy += (x[i] - mx) * (y[i] - my);
  }
  if (!(sxx > 0.0) || !(syy > 0.0)) throw Error(ErrorCode::ZeroVariance, "correlation of a constant sample");

  TestResult r;
  r.method = Method::Pearson;
  r.statistic = std::clamp(sxy / std::sqrt(sxx * syy), -1.0, 1.0);
  const double df = static_cast<double>(x.size() - 2);
  r.df = {df};
  const double one_minus = 1.0 - r.statistic * r.statistic;
  if (one_minus <= 0.0) {
    r.p_value = 0.0;
  } else {
    r.p_value = student_t_two_tailed(r.statistic * std::sqrt(df / one_minus), df);
  }
  return r;
}

}  // namespace anonlab::stats
