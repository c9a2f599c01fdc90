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

#include "anonlab/stats/mann_whitney.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "anonlab/error.hpp"
#include "anonlab/stats/distributions.hpp"

namespace anonlab::stats {
namespace {

// Two-sided permutation p of the X rank sum. Ranks are doubled so midranks
// become integers; dp[k][s] counts k-subsets whose doubled rank sum is s.
double exact_p(std::span<const double> ranks, std::size_t n_x, double rank_sum_x) {
  std::vector<long> doubled(ranks.size());
  long max_sum = 0;
  for (std::size_t i = 0; i < ranks.size(); ++i) {
    doubled[i] = std::lround(2.0 * ranks[i]);
    max_sum += doubled[i];
  }
  const auto width = static_cast<std::size_t>(max_sum + 1);
  std::vector<std::vector<double>> dp(n_x + 1, std::vector<double>(width, 0.0));
  dp[0][0] = 1.0;
  for (std::size_t i = 0; i < doubled.size(); ++i) {
    const auto r = static_cast<std::size_t>(doubled[i]);
    for (std::size_t k = std::min(n_x, i + 1); k >= 1; --k) {
      auto& to = dp[k];
      const auto& from = dp[k - 1];
      for (std::size_t s = width - 1; s >= r; --s) {
        to[s] += from[s - r];
        if (s == r) break;
      }
    }
  }
  const auto observed = static_cast<std::size_t>(std::lround(2.0 * rank_sum_x));
  const auto& counts = dp[n_x];
  const double total = std::accumulate(counts.begin(), counts.end(), 0.0);
  double lower = 0.0, upper = 0.0;
  for (std::size_t s = 0; s < width; ++s) {
    if (s <= observed) lower += counts[s];
    if (s >= observed) upper += counts[s];
  }
  return std::min(1.0, 2.0 * std::min(lower, upper) / total);
}

}  // namespace

std::vector<double> midranks(std::span<const double> values) {
  const std::size_t n = values.size();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });
  std::vector<double> ranks(n);
  for (std::size_t i = 0; i < n;) {
    std::size_t j = i;
    while (j < n && values[order[j]] == values[order[i]]) ++j;
    const double rank = 0.5 * static_cast<double>(i + 1 + j);
    for (std::size_t k = i; k < j; ++k) ranks[order[k]] = rank;
    i = j;
  }
  return ranks;
}

MannWhitneyResult mann_whitney_u(std::span<const double> x, std::span<const double> y, MannWhitneyMode mode) {
  if (x.empty() || y.empty()) throw Error(ErrorCode::EmptySample, "Mann-Whitney needs two non-empty samples");
  std::vector<double> pooled(x.begin(), x.end());
  pooled.insert(pooled.end(), y.begin(), y.end());
  for (double v : pooled) {
    if (!std::isfinite(v)) throw Error(ErrorCode::InvalidSample, "sample contains non-finite values");
  }
  const auto ranks = midranks(pooled);
  const double nx = static_cast<double>(x.size());
  const double ny = static_cast<double>(y.size());
  const double n = nx + ny;
  const double rank_sum_x = std::accumulate(ranks.begin(), ranks.begin() + static_cast<std::ptrdiff_t>(x.size()), 0.0);
  const double rank_sum_y = std::accumulate(ranks.begin() + static_cast<std::ptrdiff_t>(x.size()), ranks.end(), 0.0);

  MannWhitneyResult r;
  r.u_x = rank_sum_x - nx * (nx + 1.0) / 2.0;
  r.u_y = rank_sum_y - ny * (ny + 1.0) / 2.0;
  r.statistic = std::min(r.u_x, r.u_y);

  // Tie correction term sum(t^3 - t) over tie groups.
  auto sorted = pooled;
  std::sort(sorted.begin(), sorted.end());
  double tie_term = 0.0;
  for (std::size_t i = 0; i < sorted.size();) {
    std::size_t j = i;
    while (j < sorted.size() && sorted[j] == sorted[i]) ++j;
    const double t = static_cast<double>(j - i);
    tie_term += t * t * t - t;
    i = j;
  }
  const bool has_ties = tie_term > 0.0;

  bool exact = mode == MannWhitneyMode::Exact;
  if (mode == MannWhitneyMode::Auto) exact = !has_ties && x.size() <= kExactLimit && y.size() <= kExactLimit;

  if (exact) {
    r.method = Method::MannWhitneyExact;
    r.p_value = exact_p(ranks, x.size(), rank_sum_x);
    return r;
  }

  r.method = Method::MannWhitneyNormal;
  const double mu = nx * ny / 2.0;
  const double var = nx * ny / 12.0 * ((n + 1.0) - tie_term / (n * (n - 1.0)));
  if (!(var > 0.0)) {
    r.p_value = 1.0;
    r.degenerate = true;
    return r;
  }
  const double z = (std::max(r.u_x, r.u_y) - mu - 0.5) / std::sqrt(var);
  r.p_value = std::min(1.0, 2.0 * normal_sf(z));
  return r;
}

}  // namespace anonlab::stats
