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

#include "anonlab/stats/fdr.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "anonlab/error.hpp"

namespace anonlab::stats {

FdrOutcome bh_fdr(std::span<const double> p_values, double alpha) {
  if (!(alpha > 0.0 && alpha < 1.0)) throw Error(ErrorCode::InvalidP, "FDR alpha must lie in (0, 1)");
  for (double p : p_values) {
    if (!(p >= 0.0 && p <= 1.0)) throw Error(ErrorCode::InvalidP, "p-values must lie in [0, 1]");
  }
  const std::size_t m = p_values.size();
  FdrOutcome out;
  out.alpha = alpha;
  out.raw_p.assign(p_values.begin(), p_values.end());
  out.adjusted_p.assign(m, 1.0);
  out.significant.assign(m, false);
  if (m == 0) return out;

  std::vector<std::size_t> order(m);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return p_values[a] < p_values[b]; });

  const double md = static_cast<double>(m);
  for (std::size_t rank = m; rank >= 1; --rank) {
    if (p_values[order[rank - 1]] <= static_cast<double>(rank) / md * alpha) {
      out.cutoff_rank = rank;
      break;
    }
  }
  if (out.cutoff_rank > 0) {
    const double threshold = p_values[order[out.cutoff_rank - 1]];
    for (std::size_t i = 0; i < m; ++i) out.significant[i] = p_values[i] <= threshold;
  }

  double running = 1.0;
  for (std::size_t rank = m; rank >= 1; --rank) {
    const std::size_t idx = order[rank - 1];
    running = std::min(running, md / static_cast<double>(rank) * p_values[idx]);
    out.adjusted_p[idx] = std::min(1.0, running);
  }
  return out;
}

}  // namespace anonlab::stats
