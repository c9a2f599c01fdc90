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

#include <cstddef>
#include <span>
#include <vector>

namespace anonlab::stats {

struct FdrOutcome {
  std::vector<double> raw_p;
  std::vector<double> adjusted_p;  // BH step-up adjusted, capped at 1
  std::vector<bool> significant;
  std::size_t cutoff_rank = 0;     // largest k with p_(k) <= k alpha / m; 0 if none
  double alpha = 0.05;
};

/// Benjamini-Hochberg: every hypothesis with p <= p_(k) is significant, where
/// k is the largest rank with p_(k) <= (k / m) alpha. Outputs keep the input
/// order.
FdrOutcome bh_fdr(std::span<const double> p_values, double alpha = 0.05);

}  // namespace anonlab::stats
