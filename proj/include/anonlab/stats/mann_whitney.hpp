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

#include <span>
#include <vector>

#include "anonlab/stats/test_result.hpp"

namespace anonlab::stats {

enum class MannWhitneyMode {
  Exact,
  NormalApprox,
  /// Exact when both samples have at most kExactLimit values and there are no
  /// ties; tie-corrected normal approximation otherwise.
  Auto,
};

inline constexpr std::size_t kExactLimit = 9;

struct MannWhitneyResult : TestResult {
  double u_x = 0.0;  // R_X - n_X (n_X + 1) / 2
  double u_y = 0.0;
};

/// Midranks (1-based) of the pooled values, ties sharing the average rank.
std::vector<double> midranks(std::span<const double> values);

/// Two-tailed Mann-Whitney U test; statistic is min(U_X, U_Y). The normal
/// approximation applies a 0.5 continuity correction. Forced exact mode with
/// ties uses the permutation distribution of the midrank sum.
MannWhitneyResult mann_whitney_u(std::span<const double> x, std::span<const double> y,
                                 MannWhitneyMode mode = MannWhitneyMode::Auto);

}  // namespace anonlab::stats
