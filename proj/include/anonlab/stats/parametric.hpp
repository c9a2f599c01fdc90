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

#include "anonlab/stats/test_result.hpp"

namespace anonlab::stats {

/// t = mean(d) sqrt(n) / sd(d) on d = x - y, df = n - 1, two-tailed.
/// Zero-variance differences give a degenerate result: t = 0, p = 1 when the
/// mean difference is zero, otherwise t = +-inf and p = 0.
TestResult paired_t_test(std::span<const double> x, std::span<const double> y);

/// Unequal-variance (Welch) statistic with Welch-Satterthwaite df.
TestResult unpaired_t_test(std::span<const double> x, std::span<const double> y);

/// Pooled-variance Student t, df = n1 + n2 - 2.
TestResult pooled_t_test(std::span<const double> x, std::span<const double> y);

/// Pearson r with the two-tailed p of t = r sqrt(n - 2) / sqrt(1 - r^2).
TestResult pearson_correlation(std::span<const double> x, std::span<const double> y);

}  // namespace anonlab::stats
