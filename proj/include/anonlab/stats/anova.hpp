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
#include <string>
#include <vector>

#include "anonlab/stats/test_result.hpp"

namespace anonlab::stats {

/// Complete subjects x conditions table (listeners x groups).
struct RepeatedMeasuresTable {
  std::vector<std::string> subject_ids;
  std::vector<std::string> condition_ids;
  std::vector<std::vector<double>> values;  // values[subject][condition]

  /// Throws IncompleteTable when the shape does not match the ids, a cell is
  /// non-finite, or there are fewer than two subjects or conditions.
  void validate() const;
  std::vector<double> condition_column(std::size_t condition) const;
};

struct AnovaDecomposition {
  double ss_total = 0.0;
  double ss_subjects = 0.0;
  double ss_conditions = 0.0;
  double ss_error = 0.0;
};

AnovaDecomposition decompose(const RepeatedMeasuresTable& table);

/// One-way within-subjects ANOVA, F = MS_conditions / MS_error with
/// df = (c - 1, (c - 1)(s - 1)). No sphericity correction.
TestResult repeated_measures_anova(const RepeatedMeasuresTable& table);

/// Between-groups ANOVA, df = (k - 1, N - k).
TestResult one_way_anova(const std::vector<std::vector<double>>& groups);

}  // namespace anonlab::stats
