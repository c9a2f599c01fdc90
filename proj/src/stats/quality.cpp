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

#include "anonlab/stats/quality.hpp"

#include "anonlab/error.hpp"

namespace anonlab::stats {

double accuracy(std::size_t correct, std::size_t total) {
  if (total == 0) throw Error(ErrorCode::EmptyTrials, "accuracy over zero trials");
  if (correct > total) throw Error(ErrorCode::InvalidSample, "more correct answers than trials");
  return 100.0 * static_cast<double>(correct) / static_cast<double>(total);
}

double normalized_quality_score(std::span<const int> ratings) {
  if (ratings.empty()) throw Error(ErrorCode::EmptySample, "no ratings to normalize");
  long sum = 0;
  for (int r : ratings) {
    if (r < 1 || r > 5) throw Error(ErrorCode::OutOfRangeRating, "Likert rating must be in 1..5, got " + std::to_string(r));
    sum += r;
  }
  return 100.0 * static_cast<double>(sum) / (5.0 * static_cast<double>(ratings.size()));
}

std::vector<double> degradation_scores(const std::map<std::string, double>& original,
                                       const std::map<std::string, double>& anonymized) {
  if (original.size() != anonymized.size()) throw Error(ErrorCode::KeyMismatch, "unit sets differ in size");
  std::vector<double> out;
  out.reserve(original.size());
  for (const auto& [key, value] : original) {
    const auto it = anonymized.find(key);
    if (it == anonymized.end()) throw Error(ErrorCode::KeyMismatch, "no anonymized score for '" + key + "'");
    out.push_back(value - it->second);
  }
  return out;
}

}  // namespace anonlab::stats
