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
#include <map>
#include <span>
#include <string>
#include <vector>

namespace anonlab::stats {

/// 100 * correct / total.
double accuracy(std::size_t correct, std::size_t total);

/// 100 * sum(ratings) / (5 n) for Likert ratings in 1..5.
double normalized_quality_score(std::span<const int> ratings);

/// original - anonymized per key, in key order. Both maps must carry the same
/// keys (KeyMismatch otherwise).
std::vector<double> degradation_scores(const std::map<std::string, double>& original,
                                       const std::map<std::string, double>& anonymized);

}  // namespace anonlab::stats
