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

namespace anonlab::metrics {

struct Embedding {
  std::string source_id;
  std::vector<double> vector;

  std::size_t dim() const { return vector.size(); }
};

/// dot(a, b) / (|a| |b|), clamped to [-1, 1].
double cosine_similarity(std::span<const double> a, std::span<const double> b);
double cosine_similarity(const Embedding& a, const Embedding& b);

struct ScoreSet {
  std::vector<double> genuine;   // same-speaker trials
  std::vector<double> impostor;  // different-speaker trials
};

struct EerResult {
  double eer = 0.0;        // fraction
  double threshold = 0.0;  // score at the crossing
};

/// Threshold sweep over the sorted union of scores, with
/// FAR(t) = #{impostor >= t} / n_imp and FRR(t) = #{genuine < t} / n_gen.
/// The crossing is linearly interpolated between the two bracketing sweep
/// points when it does not land on one exactly.
EerResult compute_eer(const ScoreSet& scores);

struct LabeledScores {
  std::vector<double> scores;
  std::vector<int> labels;  // 1 = positive (pathological), 0 = negative
};

/// Area under the ROC curve from the rank-sum identity, ties credited 0.5.
double compute_auc(const LabeledScores& data);

}  // namespace anonlab::metrics
