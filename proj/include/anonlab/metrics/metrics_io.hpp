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

#include <filesystem>
#include <string>
#include <utility>
#include <vector>

#include "anonlab/metrics/verification.hpp"

namespace anonlab::metrics {

/// `utterance_id, v0, v1, ...` with a header row.
std::vector<Embedding> read_embeddings(const std::filesystem::path& path);
void write_embeddings(const std::vector<Embedding>& embeddings, const std::filesystem::path& path);

/// `trial_id, kind, score` where kind is genuine or impostor.
ScoreSet read_scores(const std::filesystem::path& path);

/// `utterance_id, score, label` with label 0 or 1.
LabeledScores read_labeled_scores(const std::filesystem::path& path);

struct Trial {
  std::string trial_id;
  std::string enroll_id;
  std::string verify_id;
  bool genuine = false;
};

/// `trial_id, enroll_id, verify_id, kind`.
std::vector<Trial> read_trials(const std::filesystem::path& path);

/// Cosine-scores every trial; unknown utterance ids raise KeyMismatch.
ScoreSet score_trials(const std::vector<Embedding>& embeddings, const std::vector<Trial>& trials);

/// Per-group automatic metric values: `group, value`.
std::vector<std::pair<std::string, double>> read_group_metric(const std::filesystem::path& path);

}  // namespace anonlab::metrics
