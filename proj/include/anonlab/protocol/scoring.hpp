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

#include <string>
#include <vector>

#include "anonlab/protocol/session.hpp"
#include "anonlab/protocol/study.hpp"

namespace anonlab::protocol {

/// One accuracy cell: a listener, a group and a condition.
struct AccuracyRow {
  std::string listener_id;
  std::string group;
  Condition condition = Condition::ZeroShot;
  double accuracy_percent = 0.0;
  std::size_t correct = 0;
  std::size_t total = 0;
};

/// One quality cell: a listener, a group and a variant.
struct QualityRow {
  std::string listener_id;
  std::string group;
  bool original = true;
  double quality_percent = 0.0;
  std::size_t ratings = 0;
};

/// Correct iff the chosen slot holds the original. Rows come out ordered by
/// listener (first appearance), then group (config order), then condition.
/// Responses without a matching trial throw OrphanResponse.
std::vector<AccuracyRow> score_discrimination(const std::vector<ResponseRecord>& responses,
                                              const std::vector<TrialPair>& truths,
                                              const std::vector<std::string>& groups);

/// Normalized Likert score per (listener, group, variant); OrphanResponse when a
/// rating has no matching item.
std::vector<QualityRow> score_quality(const std::vector<ResponseRecord>& responses,
                                      const std::vector<std::pair<std::string, RatingItem>>& items,
                                      const std::vector<std::string>& groups);

struct SessionScores {
  std::vector<AccuracyRow> accuracy;
  std::vector<QualityRow> quality;
};

/// Scores every response held by the sessions. Partial sessions contribute
/// the cells they have answers for.
SessionScores score_sessions(const StudyConfig& config, const std::vector<SessionState>& sessions);

/// Discrimination accuracy per speaker (stimulus pair) averaged over all
/// listeners, for studies that tag pairs with speaker_gender. Untagged pairs
/// are skipped.
struct SpeakerAccuracyRow {
  std::size_t pair_index = 0;
  std::string group;
  std::string speaker_gender;
  Condition condition = Condition::ZeroShot;
  double accuracy_percent = 0.0;
  std::size_t total = 0;
};
std::vector<SpeakerAccuracyRow> score_by_speaker(const StudyConfig& config, const std::vector<SessionState>& sessions);

}  // namespace anonlab::protocol
