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
#include <optional>
#include <string>
#include <vector>

#include "anonlab/protocol/scoring.hpp"
#include "anonlab/protocol/session.hpp"
#include "anonlab/protocol/study.hpp"

namespace anonlab::service {

/// Everything the report needs, whether it came from fixture CSVs or from a
/// response store.
struct StudyData {
  std::vector<std::string> groups;              // column order
  std::vector<std::string> listener_ids;        // row order
  std::vector<protocol::ListenerProfile> listeners;  // may be empty (no subgroup analyses)
  std::vector<protocol::AccuracyRow> accuracy;
  std::vector<protocol::QualityRow> quality;
  std::vector<protocol::SpeakerAccuracyRow> speakers;  // empty unless pairs carry speaker_gender

  const protocol::ListenerProfile* profile(const std::string& listener_id) const;
};

/// Reads fixture CSVs (see protocol/export.hpp for schemas). Group and listener
/// order follow first appearance in the accuracy file, then the quality file.
StudyData load_fixture_data(const std::optional<std::filesystem::path>& accuracy_csv,
                            const std::optional<std::filesystem::path>& quality_csv,
                            const std::optional<std::filesystem::path>& listeners_csv);

/// Scores sessions. Groups follow the study config; listeners follow session
/// creation order.
StudyData study_data_from_sessions(const protocol::StudyConfig& config,
                                   const std::vector<protocol::SessionState>& sessions);

}  // namespace anonlab::service
