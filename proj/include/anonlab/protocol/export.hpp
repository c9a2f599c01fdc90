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
#include <vector>

#include "anonlab/protocol/scoring.hpp"
#include "anonlab/protocol/session.hpp"
#include "anonlab/protocol/study.hpp"

namespace anonlab::protocol {

// CSV schemas:
//   accuracy   listener,group,condition,accuracy_percent      (condition zero|few)
//   quality    listener,group,variant,quality_percent         (variant orig|anon)
//   listeners  listener,native_language,german_proficiency,expertise,
//              clinical_years,speech_processing_years,engineering_years
//   responses  session_id,listener,phase,trial_index,chosen_slot,rating,
//              play_count_a,play_count_b,timestamp_ms
// Numbers are written in shortest round-trip form. Fields may not contain
// commas or newlines (IoFailure).

void write_accuracy_csv(const std::filesystem::path& path, const std::vector<AccuracyRow>& rows);
std::vector<AccuracyRow> read_accuracy_csv(const std::filesystem::path& path);

void write_quality_csv(const std::filesystem::path& path, const std::vector<QualityRow>& rows);
std::vector<QualityRow> read_quality_csv(const std::filesystem::path& path);

void write_listeners_csv(const std::filesystem::path& path, const std::vector<ListenerProfile>& listeners);
std::vector<ListenerProfile> read_listeners_csv(const std::filesystem::path& path);

void write_responses_csv(const std::filesystem::path& path, const std::vector<ResponseRecord>& records);
std::vector<ResponseRecord> read_responses_csv(const std::filesystem::path& path);

struct ExportPaths {
  std::filesystem::path accuracy;
  std::filesystem::path quality;
  std::filesystem::path listeners;
  std::filesystem::path responses;
};

/// Writes accuracy.csv, quality.csv, listeners.csv and responses.csv into
/// out_dir. Incomplete sessions are skipped unless include_partial is set.
ExportPaths export_responses(const StudyConfig& config, const std::vector<SessionState>& sessions,
                             const std::filesystem::path& out_dir, bool include_partial = false);

}  // namespace anonlab::protocol
