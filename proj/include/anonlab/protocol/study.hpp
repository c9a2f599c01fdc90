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

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

namespace anonlab::protocol {

enum class Condition { ZeroShot, FewShot };
enum class Slot { A, B };
enum class Proficiency { A1, A2, B1, B2, C1, C2, Native };
enum class Expertise { Expert, NonExpert };

std::string_view to_string(Condition c);   // "zero" | "few"
std::string_view to_string(Slot s);        // "a" | "b"
std::string_view to_string(Proficiency p); // "A1" .. "C2" | "native"
std::string_view to_string(Expertise e);   // "expert" | "non_expert"
Condition parse_condition(std::string_view text);
Slot parse_slot(std::string_view text);
Proficiency parse_proficiency(std::string_view text);
Expertise parse_expertise(std::string_view text);

/// One original/anonymized recording pair. File names resolve against the
/// audio directory the service is started with.
struct StimulusPair {
  std::string original;
  std::string anonymized;
  std::string group;
  std::string speaker_gender;  // optional: "male" | "female" | ""
};

struct StudyConfig {
  std::vector<StimulusPair> pairs;
  std::vector<std::string> groups;
  std::uint64_t seed_base = 0;
  int likert_levels = 5;

  /// Throws InvalidStudy (duplicate ids, unknown groups, bad Likert levels)
  /// or EmptyStudy.
  void validate() const;

  static StudyConfig from_json(const nlohmann::json& j);
  nlohmann::json to_json() const;
  /// Stable hash of the canonical JSON, used to tie a response store to its study.
  std::string fingerprint() const;
};

StudyConfig load_study_config(const std::string& path);

struct ListenerProfile {
  std::string listener_id;
  std::string native_language;
  Proficiency german_proficiency = Proficiency::Native;
  Expertise expertise = Expertise::NonExpert;
  double clinical_years = 0.0;
  double speech_processing_years = 0.0;
  double engineering_years = 0.0;

  bool is_native() const { return german_proficiency == Proficiency::Native; }

  static ListenerProfile from_json(const nlohmann::json& j);
  nlohmann::json to_json() const;
  bool operator==(const ListenerProfile&) const = default;
};

/// One blinded discrimination trial. Everything here is server-side; clients
/// only ever see opaque tokens for the two slots.
struct TrialPair {
  std::size_t trial_index = 0;
  std::string listener_id;
  std::size_t pair_index = 0;
  std::string slot_a_stimulus;
  std::string slot_b_stimulus;
  Slot hidden_truth = Slot::A;  // slot holding the original
  std::string group_label;
  Condition condition = Condition::ZeroShot;

  const std::string& stimulus(Slot s) const { return s == Slot::A ? slot_a_stimulus : slot_b_stimulus; }
};

/// One single-stimulus quality rating trial.
struct RatingItem {
  std::size_t trial_index = 0;
  std::size_t pair_index = 0;
  std::string stimulus;
  bool is_original = false;
  std::string group_label;
};

struct SessionPlan {
  std::string listener_id;
  std::vector<TrialPair> zero_shot;
  std::vector<TrialPair> few_shot;
  std::vector<RatingItem> rating;
};

/// Shuffled trial order and independent original-slot draws for one
/// condition; deterministic in (seed_base, listener_id, condition).
std::vector<TrialPair> generate_trials(const StudyConfig& config, std::string_view listener_id, Condition condition);

/// Zero-shot and few-shot trial lists plus a shuffled rating list of all
/// 2 * |pairs| stimuli, each from its own stream.
SessionPlan generate_session(const StudyConfig& config, const ListenerProfile& listener);

}  // namespace anonlab::protocol
