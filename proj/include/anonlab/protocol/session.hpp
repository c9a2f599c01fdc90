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
#include <variant>
#include <vector>

#include <json.hpp>

#include "anonlab/protocol/study.hpp"

namespace anonlab::protocol {

enum class Phase { ZeroShot, FewShot, Rating, Complete };

std::string_view to_string(Phase p);  // "zero_shot" | "few_shot" | "rating" | "complete"
Phase parse_phase(std::string_view text);

/// A listener pressed play. In the rating phase the slot is ignored.
struct PlayEvent {
  Phase phase = Phase::ZeroShot;
  std::size_t trial_index = 0;
  Slot slot = Slot::A;
};

struct ChoiceEvent {
  Phase phase = Phase::ZeroShot;
  std::size_t trial_index = 0;
  Slot chosen = Slot::A;
};

struct RatingEvent {
  std::size_t trial_index = 0;
  int rating = 0;
};

using SessionEvent = std::variant<PlayEvent, ChoiceEvent, RatingEvent>;

struct ResponseRecord {
  std::string session_id;
  std::string listener_id;
  Phase phase = Phase::ZeroShot;
  std::size_t trial_index = 0;
  std::optional<Slot> chosen_slot;  // discrimination phases
  std::optional<int> rating;        // rating phase
  int play_count_a = 0;
  int play_count_b = 0;  // always 0 for ratings
  std::int64_t timestamp_ms = 0;

  nlohmann::json to_json() const;
  static ResponseRecord from_json(const nlohmann::json& j);
  bool operator==(const ResponseRecord&) const = default;
};

/// One listener's progress through zero-shot, few-shot and rating phases.
/// apply() either mutates the state or throws with the state untouched.
class SessionState {
 public:
  SessionState(std::string session_id, ListenerProfile listener, SessionPlan plan);

  const std::string& session_id() const { return session_id_; }
  const ListenerProfile& listener() const { return listener_; }
  const SessionPlan& plan() const { return plan_; }
  Phase phase() const { return phase_; }
  std::size_t trial_index() const { return trial_index_; }
  int plays(Slot s) const { return s == Slot::A ? plays_a_ : plays_b_; }
  const std::vector<ResponseRecord>& responses() const { return responses_; }
  bool complete() const { return phase_ == Phase::Complete; }

  /// Number of trials in a phase (0 for Complete).
  std::size_t phase_length(Phase p) const;
  const TrialPair* current_pair() const;
  const RatingItem* current_rating() const;

  /// Applies one event. Returns the stored response for choices and ratings.
  /// Throws ReplayForbidden, OutOfPhaseEvent, DuplicateResponse,
  /// OutOfRangeRating.
  std::optional<ResponseRecord> apply(const SessionEvent& event, std::int64_t timestamp_ms);

  /// Checks an event without applying it.
  void check(const SessionEvent& event) const;

 private:
  void check_position(Phase phase, std::size_t trial_index, bool is_response) const;
  void advance();

  std::string session_id_;
  ListenerProfile listener_;
  SessionPlan plan_;
  Phase phase_ = Phase::ZeroShot;
  std::size_t trial_index_ = 0;
  int plays_a_ = 0;
  int plays_b_ = 0;
  std::vector<ResponseRecord> responses_;
};

/// Value-semantics wrapper around SessionState::apply.
SessionState advance_session(SessionState state, const SessionEvent& event, std::int64_t timestamp_ms);

}  // namespace anonlab::protocol
