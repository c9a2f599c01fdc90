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

#include "anonlab/protocol/session.hpp"

#include "anonlab/error.hpp"

namespace anonlab::protocol {
namespace {

Error out_of_phase(const std::string& what) { return Error(ErrorCode::OutOfPhaseEvent, what); }

}  // namespace

std::string_view to_string(Phase p) {
  switch (p) {
    case Phase::ZeroShot: return "zero_shot";
    case Phase::FewShot: return "few_shot";
    case Phase::Rating: return "rating";
    case Phase::Complete: return "complete";
  }
  return "complete";
}

Phase parse_phase(std::string_view text) {
  if (text == "zero_shot") return Phase::ZeroShot;
  if (text == "few_shot") return Phase::FewShot;
  if (text == "rating") return Phase::Rating;
  if (text == "complete") return Phase::Complete;
  throw Error(ErrorCode::MalformedInput, "unknown phase '" + std::string(text) + "'");
}

nlohmann::json ResponseRecord::to_json() const {
  nlohmann::json j{{"session_id", session_id},
                   {"listener_id", listener_id},
                   {"phase", std::string(to_string(phase))},
                   {"trial_index", trial_index},
                   {"play_count_a", play_count_a},
                   {"play_count_b", play_count_b},
                   {"timestamp_ms", timestamp_ms}};
  if (chosen_slot) j["chosen_slot"] = std::string(to_string(*chosen_slot));
  if (rating) j["rating"] = *rating;
  return j;
}

ResponseRecord ResponseRecord::from_json(const nlohmann::json& j) {
  try {
    ResponseRecord r;
    r.session_id = j.at("session_id").get<std::string>();
    r.listener_id = j.at("listener_id").get<std::string>();
    r.phase = parse_phase(j.at("phase").get<std::string>());
    r.trial_index = j.at("trial_index").get<std::size_t>();
    if (j.contains("chosen_slot")) r.chosen_slot = parse_slot(j.at("chosen_slot").get<std::string>());
    if (j.contains("rating")) r.rating = j.at("rating").get<int>();
    r.play_count_a = j.at("play_count_a").get<int>();
    r.play_count_b = j.at("play_count_b").get<int>();
    r.timestamp_ms = j.at("timestamp_ms").get<std::int64_t>();
    return r;
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::MalformedInput, std::string("response record: ") + e.what());
  }
}

SessionState::SessionState(std::string session_id, ListenerProfile listener, SessionPlan plan)
    : session_id_(std::move(session_id)), listener_(std::move(listener)), plan_(std::move(plan)) {
  if (plan_.zero_shot.empty() || plan_.few_shot.empty() || plan_.rating.empty()) {
    throw Error(ErrorCode::EmptyStudy, "session plan has an empty phase");
  }
}

std::size_t SessionState::phase_length(Phase p) const {
  switch (p) {
    case Phase::ZeroShot: return plan_.zero_shot.size();
    case Phase::FewShot: return plan_.few_shot.size();
    case Phase::Rating: return plan_.rating.size();
    case Phase::Complete: return 0;
  }
  return 0;
}

const TrialPair* SessionState::current_pair() const {
  if (phase_ == Phase::ZeroShot) return &plan_.zero_shot[trial_index_];
  if (phase_ == Phase::FewShot) return &plan_.few_shot[trial_index_];
  return nullptr;
}

const RatingItem* SessionState::current_rating() const {
  return phase_ == Phase::Rating ? &plan_.rating[trial_index_] : nullptr;
}

void SessionState::check_position(Phase phase, std::size_t trial_index, bool is_response) const {
  const auto order = [](Phase p) { return static_cast<int>(p); };
  const bool already_answered =
      order(phase) < order(phase_) || (phase == phase_ && trial_index < trial_index_);
  if (already_answered && trial_index < phase_length(phase)) {
    if (is_response) {
      throw Error(ErrorCode::DuplicateResponse, "trial " + std::to_string(trial_index) + " of " +
                                                    std::string(to_string(phase)) + " already answered");
    }
    throw out_of_phase("trial already answered");
  }
  if (phase_ == Phase::Complete) throw out_of_phase("session is complete");
  if (phase != phase_) {
    throw out_of_phase("event for phase " + std::string(to_string(phase)) + " while session is in " +
                       std::string(to_string(phase_)));
  }
  if (trial_index != trial_index_) {
    throw out_of_phase("event for trial " + std::to_string(trial_index) + " but current trial is " +
                       std::to_string(trial_index_));
  }
}

void SessionState::check(const SessionEvent& event) const {
  if (const auto* play = std::get_if<PlayEvent>(&event)) {
    check_position(play->phase, play->trial_index, false);
    if (phase_ == Phase::ZeroShot && plays(play->slot) >= 1) {
      throw Error(ErrorCode::ReplayForbidden,
                  "slot " + std::string(to_string(play->slot)) + " was already played in this zero-shot trial");
    }
  } else if (const auto* choice = std::get_if<ChoiceEvent>(&event)) {
    if (choice->phase == Phase::Rating) throw out_of_phase("choices are not accepted in the rating phase");
    check_position(choice->phase, choice->trial_index, true);
    if (plays_a_ == 0 || plays_b_ == 0) throw out_of_phase("both slots must be played before choosing");
  } else {
    const auto& rating = std::get<RatingEvent>(event);
    check_position(Phase::Rating, rating.trial_index, true);
    if (rating.rating < 1 || rating.rating > 5) {
      throw Error(ErrorCode::OutOfRangeRating, "rating must be in 1..5");
    }
    if (plays_a_ == 0) throw out_of_phase("the stimulus must be played before rating");
  }
}

std::optional<ResponseRecord> SessionState::apply(const SessionEvent& event, std::int64_t timestamp_ms) {
  check(event);
  if (const auto* play = std::get_if<PlayEvent>(&event)) {
    if (phase_ == Phase::Rating || play->slot == Slot::A) {
      ++plays_a_;
    } else {
      ++plays_b_;
    }
    return std::nullopt;
  }
  ResponseRecord record;
  record.session_id = session_id_;
  record.listener_id = listener_.listener_id;
  record.phase = phase_;
  record.trial_index = trial_index_;
  record.play_count_a = plays_a_;
  record.play_count_b = plays_b_;
  record.timestamp_ms = timestamp_ms;
  if (const auto* choice = std::get_if<ChoiceEvent>(&event)) {
    record.chosen_slot = choice->chosen;
  } else {
    record.rating = std::get<RatingEvent>(event).rating;
  }
  responses_.push_back(record);
  advance();
  return record;
}

void SessionState::advance() {
  plays_a_ = 0;
  plays_b_ = 0;
  if (++trial_index_ < phase_length(phase_)) return;
  trial_index_ = 0;
  phase_ = static_cast<Phase>(static_cast<int>(phase_) + 1);
}

SessionState advance_session(SessionState state, const SessionEvent& event, std::int64_t timestamp_ms) {
  state.apply(event, timestamp_ms);
  return state;
}

}  // namespace anonlab::protocol
