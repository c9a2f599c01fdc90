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

#include "anonlab/protocol/scoring.hpp"

#include <algorithm>
#include <map>
#include <tuple>

#include "anonlab/error.hpp"
#include "anonlab/stats/quality.hpp"

namespace anonlab::protocol {
namespace {

using TrialKey = std::tuple<std::string, Condition, std::size_t>;

std::optional<Condition> condition_of(Phase p) {
  if (p == Phase::ZeroShot) return Condition::ZeroShot;
  if (p == Phase::FewShot) return Condition::FewShot;
  return std::nullopt;
}

std::size_t group_rank(const std::vector<std::string>& groups, const std::string& g) {
  const auto it = std::find(groups.begin(), groups.end(), g);
  return static_cast<std::size_t>(it - groups.begin());
}

// Listener order by first appearance keeps output stable without sorting ids.
struct ListenerOrder {
  std::map<std::string, std::size_t> rank;
  std::size_t of(const std::string& id) { return rank.emplace(id, rank.size()).first->second; }
};

}  // namespace

std::vector<AccuracyRow> score_discrimination(const std::vector<ResponseRecord>& responses,
                                              const std::vector<TrialPair>& truths,
                                              const std::vector<std::string>& groups) {
  std::map<TrialKey, const TrialPair*> by_key;
  for (const auto& t : truths) by_key[{t.listener_id, t.condition, t.trial_index}] = &t;

  ListenerOrder listeners;
  // (listener rank, group rank, condition) -> (listener, group, correct, total)
  std::map<std::tuple<std::size_t, std::size_t, int>, AccuracyRow> cells;
  for (const auto& r : responses) {
    const auto condition = condition_of(r.phase);
    if (!condition || !r.chosen_slot) continue;
    const auto it = by_key.find({r.listener_id, *condition, r.trial_index});
    if (it == by_key.end()) {
      throw Error(ErrorCode::OrphanResponse, "response for listener " + r.listener_id + " trial " +
                                                 std::to_string(r.trial_index) + " has no matching trial");
    }
    const auto& trial = *it->second;
    auto& cell = cells[{listeners.of(r.listener_id), group_rank(groups, trial.group_label), static_cast<int>(*condition)}];
    cell.listener_id = r.listener_id;
    cell.group = trial.group_label;
    cell.condition = *condition;
    ++cell.total;
    if (*r.chosen_slot == trial.hidden_truth) ++cell.correct;
  }
  std::vector<AccuracyRow> rows;
  rows.reserve(cells.size());
  for (auto& [key, cell] : cells) {
    cell.accuracy_percent = stats::accuracy(cell.correct, cell.total);
    rows.push_back(std::move(cell));
  }
  return rows;
}

std::vector<QualityRow> score_quality(const std::vector<ResponseRecord>& responses,
                                      const std::vector<std::pair<std::string, RatingItem>>& items,
                                      const std::vector<std::string>& groups) {
  std::map<std::pair<std::string, std::size_t>, const RatingItem*> by_key;
  for (const auto& [listener, item] : items) by_key[{listener, item.trial_index}] = &item;

  ListenerOrder listeners;
  struct Cell {
    QualityRow row;
    std::vector<int> ratings;
  };
  // Original before anonymized within a group.
  std::map<std::tuple<std::size_t, std::size_t, int>, Cell> cells;
  for (const auto& r : responses) {
    if (r.phase != Phase::Rating || !r.rating) continue;
    const auto it = by_key.find({r.listener_id, r.trial_index});
    if (it == by_key.end()) {
      throw Error(ErrorCode::OrphanResponse, "rating for listener " + r.listener_id + " trial " +
                                                 std::to_string(r.trial_index) + " has no matching item");
    }
    const auto& item = *it->second;
    auto& cell = cells[{listeners.of(r.listener_id), group_rank(groups, item.group_label), item.is_original ? 0 : 1}];
    cell.row.listener_id = r.listener_id;
    cell.row.group = item.group_label;
    cell.row.original = item.is_original;
    cell.ratings.push_back(*r.rating);
  }
  std::vector<QualityRow> rows;
  rows.reserve(cells.size());
  for (auto& [key, cell] : cells) {
    cell.row.quality_percent = stats::normalized_quality_score(cell.ratings);
    cell.row.ratings = cell.ratings.size();
    rows.push_back(std::move(cell.row));
  }
  return rows;
}

SessionScores score_sessions(const StudyConfig& config, const std::vector<SessionState>& sessions) {
  std::vector<ResponseRecord> responses;
  std::vector<TrialPair> truths;
  std::vector<std::pair<std::string, RatingItem>> items;
  for (const auto& s : sessions) {
    responses.insert(responses.end(), s.responses().begin(), s.responses().end());
    truths.insert(truths.end(), s.plan().zero_shot.begin(), s.plan().zero_shot.end());
    truths.insert(truths.end(), s.plan().few_shot.begin(), s.plan().few_shot.end());
    for (const auto& item : s.plan().rating) items.emplace_back(s.listener().listener_id, item);
  }
  return {score_discrimination(responses, truths, config.groups), score_quality(responses, items, config.groups)};
}

std::vector<SpeakerAccuracyRow> score_by_speaker(const StudyConfig& config, const std::vector<SessionState>& sessions) {
  // (condition, pair) -> (correct, total)
  std::map<std::pair<int, std::size_t>, std::pair<std::size_t, std::size_t>> counts;
  for (const auto& s : sessions) {
    for (const auto& r : s.responses()) {
      const auto condition = condition_of(r.phase);
      if (!condition || !r.chosen_slot) continue;
      const auto& trials = *condition == Condition::ZeroShot ? s.plan().zero_shot : s.plan().few_shot;
      const auto& trial = trials.at(r.trial_index);
      if (config.pairs.at(trial.pair_index).speaker_gender.empty()) continue;
      auto& [correct, total] = counts[{static_cast<int>(*condition), trial.pair_index}];
      ++total;
      if (*r.chosen_slot == trial.hidden_truth) ++correct;
    }
  }
  std::vector<SpeakerAccuracyRow> rows;
  rows.reserve(counts.size());
  for (const auto& [key, c] : counts) {
    const auto& pair = config.pairs[key.second];
    rows.push_back({key.second, pair.group, pair.speaker_gender, static_cast<Condition>(key.first),
                    stats::accuracy(c.first, c.second), c.second});
  }
  return rows;
}

}  // namespace anonlab::protocol
