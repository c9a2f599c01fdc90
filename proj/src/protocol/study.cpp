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

#include "anonlab/protocol/study.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <cstdio>
#include <fstream>
#include <set>

#include "anonlab/error.hpp"
#include "anonlab/protocol/rng.hpp"

namespace anonlab::protocol {
namespace {

constexpr std::uint64_t kRatingStream = 2;

constexpr std::array<std::pair<Proficiency, std::string_view>, 7> kProficiencyNames{{
    {Proficiency::A1, "A1"},
    {Proficiency::A2, "A2"},
    {Proficiency::B1, "B1"},
    {Proficiency::B2, "B2"},
    {Proficiency::C1, "C1"},
    {Proficiency::C2, "C2"},
    {Proficiency::Native, "native"},
}};

Error malformed(const std::string& what) { return Error(ErrorCode::MalformedInput, what); }

std::string lower(std::string_view text) {
  std::string out(text);
  std::transform(out.begin(), out.end(), out.begin(), [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return out;
}

}  // namespace

std::string_view to_string(Condition c) { return c == Condition::ZeroShot ? "zero" : "few"; }
std::string_view to_string(Slot s) { return s == Slot::A ? "a" : "b"; }
std::string_view to_string(Expertise e) { return e == Expertise::Expert ? "expert" : "non_expert"; }

std::string_view to_string(Proficiency p) {
  for (const auto& [value, name] : kProficiencyNames) {
    if (value == p) return name;
  }
  return "native";
}

Condition parse_condition(std::string_view text) {
  const auto t = lower(text);
  if (t == "zero" || t == "zero_shot") return Condition::ZeroShot;
  if (t == "few" || t == "few_shot") return Condition::FewShot;
  throw malformed("condition must be zero or few, got '" + std::string(text) + "'");
}

Slot parse_slot(std::string_view text) {
  const auto t = lower(text);
  if (t == "a") return Slot::A;
  if (t == "b") return Slot::B;
  throw malformed("slot must be a or b");
}

Proficiency parse_proficiency(std::string_view text) {
  for (const auto& [value, name] : kProficiencyNames) {
    if (lower(name) == lower(text)) return value;
  }
  throw malformed("proficiency must be a CEFR level A1..C2 or native, got '" + std::string(text) + "'");
}

Expertise parse_expertise(std::string_view text) {
  const auto t = lower(text);
  if (t == "expert") return Expertise::Expert;
  if (t == "non_expert" || t == "non-expert" || t == "nonexpert") return Expertise::NonExpert;
  throw malformed("expertise must be expert or non_expert");
}

void StudyConfig::validate() const {
  if (pairs.empty()) throw Error(ErrorCode::EmptyStudy, "study has no stimulus pairs");
  if (groups.empty()) throw Error(ErrorCode::InvalidStudy, "study declares no groups");
  if (likert_levels != 5) throw Error(ErrorCode::InvalidStudy, "only 5-level Likert scales are supported");
  const std::set<std::string> group_set(groups.begin(), groups.end());
  if (group_set.size() != groups.size()) throw Error(ErrorCode::InvalidStudy, "duplicate group names");
  std::set<std::string> ids;
  for (const auto& p : pairs) {
    if (p.original.empty() || p.anonymized.empty()) throw Error(ErrorCode::InvalidStudy, "pair with empty stimulus id");
    if (!ids.insert(p.original).second || !ids.insert(p.anonymized).second) {
      throw Error(ErrorCode::InvalidStudy, "stimulus ids must be distinct across pairs");
    }
    if (!group_set.contains(p.group)) throw Error(ErrorCode::InvalidStudy, "pair has unknown group '" + p.group + "'");
    if (!p.speaker_gender.empty() && p.speaker_gender != "male" && p.speaker_gender != "female") {
      throw Error(ErrorCode::InvalidStudy, "speaker_gender must be male, female or empty");
    }
  }
}

StudyConfig StudyConfig::from_json(const nlohmann::json& j) {
  try {
    StudyConfig c;
    for (const auto& p : j.at("pairs")) {
      c.pairs.push_back({p.at("orig").get<std::string>(), p.at("anon").get<std::string>(),
                         p.at("group").get<std::string>(), p.value("speaker_gender", std::string())});
    }
    c.groups = j.at("groups").get<std::vector<std::string>>();
    c.seed_base = j.at("seed_base").get<std::uint64_t>();
    c.likert_levels = j.value("likert_levels", 5);
    c.validate();
    return c;
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::InvalidStudy, std::string("study config: ") + e.what());
  }
}

nlohmann::json StudyConfig::to_json() const {
  nlohmann::json pairs_json = nlohmann::json::array();
  for (const auto& p : pairs) {
    nlohmann::json entry{{"orig", p.original}, {"anon", p.anonymized}, {"group", p.group}};
    if (!p.speaker_gender.empty()) entry["speaker_gender"] = p.speaker_gender;
    pairs_json.push_back(std::move(entry));
  }
  return {{"pairs", std::move(pairs_json)},
          {"groups", groups},
          {"seed_base", seed_base},
          {"likert_levels", likert_levels},
          {"randomizer", std::string(kRandomizerName)}};
}

std::string StudyConfig::fingerprint() const {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(fnv1a64(to_json().dump())));
  return buf;
}

StudyConfig load_study_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::MissingFile, "cannot open study config " + path);
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::InvalidStudy, std::string("study config is not valid JSON: ") + e.what());
  }
  return StudyConfig::from_json(j);
}

ListenerProfile ListenerProfile::from_json(const nlohmann::json& j) {
  try {
    ListenerProfile p;
    p.listener_id = j.at("listener_id").get<std::string>();
    if (p.listener_id.empty()) throw malformed("listener_id must not be empty");
    p.native_language = j.value("native_language", std::string());
    p.german_proficiency = parse_proficiency(j.value("german_proficiency", std::string("native")));
    p.expertise = parse_expertise(j.value("expertise", std::string("non_expert")));
    p.clinical_years = j.value("clinical_years", 0.0);
    p.speech_processing_years = j.value("speech_processing_years", 0.0);
    p.engineering_years = j.value("engineering_years", 0.0);
    return p;
  } catch (const nlohmann::json::exception& e) {
    throw malformed(std::string("listener profile: ") + e.what());
  }
}

nlohmann::json ListenerProfile::to_json() const {
  return {{"listener_id", listener_id},
          {"native_language", native_language},
          {"german_proficiency", std::string(to_string(german_proficiency))},
          {"expertise", std::string(to_string(expertise))},
          {"clinical_years", clinical_years},
          {"speech_processing_years", speech_processing_years},
          {"engineering_years", engineering_years}};
}

std::vector<TrialPair> generate_trials(const StudyConfig& config, std::string_view listener_id, Condition condition) {
  config.validate();
  const std::uint64_t stream = condition == Condition::ZeroShot ? 0 : 1;
  SessionRng rng(session_seed(config.seed_base, listener_id, stream));

  std::vector<std::size_t> order(config.pairs.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  rng.shuffle(order);

  std::vector<TrialPair> trials;
  trials.reserve(order.size());
  for (std::size_t t = 0; t < order.size(); ++t) {
    const auto& pair = config.pairs[order[t]];
    TrialPair trial;
    trial.trial_index = t;
    trial.listener_id = std::string(listener_id);
    trial.pair_index = order[t];
    trial.hidden_truth = rng.coin() ? Slot::A : Slot::B;
    trial.slot_a_stimulus = trial.hidden_truth == Slot::A ? pair.original : pair.anonymized;
    trial.slot_b_stimulus = trial.hidden_truth == Slot::A ? pair.anonymized : pair.original;
    trial.group_label = pair.group;
    trial.condition = condition;
    trials.push_back(std::move(trial));
  }
  return trials;
}

SessionPlan generate_session(const StudyConfig& config, const ListenerProfile& listener) {
  SessionPlan plan;
  plan.listener_id = listener.listener_id;
  plan.zero_shot = generate_trials(config, listener.listener_id, Condition::ZeroShot);
  plan.few_shot = generate_trials(config, listener.listener_id, Condition::FewShot);

  std::vector<RatingItem> items;
  items.reserve(2 * config.pairs.size());
  for (std::size_t i = 0; i < config.pairs.size(); ++i) {
    const auto& pair = config.pairs[i];
    items.push_back({0, i, pair.original, true, pair.group});
    items.push_back({0, i, pair.anonymized, false, pair.group});
  }
  SessionRng rng(session_seed(config.seed_base, listener.listener_id, kRatingStream));
  rng.shuffle(items);
  for (std::size_t t = 0; t < items.size(); ++t) items[t].trial_index = t;
  plan.rating = std::move(items);
  return plan;
}

}  // namespace anonlab::protocol
