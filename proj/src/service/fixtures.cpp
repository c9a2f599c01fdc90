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

#include "anonlab/service/fixtures.hpp"

#include <algorithm>

#include "anonlab/protocol/export.hpp"

namespace anonlab::service {
namespace {

void note(std::vector<std::string>& order, const std::string& value) {
  if (std::find(order.begin(), order.end(), value) == order.end()) order.push_back(value);
}

}  // namespace

const protocol::ListenerProfile* StudyData::profile(const std::string& listener_id) const {
  for (const auto& l : listeners) {
    if (l.listener_id == listener_id) return &l;
  }
  return nullptr;
}

StudyData load_fixture_data(const std::optional<std::filesystem::path>& accuracy_csv,
                            const std::optional<std::filesystem::path>& quality_csv,
                            const std::optional<std::filesystem::path>& listeners_csv) {
  StudyData data;
  if (accuracy_csv) data.accuracy = protocol::read_accuracy_csv(*accuracy_csv);
  if (quality_csv) data.quality = protocol::read_quality_csv(*quality_csv);
  if (listeners_csv) data.listeners = protocol::read_listeners_csv(*listeners_csv);
  for (const auto& r : data.accuracy) {
    note(data.groups, r.group);
    note(data.listener_ids, r.listener_id);
  }
  for (const auto& r : data.quality) {
    note(data.groups, r.group);
    note(data.listener_ids, r.listener_id);
  }
  return data;
}

StudyData study_data_from_sessions(const protocol::StudyConfig& config,
                                   const std::vector<protocol::SessionState>& sessions) {
  StudyData data;
  data.groups = config.groups;
  for (const auto& s : sessions) {
    data.listener_ids.push_back(s.listener().listener_id);
    data.listeners.push_back(s.listener());
  }
  auto scores = protocol::score_sessions(config, sessions);
  data.accuracy = std::move(scores.accuracy);
  data.quality = std::move(scores.quality);
  data.speakers = protocol::score_by_speaker(config, sessions);
  return data;
}

}  // namespace anonlab::service
