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

#include "anonlab/protocol/store.hpp"

#include <chrono>
#include <cstdio>
#include <random>

#include "anonlab/error.hpp"

namespace anonlab::protocol {
namespace {

nlohmann::json study_line(const StudyConfig& config) {
  return {{"type", "study"}, {"config", config.to_json()}, {"fingerprint", config.fingerprint()}};
}

nlohmann::json session_line(const SessionState& s, std::int64_t timestamp_ms) {
  return {{"type", "session"},
          {"session_id", s.session_id()},
          {"listener", s.listener().to_json()},
          {"timestamp_ms", timestamp_ms}};
}

nlohmann::json play_line(const std::string& session_id, const PlayEvent& p, std::int64_t timestamp_ms) {
  return {{"type", "play"},
          {"session_id", session_id},
          {"phase", std::string(to_string(p.phase))},
          {"trial_index", p.trial_index},
          {"slot", std::string(to_string(p.slot))},
          {"timestamp_ms", timestamp_ms}};
}

nlohmann::json response_line(const ResponseRecord& r) {
  auto j = r.to_json();
  j["type"] = "response";
  return j;
}

Error corrupt(const std::string& what) { return Error(ErrorCode::MalformedInput, "response store: " + what); }

}  // namespace

ResponseStore::ResponseStore(std::filesystem::path path) : path_(std::move(path)) {
  out_.open(path_, std::ios::app | std::ios::binary);
  if (!out_) throw Error(ErrorCode::IoFailure, "cannot open response store " + path_.string());
}

void ResponseStore::append(const nlohmann::json& line) {
  out_ << line.dump() << '\n';
  out_.flush();
  if (!out_) throw Error(ErrorCode::IoFailure, "write to response store " + path_.string() + " failed");
}

std::vector<nlohmann::json> ResponseStore::read_all(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::MissingFile, "cannot open response store " + path.string());
  std::vector<std::string> raw;
  for (std::string line; std::getline(in, line);) raw.push_back(line);
  // getline leaves no trace of whether the last line had its newline; check directly.
  bool last_terminated = true;
  {
    std::ifstream tail(path, std::ios::binary | std::ios::ate);
    const auto size = static_cast<std::streamoff>(tail.tellg());
    if (size > 0) {
      tail.seekg(size - 1);
      last_terminated = tail.get() == '\n';
    }
  }
  std::vector<nlohmann::json> lines;
  for (std::size_t i = 0; i < raw.size(); ++i) {
    if (raw[i].empty()) continue;
    try {
      lines.push_back(nlohmann::json::parse(raw[i]));
    } catch (const nlohmann::json::exception&) {
      if (i + 1 == raw.size() && !last_terminated) break;
      throw corrupt("line " + std::to_string(i + 1) + " is not valid JSON");
    }
  }
  return lines;
}

std::vector<SessionState> replay_sessions(const StudyConfig& config, const std::vector<nlohmann::json>& lines) {
  if (lines.empty()) return {};
  const auto& head = lines.front();
  if (head.value("type", "") != "study") throw corrupt("first line is not a study header");
  if (head.value("fingerprint", "") != config.fingerprint()) {
    throw Error(ErrorCode::InvalidStudy, "response store was written for a different study config");
  }
  std::vector<SessionState> sessions;
  std::map<std::string, std::size_t> index;
  auto lookup = [&](const nlohmann::json& line) -> SessionState& {
    const auto id = line.at("session_id").get<std::string>();
    const auto it = index.find(id);
    if (it == index.end()) throw Error(ErrorCode::UnknownSession, "log references unknown session " + id);
    return sessions[it->second];
  };
  for (std::size_t i = 1; i < lines.size(); ++i) {
    const auto& line = lines[i];
    try {
      const auto type = line.at("type").get<std::string>();
      if (type == "session") {
        const auto id = line.at("session_id").get<std::string>();
        if (index.contains(id)) throw corrupt("duplicate session " + id);
        auto listener = ListenerProfile::from_json(line.at("listener"));
        auto plan = generate_session(config, listener);
        index[id] = sessions.size();
        sessions.emplace_back(id, std::move(listener), std::move(plan));
      } else if (type == "play") {
        PlayEvent play{parse_phase(line.at("phase").get<std::string>()), line.at("trial_index").get<std::size_t>(),
                       parse_slot(line.at("slot").get<std::string>())};
        lookup(line).apply(play, line.at("timestamp_ms").get<std::int64_t>());
      } else if (type == "response") {
        const auto stored = ResponseRecord::from_json(line);
        auto& state = lookup(line);
        SessionEvent event;
        if (stored.rating) {
          event = RatingEvent{stored.trial_index, *stored.rating};
        } else if (stored.chosen_slot) {
          event = ChoiceEvent{stored.phase, stored.trial_index, *stored.chosen_slot};
        } else {
          throw corrupt("response without choice or rating");
        }
        const auto rebuilt = state.apply(event, stored.timestamp_ms);
        if (!rebuilt || !(*rebuilt == stored)) throw corrupt("response does not match replayed state");
      } else {
        throw corrupt("unknown line type '" + type + "'");
      }
    } catch (const nlohmann::json::exception& e) {
      throw corrupt("line " + std::to_string(i + 1) + ": " + e.what());
    } catch (const Error& e) {
      throw Error(e.code(), "response store line " + std::to_string(i + 1) + ": " + e.what());
    }
  }
  return sessions;
}

StudyConfig read_store_study(const std::filesystem::path& path) {
  const auto lines = ResponseStore::read_all(path);
  if (lines.empty() || lines.front().value("type", "") != "study") throw corrupt("missing study header");
  return StudyConfig::from_json(lines.front().at("config"));
}

std::string random_token() {
  thread_local std::random_device device;
  thread_local std::mt19937_64 engine(
      (static_cast<std::uint64_t>(device()) << 32) ^ device() ^
      static_cast<std::uint64_t>(std::chrono::steady_clock::now().time_since_epoch().count()));
  char buf[33];
  std::snprintf(buf, sizeof buf, "%016llx%016llx", static_cast<unsigned long long>(engine() ^ device()),
                static_cast<unsigned long long>(engine()));
  return buf;
}

SessionRegistry::SessionRegistry(StudyConfig config, const std::filesystem::path& store_path)
    : config_(std::move(config)) {
  config_.validate();
  const bool existing = std::filesystem::exists(store_path) && std::filesystem::file_size(store_path) > 0;
  if (existing) {
    for (auto& state : replay_sessions(config_, ResponseStore::read_all(store_path))) {
      by_listener_[state.listener().listener_id] = state.session_id();
      const auto id = state.session_id();
      sessions_.emplace(id, std::make_shared<Entry>(std::move(state)));
    }
  }
  store_ = std::make_unique<ResponseStore>(store_path);
  if (!existing) store_->append(study_line(config_));
}

SessionRegistry::Created SessionRegistry::create_session(const ListenerProfile& listener,
                                                         std::int64_t timestamp_ms) {
  std::unique_lock map_lock(map_mutex_);
  if (const auto it = by_listener_.find(listener.listener_id); it != by_listener_.end()) {
    return {it->second, true};
  }
  auto plan = generate_session(config_, listener);
  std::string id;
  do {
    id = random_token();
  } while (sessions_.contains(id));
  SessionState state(id, listener, std::move(plan));
  std::lock_guard log_lock(log_mutex_);
  store_->append(session_line(state, timestamp_ms));
  sessions_.emplace(id, std::make_shared<Entry>(std::move(state)));
  by_listener_[listener.listener_id] = id;
  return {id, false};
}

std::shared_ptr<SessionRegistry::Entry> SessionRegistry::find(const std::string& session_id) const {
  std::shared_lock lock(map_mutex_);
  const auto it = sessions_.find(session_id);
  if (it == sessions_.end()) throw Error(ErrorCode::UnknownSession, "unknown session " + session_id);
  return it->second;
}

std::optional<ResponseRecord> SessionRegistry::apply(const std::string& session_id, const SessionEvent& event,
                                                     std::int64_t timestamp_ms) {
  auto entry = find(session_id);
  std::lock_guard session_lock(entry->mutex);
  SessionState next = entry->state;
  auto record = next.apply(event, timestamp_ms);
  const auto line = record ? response_line(*record) : play_line(session_id, std::get<PlayEvent>(event), timestamp_ms);
  std::lock_guard log_lock(log_mutex_);
  store_->append(line);
  entry->state = std::move(next);
  return record;
}

SessionState SessionRegistry::snapshot(const std::string& session_id) const {
  auto entry = find(session_id);
  std::lock_guard session_lock(entry->mutex);
  return entry->state;
}

std::vector<SessionState> SessionRegistry::snapshot_all() const {
  std::shared_lock map_lock(map_mutex_);
  std::lock_guard log_lock(log_mutex_);
  std::vector<SessionState> out;
  out.reserve(sessions_.size());
  for (const auto& [id, entry] : sessions_) out.push_back(entry->state);
  return out;
}

bool SessionRegistry::contains(const std::string& session_id) const {
  std::shared_lock lock(map_mutex_);
  return sessions_.contains(session_id);
}

}  // namespace anonlab::protocol
