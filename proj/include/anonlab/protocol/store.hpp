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
#include <filesystem>
#include <fstream>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <shared_mutex>
#include <string>
#include <vector>

#include <json.hpp>

#include "anonlab/protocol/session.hpp"
#include "anonlab/protocol/study.hpp"

namespace anonlab::protocol {

/// Append-only JSON-lines log. Every line is flushed before append() returns.
///
/// Line kinds, keyed by "type":
///   study     first line; the study config and its fingerprint
///   session   session creation with the listener profile
///   play      one accepted play event
///   response  one ResponseRecord
class ResponseStore {
 public:
  explicit ResponseStore(std::filesystem::path path);

  void append(const nlohmann::json& line);
  const std::filesystem::path& path() const { return path_; }

  /// All lines of an existing log; a torn final line (crash mid-write) is
  /// dropped, any other malformed line throws MalformedInput.
  static std::vector<nlohmann::json> read_all(const std::filesystem::path& path);

 private:
  std::filesystem::path path_;
  std::ofstream out_;
};

/// Rebuilds sessions from log lines. The study line must match the config.
std::vector<SessionState> replay_sessions(const StudyConfig& config, const std::vector<nlohmann::json>& lines);

/// Reads the study config recorded in a log's first line.
StudyConfig read_store_study(const std::filesystem::path& path);

/// Fresh 128-bit random identifier as 32 hex characters.
std::string random_token();

/// Thread-safe owner of all live sessions of one study. Each mutation is
/// checked on the current state, written to the log, and only then applied.
class SessionRegistry {
 public:
  /// Opens or creates the log at store_path, replaying existing lines.
  SessionRegistry(StudyConfig config, const std::filesystem::path& store_path);

  const StudyConfig& config() const { return config_; }

  struct Created {
    std::string session_id;
    bool resumed = false;
  };
  /// Creates a session, or returns the existing one for the same listener id.
  Created create_session(const ListenerProfile& listener, std::int64_t timestamp_ms);

  /// Throws UnknownSession, or whatever SessionState::apply throws.
  std::optional<ResponseRecord> apply(const std::string& session_id, const SessionEvent& event,
                                      std::int64_t timestamp_ms);

  /// Copy of one session; UnknownSession when absent.
  SessionState snapshot(const std::string& session_id) const;
  /// Copies of all sessions taken at a single point in the log.
  std::vector<SessionState> snapshot_all() const;
  bool contains(const std::string& session_id) const;

 private:
  struct Entry {
    std::mutex mutex;
    SessionState state;
    explicit Entry(SessionState s) : state(std::move(s)) {}
  };
  std::shared_ptr<Entry> find(const std::string& session_id) const;

  StudyConfig config_;
  std::unique_ptr<ResponseStore> store_;
  mutable std::shared_mutex map_mutex_;
  std::map<std::string, std::shared_ptr<Entry>> sessions_;
  std::map<std::string, std::string> by_listener_;
  // Held while a line is written and applied, so snapshot_all sees a prefix of the log.
  mutable std::mutex log_mutex_;
};

}  // namespace anonlab::protocol
