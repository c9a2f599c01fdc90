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
#include <memory>
#include <optional>
#include <string>

#include <json.hpp>

#include "anonlab/protocol/store.hpp"
#include "anonlab/protocol/study.hpp"
#include "anonlab/service/report.hpp"

namespace anonlab::service {

struct ServerOptions {
  protocol::StudyConfig config;
  std::filesystem::path audio_dir;
  std::filesystem::path store_path;
  /// When set, every request must carry it in the X-Study-Key header.
  std::optional<std::string> study_key;
  /// Static files for the browser client, served under /ui/.
  std::optional<std::filesystem::path> ui_dir;
  ReportOptions report;
};

/// HTTP front end of a study.
///
///   POST /session               listener profile -> {session_id, resumed}
///   GET  /session/{id}/current  blinded view of the current trial
///   POST /session/{id}/play     {phase, trial_index, slot}
///   POST /session/{id}/choice   {phase, trial_index, slot}
///   POST /session/{id}/rating   {trial_index, rating}
///   GET  /audio/{token}         WAV bytes, Content-Type only
///   GET  /report                report JSON over all sessions
///
/// Errors come back as {"error": "<code>", "message": ...} with 400, 401,
/// 404 or 409. Every accepted event is in the store before the reply.
class StudyServer {
 public:
  explicit StudyServer(ServerOptions options);
  ~StudyServer();
  StudyServer(const StudyServer&) = delete;
  StudyServer& operator=(const StudyServer&) = delete;

  /// Binds to host:port (0 picks a free port) and returns the port.
  int bind(const std::string& host, int port);
  /// Serves until stop(); call after bind().
  void listen();
  void stop();
  void wait_until_ready() const;

  protocol::SessionRegistry& registry();

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

/// Blinded client view of a session's current trial. Exposed for tests of
/// the wire format; the server fills tokens through its own map.
nlohmann::json current_view(const protocol::SessionState& state, const std::string& token_a,
                            const std::string& token_b);

}  // namespace anonlab::service
