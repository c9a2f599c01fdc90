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

#include "anonlab/service/server.hpp"

#include <chrono>
#include <map>
#include <mutex>
#include <tuple>

#include <httplib.h>

#include "anonlab/error.hpp"
#include "anonlab/signal/audio.hpp"
#include "anonlab/service/fixtures.hpp"

namespace anonlab::service {
namespace {

using protocol::Phase;
using protocol::Slot;

std::int64_t now_ms() {
  return std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::system_clock::now().time_since_epoch())
      .count();
}

int status_for(ErrorCode code) {
  switch (code) {
    case ErrorCode::UnknownSession: return 404;
    case ErrorCode::ReplayForbidden:
    case ErrorCode::DuplicateResponse:
    case ErrorCode::OutOfPhaseEvent: return 409;
    case ErrorCode::MalformedInput:
    case ErrorCode::OutOfRangeRating:
    case ErrorCode::InvalidStudy: return 400;
    default: return 500;
  }
}

void reply_json(httplib::Response& res, int status, const nlohmann::json& body) {
  res.status = status;
  res.set_content(body.dump(), "application/json");
}

void reply_error(httplib::Response& res, int status, std::string_view code, const std::string& message) {
  reply_json(res, status, {{"error", std::string(code)}, {"message", message}});
}

nlohmann::json parse_body(const httplib::Request& req) {
  try {
    auto j = nlohmann::json::parse(req.body);
    if (!j.is_object()) throw Error(ErrorCode::MalformedInput, "request body must be a JSON object");
    return j;
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::MalformedInput, std::string("request body is not valid JSON: ") + e.what());
  }
}

template <typename T>
T field(const nlohmann::json& j, const char* name) {
  try {
    return j.at(name).get<T>();
  } catch (const nlohmann::json::exception&) {
    throw Error(ErrorCode::MalformedInput, std::string("missing or invalid field '") + name + "'");
  }
}

struct TokenTarget {
  std::string session_id;
  Phase phase;
  std::size_t trial_index;
  Slot slot;
  std::string stimulus;
  int fetches = 0;
};

}  // namespace

nlohmann::json current_view(const protocol::SessionState& state, const std::string& token_a,
                            const std::string& token_b) {
  nlohmann::json view{{"session_id", state.session_id()}, {"phase", std::string(protocol::to_string(state.phase()))}};
  if (state.complete()) return view;
  view["trial_index"] = state.trial_index();
  view["trials_in_phase"] = state.phase_length(state.phase());
  if (state.phase() == Phase::Rating) {
    view["stimulus"] = token_a;
    view["plays"] = state.plays(Slot::A);
    view["likert_levels"] = 5;
  } else {
    view["stimuli"] = {{"a", token_a}, {"b", token_b}};
    view["plays"] = {{"a", state.plays(Slot::A)}, {"b", state.plays(Slot::B)}};
    view["max_plays_per_slot"] = state.phase() == Phase::ZeroShot ? nlohmann::json(1) : nlohmann::json(nullptr);
  }
  return view;
}

struct StudyServer::Impl {
  ServerOptions options;
  protocol::SessionRegistry registry;
  httplib::Server http;
  std::mutex token_mutex;
  std::map<std::string, TokenTarget> tokens;
  std::map<std::tuple<std::string, Phase, std::size_t, Slot>, std::string> token_of;

  explicit Impl(ServerOptions o) : options(std::move(o)), registry(options.config, options.store_path) { routes(); }

  std::string token_for(const protocol::SessionState& s, Slot slot) {
    const auto key = std::make_tuple(s.session_id(), s.phase(), s.trial_index(), slot);
    std::lock_guard lock(token_mutex);
    if (const auto it = token_of.find(key); it != token_of.end()) return it->second;
    std::string stimulus;
    if (const auto* pair = s.current_pair()) {
      stimulus = pair->stimulus(slot);
    } else {
      stimulus = s.current_rating()->stimulus;
    }
    auto token = protocol::random_token();
    while (tokens.contains(token)) token = protocol::random_token();
    tokens[token] = {s.session_id(), s.phase(), s.trial_index(), slot, stimulus, 0};
    token_of[key] = token;
    return token;
  }

  nlohmann::json view(const std::string& session_id) {
    const auto state = registry.snapshot(session_id);
    if (state.complete()) return current_view(state, "", "");
    const bool rating = state.phase() == Phase::Rating;
    return current_view(state, token_for(state, Slot::A), rating ? "" : token_for(state, Slot::B));
  }

  bool authorized(const httplib::Request& req) const {
    return !options.study_key || req.get_header_value("X-Study-Key") == *options.study_key;
  }

  // Wraps a handler with key checking and error mapping.
  httplib::Server::Handler guarded(std::function<void(const httplib::Request&, httplib::Response&)> fn) {
    return [this, fn = std::move(fn)](const httplib::Request& req, httplib::Response& res) {
      if (!authorized(req)) return reply_error(res, 401, "unauthorized", "missing or wrong X-Study-Key");
      try {
        fn(req, res);
      } catch (const Error& e) {
        reply_error(res, status_for(e.code()), to_string(e.code()), e.what());
      } catch (const std::exception& e) {
        reply_error(res, 500, "internal_error", e.what());
      }
    };
  }

  void routes() {
    http.Post("/session", guarded([this](const httplib::Request& req, httplib::Response& res) {
      const auto profile = protocol::ListenerProfile::from_json(parse_body(req));
      const auto created = registry.create_session(profile, now_ms());
      reply_json(res, created.resumed ? 200 : 201, {{"session_id", created.session_id}, {"resumed", created.resumed}});
    }));

    http.Get(R"(/session/([0-9a-f]+)/current)", guarded([this](const httplib::Request& req, httplib::Response& res) {
      reply_json(res, 200, view(req.matches[1]));
    }));

    http.Post(R"(/session/([0-9a-f]+)/play)", guarded([this](const httplib::Request& req, httplib::Response& res) {
      const std::string id = req.matches[1];
      const auto body = parse_body(req);
      protocol::PlayEvent play{protocol::parse_phase(field<std::string>(body, "phase")),
                               field<std::size_t>(body, "trial_index"),
                               body.contains("slot") ? protocol::parse_slot(field<std::string>(body, "slot")) : Slot::A};
      registry.apply(id, play, now_ms());
      reply_json(res, 200, {{"accepted", true}, {"current", view(id)}});
    }));

    http.Post(R"(/session/([0-9a-f]+)/choice)", guarded([this](const httplib::Request& req, httplib::Response& res) {
      const std::string id = req.matches[1];
      const auto body = parse_body(req);
      protocol::ChoiceEvent choice{protocol::parse_phase(field<std::string>(body, "phase")),
                                   field<std::size_t>(body, "trial_index"),
                                   protocol::parse_slot(field<std::string>(body, "slot"))};
      registry.apply(id, choice, now_ms());
      reply_json(res, 200, {{"accepted", true}, {"current", view(id)}});
    }));

    http.Post(R"(/session/([0-9a-f]+)/rating)", guarded([this](const httplib::Request& req, httplib::Response& res) {
      const std::string id = req.matches[1];
      const auto body = parse_body(req);
      protocol::RatingEvent rating{field<std::size_t>(body, "trial_index"), field<int>(body, "rating")};
      registry.apply(id, rating, now_ms());
      reply_json(res, 200, {{"accepted", true}, {"current", view(id)}});
    }));

    http.Get(R"(/audio/([0-9a-f]+))", guarded([this](const httplib::Request& req, httplib::Response& res) {
      serve_audio(req.matches[1], res);
    }));

    http.Get("/report", guarded([this](const httplib::Request&, httplib::Response& res) {
      const auto data = study_data_from_sessions(registry.config(), registry.snapshot_all());
      res.status = 200;
      res.set_content(render_report(generate_report(data, options.report)), "application/json");
    }));

    if (options.ui_dir) http.set_mount_point("/ui", options.ui_dir->string());
  }

  void serve_audio(const std::string& token, httplib::Response& res) {
    TokenTarget target;
    {
      std::lock_guard lock(token_mutex);
      const auto it = tokens.find(token);
      if (it == tokens.end()) return reply_error(res, 404, "unknown_token", "unknown audio token");
      target = it->second;
    }
    const auto state = registry.snapshot(target.session_id);
    if (state.phase() != target.phase || state.trial_index() != target.trial_index) {
      return reply_error(res, 409, to_string(ErrorCode::OutOfPhaseEvent), "token belongs to a finished trial");
    }
    if (target.phase == Phase::ZeroShot) {
      // Single exposure: the audio follows a registered play and is handed out once.
      std::lock_guard lock(token_mutex);
      auto& live = tokens.at(token);
      if (state.plays(target.slot) == 0) {
        return reply_error(res, 409, to_string(ErrorCode::OutOfPhaseEvent), "register the play before fetching audio");
      }
      if (live.fetches >= 1) {
        return reply_error(res, 409, to_string(ErrorCode::ReplayForbidden), "zero-shot audio is served once");
      }
      ++live.fetches;
    }
    // Re-encoding drops any metadata chunks the source file carries.
    const auto waveform = signal::load_audio(options.audio_dir / target.stimulus);
    const auto bytes = signal::encode_wav(waveform);
    res.status = 200;
    res.set_content(std::string(bytes.begin(), bytes.end()), "audio/wav");
  }
};

StudyServer::StudyServer(ServerOptions options) : impl_(std::make_unique<Impl>(std::move(options))) {}
StudyServer::~StudyServer() { stop(); }

int StudyServer::bind(const std::string& host, int port) {
  if (port == 0) return impl_->http.bind_to_any_port(host);
  if (!impl_->http.bind_to_port(host, port)) throw Error(ErrorCode::IoFailure, "cannot bind " + host + ":" + std::to_string(port));
  return port;
}

void StudyServer::listen() { impl_->http.listen_after_bind(); }
void StudyServer::stop() {
  if (impl_) impl_->http.stop();
}
void StudyServer::wait_until_ready() const { impl_->http.wait_until_ready(); }
protocol::SessionRegistry& StudyServer::registry() { return impl_->registry; }

}  // namespace anonlab::service
