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

#include "test_support.hpp"

#include <httplib.h>

#include <algorithm>
#include <cmath>
#include <numbers>

#include "anonlab/mcadams/lpc.hpp"
#include "anonlab/protocol/store.hpp"

namespace anonlab::testing {
namespace {

std::vector<double> resonance_coefficients(const std::vector<Resonance>& resonances) {
  mcadams::PoleSet set;
  for (const auto& r : resonances) set.poles.push_back({r.radius, r.angle, false});
  return mcadams::poles_to_coefficients(set);
}

std::vector<double> all_pole(const std::vector<double>& a, const std::vector<double>& excitation) {
  std::vector<double> y(excitation.size(), 0.0);
  for (std::size_t n = 0; n < y.size(); ++n) {
    double acc = excitation[n];
    for (std::size_t k = 1; k <= a.size() && k <= n; ++k) acc += a[k - 1] * y[n - k];
    y[n] = acc;
  }
  return y;
}

void normalize(std::vector<double>& x, double peak) {
  double m = 0.0;
  for (double v : x) m = std::max(m, std::abs(v));
  if (m > 0.0) {
    for (double& v : x) v *= peak / m;
  }
}

}  // namespace

signal::Waveform synth_vowel(const std::vector<Resonance>& resonances, double f0, double seconds, int sample_rate,
                             double peak) {
  const auto n = static_cast<std::size_t>(seconds * sample_rate);
  std::vector<double> excitation(n, 0.0);
  const double period = sample_rate / f0;
  for (double t = 0.0; t < static_cast<double>(n); t += period) excitation[static_cast<std::size_t>(t)] = 1.0;
  auto y = all_pole(resonance_coefficients(resonances), excitation);
  normalize(y, peak);
  return {std::move(y), sample_rate};
}

signal::Waveform synth_noise_ar(const std::vector<Resonance>& resonances, double seconds, std::uint64_t seed,
                                int sample_rate, double peak) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  std::vector<double> excitation(static_cast<std::size_t>(seconds * sample_rate));
  for (double& v : excitation) v = gauss(rng);
  auto y = all_pole(resonance_coefficients(resonances), excitation);
  normalize(y, peak);
  return {std::move(y), sample_rate};
}

std::vector<signal::Waveform> synthetic_corpus() {
  using std::numbers::pi;
  std::vector<signal::Waveform> out;
  out.push_back(synth_vowel({{0.3, 0.97}, {0.8, 0.95}}, 120.0, 1.0));
  out.push_back(synth_vowel({{0.25, 0.96}, {1.1, 0.94}, {1.6, 0.9}}, 210.0, 1.0));
  out.push_back(synth_vowel({{0.45, 0.97}, {0.9, 0.93}, {2.0, 0.9}, {2.6, 0.85}}, 95.0, 1.5));
  out.push_back(synth_noise_ar({{0.5, 0.9}, {1.4, 0.85}}, 1.0, 7));
  out.push_back(synth_noise_ar({{0.2, 0.95}}, 0.75, 11));
  {
    // Linear chirp 100 Hz -> 3 kHz.
    signal::Waveform w{std::vector<double>(16000), 16000};
    for (std::size_t n = 0; n < w.samples.size(); ++n) {
      const double t = n / 16000.0;
      w.samples[n] = 0.4 * std::sin(2 * pi * (100.0 * t + 0.5 * 2900.0 * t * t));
    }
    out.push_back(std::move(w));
  }
  {
    signal::Waveform w{std::vector<double>(12000), 16000};
    for (std::size_t n = 0; n < w.samples.size(); ++n) {
      w.samples[n] = 0.3 * std::sin(2 * pi * 440.0 * n / 16000.0) + 0.2 * std::sin(2 * pi * 1330.0 * n / 16000.0);
    }
    out.push_back(std::move(w));
  }
  out.push_back(synth_vowel({{0.35, 0.98}, {1.3, 0.95}}, 160.0, 0.5, 16000, 0.9));
  {
    // Vowel with a silent gap and a short tail that is not a whole frame.
    auto a = synth_vowel({{0.3, 0.97}, {0.7, 0.95}}, 130.0, 0.4);
    auto b = synth_vowel({{0.5, 0.96}, {1.2, 0.93}}, 180.0, 0.37);
    a.samples.insert(a.samples.end(), 3200, 0.0);
    a.samples.insert(a.samples.end(), b.samples.begin(), b.samples.end());
    out.push_back(std::move(a));
  }
  {
    auto w = synth_vowel({{0.28, 0.97}, {0.95, 0.95}, {1.9, 0.9}}, 110.0, 1.2, 16000, 0.4);
    std::mt19937_64 rng(3);
    std::normal_distribution<double> gauss(0.0, 0.01);
    for (double& v : w.samples) v += gauss(rng);
    out.push_back(std::move(w));
  }
  return out;
}

std::vector<std::filesystem::path> write_recorded_clips(const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);
  std::vector<std::filesystem::path> paths;
  std::mt19937_64 rng(2024);
  std::normal_distribution<double> noise(0.0, 0.003);
  const std::vector<std::vector<Resonance>> vowels{
      {{0.28, 0.97}, {0.85, 0.95}, {1.55, 0.9}},
      {{0.45, 0.96}, {0.72, 0.95}, {1.7, 0.88}},
      {{0.2, 0.97}, {1.35, 0.94}, {1.9, 0.9}},
  };
  for (int clip = 0; clip < 5; ++clip) {
    const double f0 = 100.0 + 30.0 * clip;
    signal::Waveform w{{}, 16000};
    w.samples.assign(1600, 0.0);  // leading pause
    for (int v = 0; v < 4; ++v) {
      auto seg = synth_vowel(vowels[(clip + v) % vowels.size()], f0 * (1.0 + 0.05 * v), 0.35 + 0.05 * v);
      // Attack/decay envelope so onsets are not abrupt.
      const std::size_t n = seg.samples.size();
      for (std::size_t i = 0; i < n; ++i) {
        const double edge = std::min({1.0, i / 800.0, (n - i) / 800.0});
        seg.samples[i] *= edge;
      }
      w.samples.insert(w.samples.end(), seg.samples.begin(), seg.samples.end());
      w.samples.insert(w.samples.end(), 800, 0.0);
    }
    for (double& s : w.samples) s += noise(rng);
    auto path = dir / ("clip" + std::to_string(clip) + ".wav");
    signal::save_audio(w, path);
    paths.push_back(path);
  }
  return paths;
}

mcadams::PoleSet random_stable_poles(std::mt19937_64& rng, std::size_t order, double max_radius) {
  std::uniform_real_distribution<double> radius(0.05, max_radius);
  std::uniform_real_distribution<double> angle(1e-3, std::numbers::pi - 1e-3);
  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  mcadams::PoleSet set;
  std::size_t remaining = order;
  if (order % 2 == 1) {
    const double r = radius(rng);
    set.poles.push_back({r, unit(rng) < 0 ? std::numbers::pi : 0.0, true});
    --remaining;
  }
  while (remaining > 0) {
    if (remaining >= 2 && unit(rng) < 0.6) {
      set.poles.push_back({radius(rng), angle(rng), false});
      remaining -= 2;
    } else {
      const double r = radius(rng);
      set.poles.push_back({r, unit(rng) < 0 ? std::numbers::pi : 0.0, true});
      --remaining;
    }
  }
  return set;
}

std::vector<double> dominant_angles(const signal::Waveform& w, std::size_t order, std::size_t count,
                                    std::size_t analysis_length) {
  std::vector<double> sums(count, 0.0);
  std::size_t windows = 0;
  for (std::size_t start = 0; start + analysis_length <= w.samples.size(); start += analysis_length) {
    const std::span<const double> frame(w.samples.data() + start, analysis_length);
    const auto model = mcadams::lpc_analyze(frame, order);
    if (model.degenerate) continue;
    auto poles = mcadams::find_poles(model.coefficients).poles;
    std::erase_if(poles, [](const mcadams::Pole& p) { return p.is_real; });
    if (poles.size() < count) continue;
    std::sort(poles.begin(), poles.end(), [](const auto& a, const auto& b) { return a.magnitude > b.magnitude; });
    std::vector<double> angles;
    for (std::size_t i = 0; i < count; ++i) angles.push_back(poles[i].angle);
    std::sort(angles.begin(), angles.end());
    for (std::size_t i = 0; i < count; ++i) sums[i] += angles[i];
    ++windows;
  }
  for (double& s : sums) s /= static_cast<double>(windows);
  return sums;
}

double rms(const std::vector<double>& x) {
  if (x.empty()) return 0.0;
  double s = 0.0;
  for (double v : x) s += v * v;
  return std::sqrt(s / x.size());
}

double relative_rms_error(const std::vector<double>& a, const std::vector<double>& b) {
  std::vector<double> d(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) d[i] = a[i] - b[i];
  return rms(d) / rms(b);
}

TempDir::TempDir() {
  path_ = std::filesystem::temp_directory_path() / ("anonlab-test-" + protocol::random_token().substr(0, 12));
  std::filesystem::create_directories(path_);
}

TempDir::~TempDir() {
  std::error_code ec;
  std::filesystem::remove_all(path_, ec);
}

std::filesystem::path data_dir() { return ANONLAB_DATA_DIR; }

protocol::StudyConfig make_study(std::size_t pairs, std::uint64_t seed_base, std::vector<std::string> groups) {
  protocol::StudyConfig config;
  config.groups = std::move(groups);
  config.seed_base = seed_base;
  for (std::size_t i = 0; i < pairs; ++i) {
    const auto stem = "p" + std::to_string(i);
    config.pairs.push_back({stem + "_orig.wav", stem + "_anon.wav", config.groups[i % config.groups.size()],
                            i % 2 == 0 ? "male" : "female"});
  }
  return config;
}

protocol::ListenerProfile make_listener(const std::string& id, bool native, bool expert) {
  protocol::ListenerProfile p;
  p.listener_id = id;
  p.native_language = native ? "German" : "English";
  p.german_proficiency = native ? protocol::Proficiency::Native : protocol::Proficiency::B2;
  p.expertise = expert ? protocol::Expertise::Expert : protocol::Expertise::NonExpert;
  p.speech_processing_years = expert ? 6 : 0;
  return p;
}

namespace {

template <typename Apply, typename Current>
void drive(Apply apply, Current current, const Chooser& choose, const Rater& rate) {
  using namespace protocol;
  std::int64_t ts = 1;
  for (;;) {
    const SessionState s = current();
    if (s.complete()) return;
    if (s.phase() == Phase::Rating) {
      const auto* item = s.current_rating();
      apply(PlayEvent{Phase::Rating, s.trial_index(), Slot::A}, ts++);
      apply(RatingEvent{s.trial_index(), rate(*item)}, ts++);
    } else {
      const auto* pair = s.current_pair();
      apply(PlayEvent{s.phase(), s.trial_index(), Slot::A}, ts++);
      apply(PlayEvent{s.phase(), s.trial_index(), Slot::B}, ts++);
      apply(ChoiceEvent{s.phase(), s.trial_index(), choose(*pair)}, ts++);
    }
  }
}

}  // namespace

void run_session(protocol::SessionRegistry& registry, const std::string& session_id, const Chooser& choose,
                 const Rater& rate) {
  drive([&](const protocol::SessionEvent& e, std::int64_t ts) { registry.apply(session_id, e, ts); },
        [&] { return registry.snapshot(session_id); }, choose, rate);
}

void run_session(protocol::SessionState& state, const Chooser& choose, const Rater& rate) {
  drive([&](const protocol::SessionEvent& e, std::int64_t ts) { state.apply(e, ts); }, [&] { return state; },
        choose, rate);
}

LiveStudy::LiveStudy(protocol::StudyConfig config, std::optional<std::string> key,
                     std::optional<std::filesystem::path> store)
    : audio_(dir_.path() / "audio"), store_(store ? *store : dir_.path() / "store.jsonl"), key_(std::move(key)) {
  std::filesystem::create_directories(audio_);
  for (std::size_t i = 0; i < config.pairs.size(); ++i) {
    const double angle = 0.2 + 0.01 * static_cast<double>(i % 40);
    auto w = synth_vowel({{angle, 0.95}}, 110.0 + static_cast<double>(i % 7) * 10.0, 0.1);
    if (!std::filesystem::exists(audio_ / config.pairs[i].original)) signal::save_audio(w, audio_ / config.pairs[i].original);
    for (auto& v : w.samples) v *= 0.8;
    if (!std::filesystem::exists(audio_ / config.pairs[i].anonymized)) signal::save_audio(w, audio_ / config.pairs[i].anonymized);
  }
  service::ServerOptions options;
  options.config = std::move(config);
  options.audio_dir = audio_;
  options.store_path = store_;
  options.study_key = key_;
  server_ = std::make_unique<service::StudyServer>(std::move(options));
  port_ = server_->bind("127.0.0.1", 0);
  thread_ = std::thread([this] { server_->listen(); });
  server_->wait_until_ready();
}

LiveStudy::~LiveStudy() {
  server_->stop();
  if (thread_.joinable()) thread_.join();
}

namespace {

LiveStudy::Reply to_reply(const httplib::Result& r) {
  LiveStudy::Reply out;
  if (!r) throw std::runtime_error("HTTP request failed: " + httplib::to_string(r.error()));
  out.status = r->status;
  out.body = r->body;
  out.content_type = r->get_header_value("Content-Type");
  for (const auto& [k, v] : r->headers) out.headers.emplace_back(k, v);
  return out;
}

httplib::Headers headers_for(const std::optional<std::string>& key) {
  httplib::Headers h;
  if (key) h.emplace("X-Study-Key", *key);
  return h;
}

}  // namespace

LiveStudy::Reply LiveStudy::get(const std::string& path, const std::optional<std::string>& key) {
  httplib::Client client("127.0.0.1", port_);
  return to_reply(client.Get(path, headers_for(key ? key : key_)));
}

LiveStudy::Reply LiveStudy::post(const std::string& path, const nlohmann::json& body,
                                 const std::optional<std::string>& key) {
  httplib::Client client("127.0.0.1", port_);
  return to_reply(client.Post(path, headers_for(key ? key : key_), body.dump(), "application/json"));
}

std::string LiveStudy::create(const protocol::ListenerProfile& profile) {
  const auto r = post("/session", profile.to_json());
  if (r.status != 201 && r.status != 200) throw std::runtime_error("session creation failed: " + r.body);
  return r.json().at("session_id").get<std::string>();
}

void LiveStudy::run(const std::string& session_id, const Chooser& choose, const Rater& rate,
                    std::vector<nlohmann::json>* payloads, bool fetch_audio) {
  const std::string base = "/session/" + session_id;
  auto expect_ok = [&](const Reply& r) {
    if (r.status != 200) throw std::runtime_error("unexpected HTTP " + std::to_string(r.status) + ": " + r.body);
    auto j = r.json();
    if (payloads) payloads->push_back(j);
    return j;
  };
  auto audio = [&](const std::string& token) {
    if (!fetch_audio) return;
    const auto r = get("/audio/" + token);
    if (r.status != 200) throw std::runtime_error("audio fetch failed: " + r.body);
  };
  for (;;) {
    const auto view = expect_ok(get(base + "/current"));
    const auto phase = view.at("phase").get<std::string>();
    if (phase == "complete") return;
    const auto trial = view.at("trial_index").get<std::size_t>();
    if (phase == "rating") {
      expect_ok(post(base + "/play", {{"phase", phase}, {"trial_index", trial}}));
      audio(view.at("stimulus").get<std::string>());
      const auto item = *server_->registry().snapshot(session_id).current_rating();
      expect_ok(post(base + "/rating", {{"trial_index", trial}, {"rating", rate(item)}}));
    } else {
      for (const char* slot : {"a", "b"}) {
        expect_ok(post(base + "/play", {{"phase", phase}, {"trial_index", trial}, {"slot", slot}}));
        audio(view.at("stimuli").at(slot).get<std::string>());
      }
      const auto pair = *server_->registry().snapshot(session_id).current_pair();
      const auto slot = std::string(protocol::to_string(choose(pair)));
      expect_ok(post(base + "/choice", {{"phase", phase}, {"trial_index", trial}, {"slot", slot}}));
    }
  }
}

}  // namespace anonlab::testing
