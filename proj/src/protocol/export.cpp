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

#include "anonlab/protocol/export.hpp"

#include <fstream>
#include <initializer_list>

#include "anonlab/csv.hpp"
#include "anonlab/error.hpp"

namespace anonlab::protocol {
namespace {

class CsvWriter {
 public:
  CsvWriter(const std::filesystem::path& path, std::initializer_list<std::string_view> header) : path_(path) {
    if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
    out_.open(path, std::ios::binary | std::ios::trunc);
    if (!out_) throw Error(ErrorCode::IoFailure, "cannot write " + path.string());
    row(std::vector<std::string>(header.begin(), header.end()));
  }

  void row(const std::vector<std::string>& fields) {
    for (std::size_t i = 0; i < fields.size(); ++i) {
      if (fields[i].find_first_of(",\n\r") != std::string::npos) {
        throw Error(ErrorCode::IoFailure, "field '" + fields[i] + "' cannot be written to CSV");
      }
      if (i > 0) out_ << ',';
      out_ << fields[i];
    }
    out_ << '\n';
  }

  void close() {
    out_.close();
    if (!out_) throw Error(ErrorCode::IoFailure, "write to " + path_.string() + " failed");
  }

 private:
  std::filesystem::path path_;
  std::ofstream out_;
};

std::string num(double v) { return csv::format_double(v); }

}  // namespace

void write_accuracy_csv(const std::filesystem::path& path, const std::vector<AccuracyRow>& rows) {
  CsvWriter w(path, {"listener", "group", "condition", "accuracy_percent"});
  for (const auto& r : rows) {
    w.row({r.listener_id, r.group, std::string(to_string(r.condition)), num(r.accuracy_percent)});
  }
  w.close();
}

std::vector<AccuracyRow> read_accuracy_csv(const std::filesystem::path& path) {
  const auto t = csv::read(path);
  const auto cl = t.column("listener"), cg = t.column("group"), cc = t.column("condition"),
             ca = t.column("accuracy_percent");
  std::vector<AccuracyRow> rows;
  for (const auto& f : t.rows) {
    AccuracyRow r;
    r.listener_id = f[cl];
    r.group = f[cg];
    r.condition = parse_condition(f[cc]);
    r.accuracy_percent = csv::to_double(f[ca]);
    rows.push_back(std::move(r));
  }
  return rows;
}

void write_quality_csv(const std::filesystem::path& path, const std::vector<QualityRow>& rows) {
  CsvWriter w(path, {"listener", "group", "variant", "quality_percent"});
  for (const auto& r : rows) w.row({r.listener_id, r.group, r.original ? "orig" : "anon", num(r.quality_percent)});
  w.close();
}

std::vector<QualityRow> read_quality_csv(const std::filesystem::path& path) {
  const auto t = csv::read(path);
  const auto cl = t.column("listener"), cg = t.column("group"), cv = t.column("variant"),
             cq = t.column("quality_percent");
  std::vector<QualityRow> rows;
  for (const auto& f : t.rows) {
    QualityRow r;
    r.listener_id = f[cl];
    r.group = f[cg];
    if (f[cv] != "orig" && f[cv] != "anon") throw Error(ErrorCode::MalformedInput, "variant must be orig or anon");
    r.original = f[cv] == "orig";
    r.quality_percent = csv::to_double(f[cq]);
    rows.push_back(std::move(r));
  }
  return rows;
}

void write_listeners_csv(const std::filesystem::path& path, const std::vector<ListenerProfile>& listeners) {
  CsvWriter w(path, {"listener", "native_language", "german_proficiency", "expertise", "clinical_years",
                     "speech_processing_years", "engineering_years"});
  for (const auto& l : listeners) {
    w.row({l.listener_id, l.native_language, std::string(to_string(l.german_proficiency)),
           std::string(to_string(l.expertise)), num(l.clinical_years), num(l.speech_processing_years),
           num(l.engineering_years)});
  }
  w.close();
}

std::vector<ListenerProfile> read_listeners_csv(const std::filesystem::path& path) {
  const auto t = csv::read(path);
  const auto cl = t.column("listener"), cn = t.column("native_language"), cp = t.column("german_proficiency"),
             ce = t.column("expertise"), c1 = t.column("clinical_years"), c2 = t.column("speech_processing_years"),
             c3 = t.column("engineering_years");
  std::vector<ListenerProfile> out;
  for (const auto& f : t.rows) {
    ListenerProfile l;
    l.listener_id = f[cl];
    l.native_language = f[cn];
    l.german_proficiency = parse_proficiency(f[cp]);
    l.expertise = parse_expertise(f[ce]);
    l.clinical_years = csv::to_double(f[c1]);
    l.speech_processing_years = csv::to_double(f[c2]);
    l.engineering_years = csv::to_double(f[c3]);
    out.push_back(std::move(l));
  }
  return out;
}

void write_responses_csv(const std::filesystem::path& path, const std::vector<ResponseRecord>& records) {
  CsvWriter w(path, {"session_id", "listener", "phase", "trial_index", "chosen_slot", "rating", "play_count_a",
                     "play_count_b", "timestamp_ms"});
  for (const auto& r : records) {
    w.row({r.session_id, r.listener_id, std::string(to_string(r.phase)), std::to_string(r.trial_index),
           r.chosen_slot ? std::string(to_string(*r.chosen_slot)) : "", r.rating ? std::to_string(*r.rating) : "",
           std::to_string(r.play_count_a), std::to_string(r.play_count_b), std::to_string(r.timestamp_ms)});
  }
  w.close();
}

std::vector<ResponseRecord> read_responses_csv(const std::filesystem::path& path) {
  const auto t = csv::read(path);
  const auto cs = t.column("session_id"), cl = t.column("listener"), cp = t.column("phase"),
             ct = t.column("trial_index"), cc = t.column("chosen_slot"), cr = t.column("rating"),
             ca = t.column("play_count_a"), cb = t.column("play_count_b"), cm = t.column("timestamp_ms");
  std::vector<ResponseRecord> out;
  for (const auto& f : t.rows) {
    ResponseRecord r;
    r.session_id = f[cs];
    r.listener_id = f[cl];
    r.phase = parse_phase(f[cp]);
    r.trial_index = static_cast<std::size_t>(csv::to_long(f[ct]));
    if (!f[cc].empty()) r.chosen_slot = parse_slot(f[cc]);
    if (!f[cr].empty()) r.rating = static_cast<int>(csv::to_long(f[cr]));
    r.play_count_a = static_cast<int>(csv::to_long(f[ca]));
    r.play_count_b = static_cast<int>(csv::to_long(f[cb]));
    r.timestamp_ms = csv::to_long(f[cm]);
    out.push_back(std::move(r));
  }
  return out;
}

ExportPaths export_responses(const StudyConfig& config, const std::vector<SessionState>& sessions,
                             const std::filesystem::path& out_dir, bool include_partial) {
  std::vector<SessionState> chosen;
  for (const auto& s : sessions) {
    if (include_partial || s.complete()) chosen.push_back(s);
  }
  const auto scores = score_sessions(config, chosen);
  std::vector<ListenerProfile> listeners;
  std::vector<ResponseRecord> records;
  for (const auto& s : chosen) {
    listeners.push_back(s.listener());
    records.insert(records.end(), s.responses().begin(), s.responses().end());
  }
  ExportPaths paths{out_dir / "accuracy.csv", out_dir / "quality.csv", out_dir / "listeners.csv",
                    out_dir / "responses.csv"};
  write_accuracy_csv(paths.accuracy, scores.accuracy);
  write_quality_csv(paths.quality, scores.quality);
  write_listeners_csv(paths.listeners, listeners);
  write_responses_csv(paths.responses, records);
  return paths;
}

}  // namespace anonlab::protocol
