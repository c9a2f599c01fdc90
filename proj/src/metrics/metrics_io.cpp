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

#include "anonlab/metrics/metrics_io.hpp"

#include <fstream>
#include <map>

#include "anonlab/csv.hpp"
#include "anonlab/error.hpp"

namespace anonlab::metrics {

std::vector<Embedding> read_embeddings(const std::filesystem::path& path) {
  const auto table = csv::read(path);
  if (table.header.size() < 2) throw Error(ErrorCode::MalformedInput, "embedding file needs an id and values");
  std::vector<Embedding> out;
  out.reserve(table.rows.size());
  for (const auto& row : table.rows) {
    Embedding e;
    e.source_id = row[0];
    e.vector.reserve(row.size() - 1);
    for (std::size_t i = 1; i < row.size(); ++i) e.vector.push_back(csv::to_double(row[i]));
    out.push_back(std::move(e));
  }
  return out;
}

void write_embeddings(const std::vector<Embedding>& embeddings, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw Error(ErrorCode::IoFailure, "cannot write " + path.string());
  const std::size_t dim = embeddings.empty() ? 0 : embeddings.front().dim();
  out << "utterance_id";
  for (std::size_t i = 0; i < dim; ++i) out << ",v" << i;
  out << '\n';
  for (const auto& e : embeddings) {
    if (e.dim() != dim) throw Error(ErrorCode::DimensionMismatch, "embeddings differ in dimension");
    out << e.source_id;
    for (double v : e.vector) out << ',' << csv::format_double(v);
    out << '\n';
  }
  if (!out) throw Error(ErrorCode::IoFailure, "write failed for " + path.string());
}

ScoreSet read_scores(const std::filesystem::path& path) {
  const auto table = csv::read(path);
  const auto kind = table.column("kind");
  const auto score = table.column("score");
  ScoreSet out;
  for (const auto& row : table.rows) {
    const double value = csv::to_double(row[score]);
    if (row[kind] == "genuine") {
      out.genuine.push_back(value);
    } else if (row[kind] == "impostor") {
      out.impostor.push_back(value);
    } else {
      throw Error(ErrorCode::MalformedInput, "trial kind must be genuine or impostor, got '" + row[kind] + "'");
    }
  }
  return out;
}

LabeledScores read_labeled_scores(const std::filesystem::path& path) {
  const auto table = csv::read(path);
  const auto score = table.column("score");
  const auto label = table.column("label");
  LabeledScores out;
  for (const auto& row : table.rows) {
    out.scores.push_back(csv::to_double(row[score]));
    out.labels.push_back(static_cast<int>(csv::to_long(row[label])));
  }
  return out;
}

std::vector<Trial> read_trials(const std::filesystem::path& path) {
  const auto table = csv::read(path);
  const auto id = table.column("trial_id");
  const auto enroll = table.column("enroll_id");
  const auto verify = table.column("verify_id");
  const auto kind = table.column("kind");
  std::vector<Trial> out;
  for (const auto& row : table.rows) {
    if (row[kind] != "genuine" && row[kind] != "impostor") {
      throw Error(ErrorCode::MalformedInput, "trial kind must be genuine or impostor");
    }
    out.push_back({row[id], row[enroll], row[verify], row[kind] == "genuine"});
  }
  return out;
}

ScoreSet score_trials(const std::vector<Embedding>& embeddings, const std::vector<Trial>& trials) {
  std::map<std::string, const Embedding*> by_id;
  for (const auto& e : embeddings) by_id[e.source_id] = &e;
  auto lookup = [&](const std::string& key) -> const Embedding& {
    const auto it = by_id.find(key);
    if (it == by_id.end()) throw Error(ErrorCode::KeyMismatch, "no embedding for utterance '" + key + "'");
    return *it->second;
  };
  ScoreSet out;
  for (const auto& t : trials) {
    const double s = cosine_similarity(lookup(t.enroll_id), lookup(t.verify_id));
    (t.genuine ? out.genuine : out.impostor).push_back(s);
  }
  return out;
}

std::vector<std::pair<std::string, double>> read_group_metric(const std::filesystem::path& path) {
  const auto table = csv::read(path);
  if (table.header.size() != 2) throw Error(ErrorCode::MalformedInput, "group metric file needs `group, value`");
  std::vector<std::pair<std::string, double>> out;
  for (const auto& row : table.rows) out.emplace_back(row[0], csv::to_double(row[1]));
  return out;
}

}  // namespace anonlab::metrics
