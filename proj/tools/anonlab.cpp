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

// anonlab command line: anonymization batches, the listening-study server,
// reports and metric utilities.

#include <csignal>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "anonlab/error.hpp"
#include "anonlab/metrics/embedding.hpp"
#include "anonlab/metrics/metrics_io.hpp"
#include "anonlab/metrics/verification.hpp"
#include "anonlab/protocol/export.hpp"
#include "anonlab/protocol/store.hpp"
#include "anonlab/service/batch.hpp"
#include "anonlab/service/fixtures.hpp"
#include "anonlab/service/report.hpp"
#include "anonlab/service/server.hpp"
#include "anonlab/signal/audio.hpp"

namespace {

using namespace anonlab;

anonlab::service::StudyServer* g_server = nullptr;

void on_signal(int) {
  if (g_server) g_server->stop();
}

void write_text(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  out << text;
  if (!out) throw Error(ErrorCode::IoFailure, "cannot write " + path);
}

std::optional<std::filesystem::path> opt_path(const std::string& s) {
  if (s.empty()) return std::nullopt;
  return std::filesystem::path(s);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Speech anonymization and listening-study toolkit"};
  app.require_subcommand(1);

  // anonymize
  service::BatchOptions batch;
  std::string manifest;
  auto* anonymize = app.add_subcommand("anonymize", "McAdams-anonymize a WAV file or a directory of WAV files");
  anonymize->add_option("--in", batch.input, "Input WAV file or directory")->required();
  anonymize->add_option("--out", batch.output_dir, "Output directory")->required();
  anonymize->add_option("--alpha", batch.config.alpha, "McAdams coefficient")->capture_default_str();
  anonymize->add_option("--lpc-order", batch.config.lpc_order, "LPC order")->capture_default_str();
  anonymize->add_option("--frame-length", batch.config.frame_length, "Frame length in samples")->capture_default_str();
  anonymize->add_option("--hop", batch.config.hop, "Hop in samples")->capture_default_str();
  anonymize->add_option("--manifest", manifest, "Manifest path (default OUT/manifest.json)");

  // serve
  std::string config_path, audio_dir, store_path, host = "127.0.0.1", key, ui_dir, eer, auc;
  int port = 8080;
  auto* serve = app.add_subcommand("serve", "Run the listening-study HTTP service");
  serve->add_option("--config", config_path, "Study config JSON")->required();
  serve->add_option("--audio", audio_dir, "Directory holding the stimuli")->required();
  serve->add_option("--store", store_path, "Append-only response log")->required();
  serve->add_option("--host", host)->capture_default_str();
  serve->add_option("--port", port)->capture_default_str();
  serve->add_option("--key", key, "Shared study key required in X-Study-Key");
  serve->add_option("--ui", ui_dir, "Directory with the browser client, served under /ui");
  serve->add_option("--eer", eer, "Per-group EER CSV for /report correlations");
  serve->add_option("--auc", auc, "Per-group AUC CSV for /report correlations");

  // report
  std::string out_path;
  auto* report = app.add_subcommand("report", "Build the report from a response store");
  report->add_option("--store", store_path, "Response log")->required();
  report->add_option("--eer", eer);
  report->add_option("--auc", auc);
  report->add_option("--out", out_path, "Output JSON (default stdout)");

  // stats
  std::string table3, table5, listeners;
  auto* stats = app.add_subcommand("stats", "Build the report from accuracy/quality CSV tables");
  stats->add_option("--table3", table3, "Accuracy CSV: listener,group,condition,accuracy_percent");
  stats->add_option("--table5", table5, "Quality CSV: listener,group,variant,quality_percent");
  stats->add_option("--listeners", listeners, "Listener profiles CSV");
  stats->add_option("--eer", eer);
  stats->add_option("--auc", auc);
  stats->add_option("--out", out_path, "Output JSON (default stdout)");

  // export
  std::string out_dir;
  bool partial = false;
  auto* exp = app.add_subcommand("export", "Export a response store to CSV tables");
  exp->add_option("--store", store_path, "Response log")->required();
  exp->add_option("--out", out_dir, "Output directory")->required();
  exp->add_flag("--partial", partial, "Include unfinished sessions");

  // metrics
  std::string scores, labeled, embeddings, trials;
  auto* metrics_cmd = app.add_subcommand("metrics", "EER and AUC from score files");
  metrics_cmd->add_option("--scores", scores, "trial_id,kind,score");
  metrics_cmd->add_option("--labeled", labeled, "utterance_id,score,label");
  metrics_cmd->add_option("--embeddings", embeddings, "utterance_id,v0,...");
  metrics_cmd->add_option("--trials", trials, "trial_id,enroll_id,verify_id,kind");
  metrics_cmd->add_option("--out", out_path, "Output JSON (default stdout)");

  // embed
  std::string embed_in;
  auto* embed = app.add_subcommand("embed", "Reference log-mel embeddings for WAV files");
  embed->add_option("--in", embed_in, "WAV file or directory")->required();
  embed->add_option("--out", out_path, "Embeddings CSV")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (*anonymize) {
      batch.manifest = manifest;
      const auto result = service::run_batch_anonymize(batch);
      for (const auto& f : result.files) {
        if (!f.ok) std::cerr << "failed: " << f.input.string() << ": " << f.error << "\n";
      }
      std::cerr << result.files.size() - result.failures() << " of " << result.files.size() << " files anonymized\n";
      return result.exit_code();
    }
    if (*serve) {
      service::ServerOptions options;
      options.config = protocol::load_study_config(config_path);
      options.audio_dir = audio_dir;
      options.store_path = store_path;
      if (!key.empty()) options.study_key = key;
      options.ui_dir = opt_path(ui_dir);
      options.report.eer_csv = opt_path(eer);
      options.report.auc_csv = opt_path(auc);
      service::StudyServer server(std::move(options));
      const int bound = server.bind(host, port);
      g_server = &server;
      std::signal(SIGINT, on_signal);
      std::signal(SIGTERM, on_signal);
      std::cerr << "listening on " << host << ":" << bound << "\n";
      server.listen();
      g_server = nullptr;
      return 0;
    }
    if (*report) {
      const auto config = protocol::read_store_study(store_path);
      const auto sessions = protocol::replay_sessions(config, protocol::ResponseStore::read_all(store_path));
      service::ReportOptions options{opt_path(eer), opt_path(auc)};
      write_text(out_path, service::render_report(
                               service::generate_report(service::study_data_from_sessions(config, sessions), options)));
      return 0;
    }
    if (*stats) {
      if (table3.empty() && table5.empty()) throw Error(ErrorCode::MalformedInput, "give --table3 and/or --table5");
      const auto data = service::load_fixture_data(opt_path(table3), opt_path(table5), opt_path(listeners));
      service::ReportOptions options{opt_path(eer), opt_path(auc)};
      write_text(out_path, service::render_report(service::generate_report(data, options)));
      return 0;
    }
    if (*exp) {
      const auto config = protocol::read_store_study(store_path);
      const auto sessions = protocol::replay_sessions(config, protocol::ResponseStore::read_all(store_path));
      const auto paths = protocol::export_responses(config, sessions, out_dir, partial);
      std::cerr << "wrote " << paths.accuracy.string() << ", " << paths.quality.string() << ", "
                << paths.listeners.string() << ", " << paths.responses.string() << "\n";
      return 0;
    }
    if (*metrics_cmd) {
      nlohmann::ordered_json out;
      std::optional<metrics::ScoreSet> set;
      if (!scores.empty()) set = metrics::read_scores(scores);
      if (!embeddings.empty() || !trials.empty()) {
        if (embeddings.empty() || trials.empty()) throw Error(ErrorCode::MalformedInput, "--embeddings needs --trials");
        set = metrics::score_trials(metrics::read_embeddings(embeddings), metrics::read_trials(trials));
      }
      if (set) {
        const auto e = metrics::compute_eer(*set);
        out["eer"] = {{"eer", e.eer}, {"threshold", e.threshold}, {"genuine", set->genuine.size()},
                      {"impostor", set->impostor.size()}};
      }
      if (!labeled.empty()) out["auc"] = metrics::compute_auc(metrics::read_labeled_scores(labeled));
      if (out.empty()) throw Error(ErrorCode::MalformedInput, "give --scores, --embeddings/--trials or --labeled");
      write_text(out_path, out.dump(2) + "\n");
      return 0;
    }
    if (*embed) {
      std::vector<std::filesystem::path> files;
      if (std::filesystem::is_directory(embed_in)) {
        for (const auto& e : std::filesystem::directory_iterator(embed_in)) {
          if (e.is_regular_file() && e.path().extension() == ".wav") files.push_back(e.path());
        }
        std::sort(files.begin(), files.end());
      } else {
        files.push_back(embed_in);
      }
      std::vector<metrics::Embedding> out;
      for (const auto& f : files) {
        auto emb = metrics::reference_embed(signal::load_audio(f));
        emb.source_id = f.stem().string();
        out.push_back(std::move(emb));
      }
      metrics::write_embeddings(out, out_path);
      return 0;
    }
  } catch (const Error& e) {
    std::cerr << "error (" << to_string(e.code()) << "): " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
