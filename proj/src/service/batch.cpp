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

#include "anonlab/service/batch.hpp"

#include <algorithm>
#include <fstream>

#include "anonlab/error.hpp"
#include "anonlab/signal/audio.hpp"

namespace anonlab::service {
namespace {

std::vector<std::filesystem::path> collect_inputs(const std::filesystem::path& input) {
  if (std::filesystem::is_regular_file(input)) return {input};
  if (!std::filesystem::is_directory(input)) throw Error(ErrorCode::MissingFile, "no such input " + input.string());
  std::vector<std::filesystem::path> files;
  for (const auto& entry : std::filesystem::directory_iterator(input)) {
    if (!entry.is_regular_file()) continue;
    auto ext = entry.path().extension().string();
    std::transform(ext.begin(), ext.end(), ext.begin(), [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    if (ext == ".wav") files.push_back(entry.path());
  }
  std::sort(files.begin(), files.end());
  return files;
}

}  // namespace

std::size_t BatchResult::failures() const {
  return static_cast<std::size_t>(std::count_if(files.begin(), files.end(), [](const BatchFile& f) { return !f.ok; }));
}

BatchResult run_batch_anonymize(const BatchOptions& options) {
  options.config.validate();
  const auto inputs = collect_inputs(options.input);
  std::filesystem::create_directories(options.output_dir);

  BatchResult result;
  for (const auto& in : inputs) {
    BatchFile file;
    file.input = in;
    file.output = options.output_dir / in.filename();
    try {
      const auto waveform = signal::load_audio(in);
      const auto anon = mcadams::anonymize(waveform, options.config);
      signal::save_audio(anon.waveform, file.output);
      file.ok = true;
      file.frames = anon.frames;
      file.clipped_frames = anon.clipped_frames;
      file.degenerate_frames = anon.degenerate_frames;
      file.warnings = anon.warnings;
    } catch (const Error& e) {
      file.error = e.what();
      file.error_code = std::string(to_string(e.code()));
    } catch (const std::exception& e) {
      file.error = e.what();
      file.error_code = "io_failure";
    }
    result.files.push_back(std::move(file));
  }

  nlohmann::ordered_json outputs = nlohmann::ordered_json::array();
  nlohmann::ordered_json failures = nlohmann::ordered_json::array();
  for (const auto& f : result.files) {
    if (f.ok) {
      outputs.push_back({{"input", f.input.string()},
                         {"output", f.output.string()},
                         {"frames", f.frames},
                         {"clipped_frames", f.clipped_frames},
                         {"degenerate_frames", f.degenerate_frames},
                         {"warnings", f.warnings}});
    } else {
      failures.push_back({{"input", f.input.string()}, {"error", f.error_code}, {"message", f.error}});
    }
  }
  result.manifest = {{"alpha", options.config.alpha},
                     {"lpc_order", options.config.lpc_order},
                     {"frame_length", options.config.frame_length},
                     {"hop", options.config.hop},
                     {"files", std::move(outputs)},
                     {"failures", std::move(failures)}};

  const auto manifest_path = options.manifest.empty() ? options.output_dir / "manifest.json" : options.manifest;
  std::ofstream out(manifest_path, std::ios::binary | std::ios::trunc);
  out << result.manifest.dump(2) << '\n';
  if (!out) throw Error(ErrorCode::IoFailure, "cannot write manifest " + manifest_path.string());
  return result;
}

}  // namespace anonlab::service
