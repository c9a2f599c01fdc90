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
#include <string>
#include <vector>

#include <json.hpp>

#include "anonlab/mcadams/anonymizer.hpp"

namespace anonlab::service {

struct BatchOptions {
  /// A WAV file or a directory of *.wav files (non-recursive).
  std::filesystem::path input;
  std::filesystem::path output_dir;
  mcadams::McAdamsConfig config;
  /// Defaults to output_dir / "manifest.json".
  std::filesystem::path manifest;
};

struct BatchFile {
  std::filesystem::path input;
  std::filesystem::path output;
  bool ok = false;
  std::string error;        // what() of the failure
  std::string error_code;   // snake_case ErrorCode name
  std::size_t frames = 0;
  std::size_t clipped_frames = 0;
  std::size_t degenerate_frames = 0;
  std::vector<std::string> warnings;
};

struct BatchResult {
  std::vector<BatchFile> files;
  nlohmann::ordered_json manifest;
  std::size_t failures() const;
  /// 0 when every file succeeded, 1 otherwise.
  int exit_code() const { return failures() == 0 ? 0 : 1; }
};

/// Anonymizes each input into output_dir under the same file name. Per-file
/// errors are recorded in the manifest and do not stop the batch.
BatchResult run_batch_anonymize(const BatchOptions& options);

}  // namespace anonlab::service
