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
#include <optional>
#include <string>

#include <json.hpp>

#include "anonlab/service/fixtures.hpp"

namespace anonlab::service {

struct ReportOptions {
  /// Per-group automatic metrics, CSV `group,value`. A row named "average"
  /// adds a point whose perceptual value is the mean of the other rows' groups.
  std::optional<std::filesystem::path> eer_csv;
  std::optional<std::filesystem::path> auc_csv;
  double alpha = 0.05;
};

/// Every analysis of the study. Analyses that cannot run on the available
/// data appear as {"status": "insufficient_data", "reason": ...}.
/// Output is a pure function of the inputs.
nlohmann::ordered_json generate_report(const StudyData& data, const ReportOptions& options = {});

/// Pretty-printed report with a trailing newline.
std::string render_report(const nlohmann::ordered_json& report);

}  // namespace anonlab::service
