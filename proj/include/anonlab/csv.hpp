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
#include <string_view>
#include <vector>

namespace anonlab::csv {

struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  /// Index of a header column; throws MalformedInput when absent.
  std::size_t column(std::string_view name) const;
};

/// Splits one line on commas and trims surrounding whitespace. No quoting.
std::vector<std::string> split_line(std::string_view line);

/// Reads a headered CSV. Blank lines and lines starting with '#' are skipped.
Table read(const std::filesystem::path& path);
Table parse(std::string_view text);

double to_double(std::string_view field);
long to_long(std::string_view field);

/// Shortest round-trippable decimal form.
std::string format_double(double value);

}  // namespace anonlab::csv
