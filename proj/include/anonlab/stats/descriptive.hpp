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

#include <span>
#include <string>

namespace anonlab::stats {

double mean(std::span<const double> x);
/// Sample variance with the n - 1 denominator (0 for n < 2).
double variance(std::span<const double> x);
double standard_deviation(std::span<const double> x);

struct MeanSd {
  double mean = 0.0;
  double sd = 0.0;
};

MeanSd mean_sd(std::span<const double> x);

/// Rounds half away from zero, as the report tables do.
long round_half_away(double value);

/// "91 ± 9" with both parts rounded half away from zero.
std::string format_mean_sd(const MeanSd& value);

}  // namespace anonlab::stats
