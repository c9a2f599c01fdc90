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

#include "anonlab/stats/anova.hpp"

#include <cmath>
#include <limits>

#include "anonlab/error.hpp"
#include "anonlab/stats/descriptive.hpp"
#include "anonlab/stats/distributions.hpp"

namespace anonlab::stats {
namespace {

// Sums of squares below this fraction of the total are treated as zero.
constexpr double kNegligible = 1e-14;

bool negligible(double ss, double total) { return ss <= kNegligible * total; }

// F from two sums of squares, following the zero-denominator conventions:
// no effect gives F = 0, p = 1; effect with no error gives F = inf, p = 0.
TestResult f_result(Method method, double ss_effect, double ss_error, double total, double df1, double df2) {
  TestResult r;
  r.method = method;
  r.df = {df1, df2};
  if (negligible(ss_effect, total)) {
    r.statistic = 0.0;
    r.p_value = 1.0;
    r.degenerate = negligible(ss_error, total);
    return r;
  }
  if (negligible(ss_error, total)) {
    r.statistic = std::numeric_limits<double>::infinity();
    r.p_value = 0.0;
    r.degenerate = true;
    return r;
  }
  r.statistic = (ss_effect / df1) / (ss_error / df2);
  r.p_value = f_sf(r.statistic, df1, df2);
  return r;
}

}  // namespace

void RepeatedMeasuresTable::validate() const {
  if (subject_ids.size() < 2 || condition_ids.size() < 2) {
    throw Error(ErrorCode::IncompleteTable, "repeated-measures table needs >= 2 subjects and >= 2 conditions");
  }
  if (values.size() != subject_ids.size()) {
    throw Error(ErrorCode::IncompleteTable, "row count does not match subject ids");
  }
  for (const auto& row : values) {
    if (row.size() != condition_ids.size()) {
      throw Error(ErrorCode::IncompleteTable, "table has missing cells");
    }
    for (double v : row) {
      if (!std::isfinite(v)) throw Error(ErrorCode::IncompleteTable, "table has non-finite cells");
    }
  }
}

std::vector<double> RepeatedMeasuresTable::condition_column(std::size_t condition) const {
  std::vector<double> out;
  out.reserve(values.size());
  for (const auto& row : values) out.push_back(row.at(condition));
  return out;
}

AnovaDecomposition decompose(const RepeatedMeasuresTable& table) {
  table.validate();
  const std::size_t s = table.values.size();
  const std::size_t c = table.condition_ids.size();
  double grand = 0.0;
  for (const auto& row : table.values) {
    for (double v : row) grand += v;
  }
  grand /= static_cast<double>(s * c);

  AnovaDecomposition d;
  std::vector<double> col_mean(c, 0.0);
  for (std::size_t i = 0; i < s; ++i) {
    const double row_mean = mean(table.values[i]);
    d.ss_subjects += static_cast<double>(c) * (row_mean - grand) * (row_mean - grand);
    for (std::size_t j = 0; j < c; ++j) {
      col_mean[j] += table.values[i][j] / static_cast<double>(s);
      d.ss_total += (table.values[i][j] - grand) * (table.values[i][j] - grand);
    }
  }
  for (double m : col_mean) d.ss_conditions += static_cast<double>(s) * (m - grand) * (m - grand);
  // Residual computed cell-wise rather than by subtraction to avoid cancellation.
  for (std::size_t i = 0; i < s; ++i) {
    const double row_mean = mean(table.values[i]);
    for (std::size_t j = 0; j < c; ++j) {
      const double e = table.values[i][j] - row_mean - col_mean[j] + grand;
      d.ss_error += e * e;
    }
  }
  return d;
}

TestResult repeated_measures_anova(const RepeatedMeasuresTable& table) {
  const auto d = decompose(table);
  const double s = static_cast<double>(table.values.size());
  const double c = static_cast<double>(table.condition_ids.size());
  return f_result(Method::RepeatedMeasuresAnova, d.ss_conditions, d.ss_error, d.ss_total, c - 1.0,
                  (c - 1.0) * (s - 1.0));
}

TestResult one_way_anova(const std::vector<std::vector<double>>& groups) {
  if (groups.size() < 2) throw Error(ErrorCode::TooFewGroups, "one-way ANOVA needs at least two groups");
  double grand = 0.0;
  std::size_t total_n = 0;
  for (const auto& g : groups) {
    if (g.size() < 2) throw Error(ErrorCode::TooFewGroups, "every ANOVA group needs at least two observations");
    for (double v : g) {
      if (!std::isfinite(v)) throw Error(ErrorCode::InvalidSample, "group contains non-finite values");
      grand += v;
    }
    total_n += g.size();
  }
  grand /= static_cast<double>(total_n);

  double ss_between = 0.0, ss_within = 0.0, ss_total = 0.0;
  for (const auto& g : groups) {
    const double m = mean(g);
    ss_between += static_cast<double>(g.size()) * (m - grand) * (m - grand);
    for (double v : g) {
      ss_within += (v - m) * (v - m);
      ss_total += (v - grand) * (v - grand);
    }
  }
  const double k = static_cast<double>(groups.size());
  const double n = static_cast<double>(total_n);
  auto r = f_result(Method::OneWayAnova, ss_between, ss_within, ss_total, k - 1.0, n - k);
  if (negligible(ss_between, ss_total) && negligible(ss_within, ss_total)) {
    // 0 / 0: all observations identical.
    r.statistic = std::numeric_limits<double>::quiet_NaN();
  }
  return r;
}

}  // namespace anonlab::stats
