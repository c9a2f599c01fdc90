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

#include "anonlab/service/report.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <functional>
#include <map>
#include <set>

#include "anonlab/error.hpp"
#include "anonlab/metrics/metrics_io.hpp"
#include "anonlab/stats/anova.hpp"
#include "anonlab/stats/descriptive.hpp"
#include "anonlab/stats/fdr.hpp"
#include "anonlab/stats/mann_whitney.hpp"
#include "anonlab/stats/parametric.hpp"
#include "anonlab/stats/shapiro_wilk.hpp"

namespace anonlab::service {
namespace {

using json = nlohmann::ordered_json;
using protocol::Condition;

// Insufficient data is reported through this exception and caught per analysis.
struct Insufficient {
  std::string reason;
};

json number(double v) {
  if (std::isfinite(v)) return v;
  if (std::isnan(v)) return "nan";
  return v > 0 ? "inf" : "-inf";
}

json test_json(const stats::TestResult& r) {
  json j;
  j["method"] = std::string(stats::to_string(r.method));
  j["statistic"] = number(r.statistic);
  json df = json::array();
  for (double d : r.df) df.push_back(number(d));
  j["df"] = std::move(df);
  j["p_value"] = r.p_value;
  j["degenerate"] = r.degenerate;
  return j;
}

json mean_sd_json(std::span<const double> values) {
  if (values.empty()) return nullptr;
  const auto ms = stats::mean_sd(values);
  return {{"mean", ms.mean}, {"sd", ms.sd}, {"n", values.size()}, {"text", stats::format_mean_sd(ms)}};
}

// Runs one analysis; insufficient data and statistical errors become markers.
json guarded(const std::function<json()>& analysis) {
  try {
    return analysis();
  } catch (const Insufficient& e) {
    return {{"status", "insufficient_data"}, {"reason", e.reason}};
  } catch (const Error& e) {
    return {{"status", "insufficient_data"}, {"reason", std::string(to_string(e.code())) + ": " + e.what()}};
  }
}

void require(bool ok, const std::string& reason) {
  if (!ok) throw Insufficient{reason};
}

// listeners x groups, missing cells empty.
struct Grid {
  std::vector<std::string> listeners;
  std::vector<std::string> groups;
  std::vector<std::vector<std::optional<double>>> cells;

  std::vector<std::size_t> complete_rows() const {
    std::vector<std::size_t> rows;
    for (std::size_t i = 0; i < cells.size(); ++i) {
      if (std::all_of(cells[i].begin(), cells[i].end(), [](const auto& c) { return c.has_value(); })) rows.push_back(i);
    }
    return rows;
  }
  std::vector<double> column(std::size_t g, const std::vector<std::size_t>& rows) const {
    std::vector<double> out;
    for (auto r : rows) {
      if (cells[r][g]) out.push_back(*cells[r][g]);
    }
    return out;
  }
  std::vector<double> row(std::size_t r) const {
    std::vector<double> out;
    for (const auto& c : cells[r]) {
      if (c) out.push_back(*c);
    }
    return out;
  }
  std::vector<double> all(const std::vector<std::size_t>& rows) const {
    std::vector<double> out;
    for (auto r : rows) {
      const auto v = row(r);
      out.insert(out.end(), v.begin(), v.end());
    }
    return out;
  }
  std::vector<std::size_t> every_row() const {
    std::vector<std::size_t> rows(listeners.size());
    for (std::size_t i = 0; i < rows.size(); ++i) rows[i] = i;
    return rows;
  }
};

template <typename Row, typename Pick>
Grid make_grid(const StudyData& data, const std::vector<Row>& rows, Pick pick) {
  Grid g;
  g.listeners = data.listener_ids;
  g.groups = data.groups;
  g.cells.assign(g.listeners.size(), std::vector<std::optional<double>>(g.groups.size()));
  std::map<std::string, std::size_t> li, gi;
  for (std::size_t i = 0; i < g.listeners.size(); ++i) li[g.listeners[i]] = i;
  for (std::size_t i = 0; i < g.groups.size(); ++i) gi[g.groups[i]] = i;
  for (const auto& r : rows) {
    const auto value = pick(r);
    if (!value) continue;
    g.cells.at(li.at(r.listener_id)).at(gi.at(r.group)) = *value;
  }
  return g;
}

Grid accuracy_grid(const StudyData& data, Condition c) {
  return make_grid(data, data.accuracy, [c](const protocol::AccuracyRow& r) -> std::optional<double> {
    if (r.condition != c) return std::nullopt;
    return r.accuracy_percent;
  });
}

Grid quality_grid(const StudyData& data, bool original) {
  return make_grid(data, data.quality, [original](const protocol::QualityRow& r) -> std::optional<double> {
    if (r.original != original) return std::nullopt;
    return r.quality_percent;
  });
}

Grid difference(const Grid& a, const Grid& b) {
  Grid d = a;
  for (std::size_t i = 0; i < d.cells.size(); ++i) {
    for (std::size_t j = 0; j < d.cells[i].size(); ++j) {
      d.cells[i][j] = a.cells[i][j] && b.cells[i][j] ? std::optional(*a.cells[i][j] - *b.cells[i][j]) : std::nullopt;
    }
  }
  return d;
}

// Listener subsets used by summary rows and subgroup comparisons.
struct Subsets {
  bool known = false;
  std::vector<std::size_t> non_native, native, expert, non_expert;
};

Subsets subsets_of(const StudyData& data) {
  Subsets s;
  s.known = !data.listeners.empty();
  for (std::size_t i = 0; i < data.listener_ids.size(); ++i) {
    const auto* p = data.profile(data.listener_ids[i]);
    if (!p) {
      s.known = false;
      continue;
    }
    (p->is_native() ? s.native : s.non_native).push_back(i);
    (p->expertise == protocol::Expertise::Expert ? s.expert : s.non_expert).push_back(i);
  }
  return s;
}

json summary_row(const Grid& g, const std::string& label, const std::vector<std::size_t>& rows) {
  json values = json::array();
  for (std::size_t c = 0; c < g.groups.size(); ++c) values.push_back(mean_sd_json(g.column(c, rows)));
  return {{"label", label}, {"values", std::move(values)}, {"average", mean_sd_json(g.all(rows))}};
}

json table_json(const Grid& g, const Subsets& s) {
  json rows = json::array();
  for (std::size_t i = 0; i < g.listeners.size(); ++i) {
    json values = json::array();
    for (const auto& c : g.cells[i]) values.push_back(c ? json(*c) : json(nullptr));
    const auto own = g.row(i);
    rows.push_back({{"listener", g.listeners[i]}, {"values", std::move(values)}, {"average", mean_sd_json(own)}});
  }
  json summary = json::array();
  if (s.known) {
    summary.push_back(summary_row(g, "non_native", s.non_native));
    summary.push_back(summary_row(g, "native", s.native));
  }
  summary.push_back(summary_row(g, "all", g.every_row()));
  return {{"groups", g.groups}, {"rows", std::move(rows)}, {"summary", std::move(summary)}};
}

stats::RepeatedMeasuresTable rm_table(const Grid& g) {
  const auto rows = g.complete_rows();
  require(rows.size() >= 2, "needs at least two listeners with every group filled");
  require(g.groups.size() >= 2, "needs at least two groups");
  stats::RepeatedMeasuresTable t;
  t.condition_ids = g.groups;
  for (auto r : rows) {
    t.subject_ids.push_back(g.listeners[r]);
    t.values.push_back(g.row(r));
  }
  return t;
}

// Upper-triangular matrix of BH-adjusted paired-t p-values between groups.
json pairwise_json(const Grid& g, double alpha) {
  const auto table = rm_table(g);
  const std::size_t k = table.condition_ids.size();
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  std::vector<double> raw;
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = i + 1; j < k; ++j) {
      pairs.emplace_back(i, j);
      const auto x = table.condition_column(i), y = table.condition_column(j);
      raw.push_back(stats::paired_t_test(x, y).p_value);
    }
  }
  const auto fdr = stats::bh_fdr(raw, alpha);
  auto blank = [k] {
    json m = json::array();
    for (std::size_t i = 0; i < k; ++i) {
      json row = json::array();
      for (std::size_t j = 0; j < k; ++j) row.push_back(i == j ? json("NA") : json(nullptr));
      m.push_back(std::move(row));
    }
    return m;
  };
  json adjusted = blank(), unadjusted = blank(), significant = blank();
  for (std::size_t n = 0; n < pairs.size(); ++n) {
    const auto [i, j] = pairs[n];
    adjusted[i][j] = fdr.adjusted_p[n];
    unadjusted[i][j] = fdr.raw_p[n];
    significant[i][j] = static_cast<bool>(fdr.significant[n]);
  }
  return {{"method", "paired_t"},
          {"correction", "benjamini_hochberg"},
          {"alpha", alpha},
          {"groups", table.condition_ids},
          {"listeners", table.subject_ids.size()},
          {"adjusted_p", std::move(adjusted)},
          {"raw_p", std::move(unadjusted)},
          {"significant", std::move(significant)}};
}

json normality_json(const Grid& g) {
  json out = json::array();
  const auto rows = g.every_row();
  for (std::size_t c = 0; c < g.groups.size(); ++c) {
    const auto column = g.column(c, rows);
    out.push_back({{"group", g.groups[c]}, {"shapiro_wilk", guarded([&] { return test_json(stats::shapiro_wilk(column)); })}});
  }
  return out;
}

std::vector<double> listener_means(const Grid& g, const std::vector<std::size_t>& rows) {
  std::vector<double> out;
  for (auto r : rows) {
    const auto v = g.row(r);
    if (!v.empty()) out.push_back(stats::mean(v));
  }
  return out;
}

json two_sample_json(std::span<const double> x, std::span<const double> y, const std::string& x_label,
                     const std::string& y_label, const std::function<json()>& test) {
  return {{x_label, mean_sd_json(x)}, {y_label, mean_sd_json(y)}, {"test", guarded(test)}};
}

json mann_whitney_json(std::span<const double> x, std::span<const double> y) {
  const auto r = stats::mann_whitney_u(x, y, stats::MannWhitneyMode::Auto);
  auto j = test_json(r);
  j["u_x"] = r.u_x;
  j["u_y"] = r.u_y;
  return j;
}

// Discrimination MW at two granularities plus Welch on quality, for one split.
json subgroup_json(const StudyData& data, const std::vector<std::size_t>& a, const std::vector<std::size_t>& b,
                   const std::string& a_label, const std::string& b_label) {
  require(!a.empty() && !b.empty(), "needs listeners in both " + a_label + " and " + b_label);
  json out;
  json discrimination;
  for (auto c : {Condition::ZeroShot, Condition::FewShot}) {
    const auto g = accuracy_grid(data, c);
    const auto xa = g.all(a), xb = g.all(b);
    const auto ma = listener_means(g, a), mb = listener_means(g, b);
    discrimination[c == Condition::ZeroShot ? "zero_shot" : "few_shot"] = {
        {"cells", two_sample_json(xa, xb, a_label, b_label, [&] {
           require(!xa.empty() && !xb.empty(), "no accuracy cells");
           return mann_whitney_json(xa, xb);
         })},
        {"listener_means", two_sample_json(ma, mb, a_label, b_label, [&] {
           require(!ma.empty() && !mb.empty(), "no accuracy cells");
           return mann_whitney_json(ma, mb);
         })}};
  }
  out["discrimination"] = std::move(discrimination);

  const auto orig = quality_grid(data, true), anon = quality_grid(data, false);
  const auto degr = difference(orig, anon);
  json quality;
  for (const auto& [name, grid] : {std::pair<std::string, const Grid*>{"original", &orig},
                                   {"anonymized", &anon},
                                   {"degradation", &degr}}) {
    const auto xa = grid->all(a), xb = grid->all(b);
    auto entry = two_sample_json(xa, xb, a_label, b_label, [&] {
      require(xa.size() >= 2 && xb.size() >= 2, "needs at least two quality cells per subgroup");
      return test_json(stats::unpaired_t_test(xa, xb));
    });
    if (!xa.empty() && !xb.empty()) entry["difference"] = stats::mean(xb) - stats::mean(xa);
    quality[name] = std::move(entry);
  }
  out["quality"] = std::move(quality);
  return out;
}

bool is_control_group(const std::string& group) {
  std::string lower(group);
  std::transform(lower.begin(), lower.end(), lower.begin(), [](unsigned char ch) { return static_cast<char>(std::tolower(ch)); });
  return lower.rfind("control", 0) == 0 || lower.rfind("ctrl", 0) == 0;
}

json gender_json(const StudyData& data) {
  require(!data.speakers.empty(), "no stimulus pairs carry speaker_gender");
  json out;
  for (auto c : {Condition::ZeroShot, Condition::FewShot}) {
    auto compare = [&](const std::string& label, const std::function<bool(const std::string&)>& in_group) {
      std::vector<double> male, female;
      for (const auto& s : data.speakers) {
        if (s.condition != c || !in_group(s.group)) continue;
        (s.speaker_gender == "male" ? male : female).push_back(s.accuracy_percent);
      }
      return json{{"group", label}, {"male", mean_sd_json(male)}, {"female", mean_sd_json(female)},
                  {"test", guarded([&] {
                     require(!male.empty() && !female.empty(), "needs both male and female speakers");
                     return mann_whitney_json(male, female);
                   })}};
    };
    json rows = json::array();
    for (const auto& g : data.groups) rows.push_back(compare(g, [&](const std::string& x) { return x == g; }));
    rows.push_back(compare("patients", [](const std::string& x) { return !is_control_group(x); }));
    rows.push_back(compare("controls", [](const std::string& x) { return is_control_group(x); }));
    out[c == Condition::ZeroShot ? "zero_shot" : "few_shot"] = std::move(rows);
  }
  return out;
}

// Group-level Pearson correlations between perceptual and automatic metrics.
json correlation_json(const StudyData& data, const ReportOptions& options, const Subsets& subsets) {
  require(options.eer_csv || options.auc_csv, "no automatic metric files supplied");
  std::vector<std::pair<std::string, double>> eer, auc;
  if (options.eer_csv) eer = metrics::read_group_metric(*options.eer_csv);
  if (options.auc_csv) auc = metrics::read_group_metric(*options.auc_csv);

  const auto zero = accuracy_grid(data, Condition::ZeroShot), few = accuracy_grid(data, Condition::FewShot);
  const auto orig = quality_grid(data, true), anon = quality_grid(data, false);

  auto correlate = [&](const std::vector<std::pair<std::string, double>>& metric, const Grid& grid,
                       const std::vector<std::size_t>& rows) {
    std::vector<double> x, y;
    std::vector<std::string> used;
    std::vector<double> perceptual_for_average;
    bool want_average = false;
    for (const auto& [group, value] : metric) {
      if (group == "average") {
        want_average = true;
        continue;
      }
      const auto it = std::find(grid.groups.begin(), grid.groups.end(), group);
      if (it == grid.groups.end()) continue;
      const auto column = grid.column(static_cast<std::size_t>(it - grid.groups.begin()), rows);
      if (column.empty()) continue;
      x.push_back(value);
      y.push_back(stats::mean(column));
      used.push_back(group);
    }
    if (want_average && !y.empty()) {
      const auto avg = std::find_if(metric.begin(), metric.end(), [](const auto& p) { return p.first == "average"; });
      x.push_back(avg->second);
      y.push_back(stats::mean(y));
      used.push_back("average");
    }
    json points = json::array();
    for (std::size_t i = 0; i < x.size(); ++i) points.push_back({{"group", used[i]}, {"metric", x[i]}, {"perceptual", y[i]}});
    return json{{"points", std::move(points)}, {"test", guarded([&] {
                   require(x.size() >= 3, "needs at least three groups shared by the metric file and the data");
                   return test_json(stats::pearson_correlation(x, y));
                 })}};
  };

  std::vector<std::pair<std::string, std::vector<std::size_t>>> listener_sets{{"all", zero.every_row()}};
  if (subsets.known) {
    listener_sets.emplace_back("non_native", subsets.non_native);
    listener_sets.emplace_back("native", subsets.native);
  }
  json rows = json::array();
  for (const auto& [label, members] : listener_sets) {
    if (!eer.empty()) {
      rows.push_back({{"listeners", label}, {"pair", "eer_vs_accuracy_zero_shot"}, {"result", correlate(eer, zero, members)}});
      rows.push_back({{"listeners", label}, {"pair", "eer_vs_accuracy_few_shot"}, {"result", correlate(eer, few, members)}});
    }
    if (!auc.empty()) {
      rows.push_back({{"listeners", label}, {"pair", "auc_vs_quality_anonymized"}, {"result", correlate(auc, anon, members)}});
      rows.push_back({{"listeners", label}, {"pair", "auc_vs_quality_original"}, {"result", correlate(auc, orig, members)}});
    }
  }
  return rows;
}

json discrimination_json(const StudyData& data, const Subsets& subsets, double alpha) {
  json out;
  for (auto c : {Condition::ZeroShot, Condition::FewShot}) {
    const auto g = accuracy_grid(data, c);
    json section;
    section["table"] = table_json(g, subsets);
    section["repeated_measures_anova"] = guarded([&] { return test_json(stats::repeated_measures_anova(rm_table(g))); });
    section["pairwise"] = guarded([&] { return pairwise_json(g, alpha); });
    section["normality"] = normality_json(g);
    out[c == Condition::ZeroShot ? "zero_shot" : "few_shot"] = std::move(section);
  }
  return out;
}

json quality_json(const StudyData& data, const Subsets& subsets, double alpha) {
  const auto orig = quality_grid(data, true), anon = quality_grid(data, false);
  const auto degr = difference(orig, anon);
  json out;
  out["original"] = {{"table", table_json(orig, subsets)}, {"pairwise", guarded([&] { return pairwise_json(orig, alpha); })}};
  out["anonymized"] = {{"table", table_json(anon, subsets)}, {"pairwise", guarded([&] { return pairwise_json(anon, alpha); })}};

  out["original_vs_anonymized"] = guarded([&] {
    std::vector<double> x, y;
    for (std::size_t i = 0; i < degr.cells.size(); ++i) {
      for (std::size_t j = 0; j < degr.cells[i].size(); ++j) {
        if (!degr.cells[i][j]) continue;
        x.push_back(*orig.cells[i][j]);
        y.push_back(*anon.cells[i][j]);
      }
    }
    require(x.size() >= 2, "needs at least two cells rated in both variants");
    json per_group = json::array();
    std::vector<double> raw;
    std::vector<json> tests;
    for (std::size_t c = 0; c < degr.groups.size(); ++c) {
      std::vector<double> gx, gy;
      for (std::size_t i = 0; i < degr.cells.size(); ++i) {
        if (!degr.cells[i][c]) continue;
        gx.push_back(*orig.cells[i][c]);
        gy.push_back(*anon.cells[i][c]);
      }
      if (gx.size() < 2) {
        tests.push_back(json{{"status", "insufficient_data"}, {"reason", "fewer than two listeners rated this group"}});
        continue;
      }
      const auto t = stats::paired_t_test(gx, gy);
      raw.push_back(t.p_value);
      tests.push_back(test_json(t));
    }
    std::optional<stats::FdrOutcome> fdr;
    if (!raw.empty()) fdr = stats::bh_fdr(raw, alpha);
    std::size_t k = 0;
    for (std::size_t c = 0; c < degr.groups.size(); ++c) {
      json entry{{"group", degr.groups[c]}, {"test", tests[c]}};
      if (tests[c].contains("p_value")) {
        entry["adjusted_p"] = fdr->adjusted_p[k];
        entry["significant"] = static_cast<bool>(fdr->significant[k]);
        ++k;
      }
      per_group.push_back(std::move(entry));
    }
    return json{{"overall", test_json(stats::paired_t_test(x, y))}, {"per_group", std::move(per_group)}};
  });

  json degradation;
  json by_group = json::array();
  std::vector<std::vector<double>> samples;
  for (std::size_t c = 0; c < degr.groups.size(); ++c) {
    auto column = degr.column(c, degr.every_row());
    by_group.push_back({{"group", degr.groups[c]}, {"degradation", mean_sd_json(column)}});
    samples.push_back(std::move(column));
  }
  degradation["by_group"] = std::move(by_group);
  degradation["overall"] = mean_sd_json(degr.all(degr.every_row()));
  degradation["one_way_anova"] = guarded([&] {
    for (const auto& s : samples) require(s.size() >= 2, "every group needs at least two degradation scores");
    return test_json(stats::one_way_anova(samples));
  });
  degradation["normality"] = normality_json(degr);
  out["degradation"] = std::move(degradation);
  return out;
}

}  // namespace

json generate_report(const StudyData& data, const ReportOptions& options) {
  const auto subsets = subsets_of(data);
  json report;
  report["groups"] = data.groups;
  report["listeners"] = data.listener_ids;
  report["discrimination"] = discrimination_json(data, subsets, options.alpha);
  report["quality"] = quality_json(data, subsets, options.alpha);
  json subgroups;
  subgroups["language"] = guarded([&] {
    require(subsets.known, "listener profiles missing");
    return subgroup_json(data, subsets.non_native, subsets.native, "non_native", "native");
  });
  subgroups["expertise"] = guarded([&] {
    require(subsets.known, "listener profiles missing");
    return subgroup_json(data, subsets.non_expert, subsets.expert, "non_expert", "expert");
  });
  report["subgroups"] = std::move(subgroups);
  report["gender"] = guarded([&] { return gender_json(data); });
  report["correlations"] = guarded([&] { return correlation_json(data, options, subsets); });
  return report;
}

std::string render_report(const json& report) { return report.dump(2) + "\n"; }

}  // namespace anonlab::service
