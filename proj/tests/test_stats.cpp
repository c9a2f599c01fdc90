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

#include <algorithm>
#include <bit>
#include <map>
#include <cmath>
#include <numeric>
#include <random>

#include <boost/math/distributions/fisher_f.hpp>
#include <boost/math/distributions/normal.hpp>
#include <boost/math/distributions/students_t.hpp>
#include <boost/math/special_functions/beta.hpp>
#include <boost/math/special_functions/gamma.hpp>
#include <gtest/gtest.h>

#include "anonlab/error.hpp"
#include "anonlab/stats/anova.hpp"
#include "anonlab/stats/descriptive.hpp"
#include "anonlab/stats/distributions.hpp"
#include "anonlab/stats/fdr.hpp"
#include "anonlab/stats/mann_whitney.hpp"
#include "anonlab/stats/parametric.hpp"
#include "anonlab/stats/quality.hpp"
#include "anonlab/stats/shapiro_wilk.hpp"

namespace anonlab::stats {
namespace {

namespace bm = boost::math;

ErrorCode code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "expected an Error";
  return ErrorCode::MalformedInput;
}

double boost_t_two_tailed(double t, double df) {
  return 2.0 * bm::cdf(bm::complement(bm::students_t(df), std::abs(t)));
}

std::vector<double> normal_sample(std::mt19937_64& rng, std::size_t n, double mu = 0.0, double sd = 1.0) {
  std::normal_distribution<double> g(mu, sd);
  std::vector<double> v(n);
  for (auto& x : v) x = g(rng);
  return v;
}

// --- distributions -------------------------------------------------------

TEST(Distributions, LogGammaAndIncompleteBeta) {
  for (double x : {0.1, 0.5, 1.0, 2.5, 7.0, 33.3, 170.0}) {
    EXPECT_NEAR(log_gamma(x), bm::lgamma(x), 1e-12 * std::max(1.0, std::abs(bm::lgamma(x)))) << x;
  }
  for (double a : {0.5, 1.0, 3.0, 12.5, 40.0}) {
    for (double b : {0.5, 2.0, 9.0, 60.0}) {
      for (double x : {0.0, 0.01, 0.3, 0.5, 0.77, 0.999, 1.0}) {
        EXPECT_NEAR(incomplete_beta(a, b, x), bm::ibeta(a, b, x), 1e-12) << a << " " << b << " " << x;
      }
    }
  }
}

TEST(Distributions, NormalAgainstBoost) {
  const bm::normal n01;
  for (double z : {-8.0, -3.1, -1.0, 0.0, 0.4, 1.96, 5.5}) {
    EXPECT_NEAR(normal_cdf(z), bm::cdf(n01, z), 1e-14);
    EXPECT_NEAR(normal_sf(z), bm::cdf(bm::complement(n01, z)), 1e-14);
  }
  for (double p : {1e-10, 0.001, 0.025, 0.3, 0.5, 0.9, 0.999999}) {
    EXPECT_NEAR(normal_quantile(p), bm::quantile(n01, p), 1e-9 * std::max(1.0, std::abs(bm::quantile(n01, p))));
  }
}

TEST(Distributions, StudentTAndFAgainstBoost) {
  for (double df : {1.0, 2.0, 4.5, 9.0, 30.0, 250.0}) {
    for (double t : {-6.0, -2.0, -0.3, 0.0, 1.0, 2.7, 12.0}) {
      EXPECT_NEAR(student_t_cdf(t, df), bm::cdf(bm::students_t(df), t), 1e-12);
      EXPECT_NEAR(student_t_two_tailed(t, df), boost_t_two_tailed(t, df), 1e-12);
    }
  }
  for (double d1 : {1.0, 4.0, 5.0}) {
    for (double d2 : {3.0, 36.0, 45.0, 120.0}) {
      for (double f : {0.0, 0.2, 1.0, 3.65, 17.0}) {
        EXPECT_NEAR(f_sf(f, d1, d2), bm::cdf(bm::complement(bm::fisher_f(d1, d2), f)), 1e-12);
      }
    }
  }
}

// --- parametric ----------------------------------------------------------

TEST(Parametric, PairedTAgainstTextbookFormula) {
  std::mt19937_64 rng(1);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = 3 + trial % 20;
    const auto x = normal_sample(rng, n, 50.0, 10.0);
    auto y = normal_sample(rng, n, 48.0, 10.0);
    std::vector<double> d(n);
    for (std::size_t i = 0; i < n; ++i) d[i] = x[i] - y[i];
    double dbar = std::accumulate(d.begin(), d.end(), 0.0) / n, ss = 0.0;
    for (double v : d) ss += (v - dbar) * (v - dbar);
    const double t = dbar / std::sqrt(ss / (n - 1) / n);
    const auto r = paired_t_test(x, y);
    EXPECT_EQ(r.method, Method::PairedT);
    EXPECT_NEAR(r.statistic, t, 1e-10 * std::max(1.0, std::abs(t)));
    ASSERT_EQ(r.df.size(), 1u);
    EXPECT_DOUBLE_EQ(r.df[0], n - 1.0);
    EXPECT_NEAR(r.p_value, boost_t_two_tailed(t, n - 1.0), 1e-10);
  }
}

TEST(Parametric, WelchAndPooledAgainstFormula) {
  std::mt19937_64 rng(2);
  for (int trial = 0; trial < 200; ++trial) {
    const auto x = normal_sample(rng, 2 + trial % 9, 0.0, 1.0);
    const auto y = normal_sample(rng, 3 + trial % 13, 0.5, 3.0);
    const double n1 = x.size(), n2 = y.size();
    const double v1 = variance(x), v2 = variance(y), diff = mean(x) - mean(y);
    const double se2 = v1 / n1 + v2 / n2;
    const double tw = diff / std::sqrt(se2);
    const double dfw = se2 * se2 / (v1 * v1 / (n1 * n1 * (n1 - 1)) + v2 * v2 / (n2 * n2 * (n2 - 1)));
    const auto w = unpaired_t_test(x, y);
    EXPECT_EQ(w.method, Method::WelchT);
    EXPECT_NEAR(w.statistic, tw, 1e-10 * std::max(1.0, std::abs(tw)));
    EXPECT_NEAR(w.df[0], dfw, 1e-9 * dfw);
    EXPECT_NEAR(w.p_value, boost_t_two_tailed(tw, dfw), 1e-10);

    const double sp2 = ((n1 - 1) * v1 + (n2 - 1) * v2) / (n1 + n2 - 2);
    const double tp = diff / std::sqrt(sp2 * (1 / n1 + 1 / n2));
    const auto p = pooled_t_test(x, y);
    EXPECT_NEAR(p.statistic, tp, 1e-10 * std::max(1.0, std::abs(tp)));
    EXPECT_NEAR(p.p_value, boost_t_two_tailed(tp, n1 + n2 - 2), 1e-10);
  }
}

TEST(Parametric, PearsonAgainstFormula) {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t n = 3 + trial % 15;
    const auto x = normal_sample(rng, n);
    auto y = normal_sample(rng, n);
    for (std::size_t i = 0; i < n; ++i) y[i] += 0.7 * x[i];
    const double mx = mean(x), my = mean(y);
    double sxy = 0, sxx = 0, syy = 0;
    for (std::size_t i = 0; i < n; ++i) {
      sxy += (x[i] - mx) * (y[i] - my);
      sxx += (x[i] - mx) * (x[i] - mx);
      syy += (y[i] - my) * (y[i] - my);
    }
    const double rr = sxy / std::sqrt(sxx * syy);
    const auto r = pearson_correlation(x, y);
    EXPECT_NEAR(r.statistic, rr, 1e-12);
    const double t = rr * std::sqrt((n - 2.0) / (1 - rr * rr));
    EXPECT_NEAR(r.p_value, boost_t_two_tailed(t, n - 2.0), 1e-10);
  }
  const std::vector<double> a{1, 2, 3, 4}, b{2, 4, 6, 8}, c{1, 1, 1, 1};
  EXPECT_NEAR(pearson_correlation(a, b).statistic, 1.0, 1e-15);
  EXPECT_EQ(code_of([&] { pearson_correlation(a, c); }), ErrorCode::ZeroVariance);
  EXPECT_EQ(code_of([&] { pearson_correlation(std::vector<double>{1, 2}, std::vector<double>{1, 2}); }),
            ErrorCode::InvalidSample);
}

TEST(Parametric, DegenerateConventions) {
  const std::vector<double> x{1, 2, 3}, same{1, 2, 3}, shifted{0, 1, 2};
  auto r = paired_t_test(x, same);
  EXPECT_TRUE(r.degenerate);
  EXPECT_EQ(r.statistic, 0.0);
  EXPECT_EQ(r.p_value, 1.0);
  r = paired_t_test(x, shifted);
  EXPECT_TRUE(r.degenerate);
  EXPECT_TRUE(std::isinf(r.statistic));
  EXPECT_EQ(r.p_value, 0.0);
  const std::vector<double> c1{2, 2}, c2{5, 5};
  EXPECT_EQ(unpaired_t_test(c1, c2).p_value, 0.0);
  EXPECT_EQ(pooled_t_test(c1, c1).p_value, 1.0);
  EXPECT_EQ(code_of([&] { paired_t_test(std::vector<double>{1, 2}, std::vector<double>{1}); }),
            ErrorCode::InvalidSample);
  EXPECT_EQ(code_of([&] { unpaired_t_test(std::vector<double>{1}, x); }), ErrorCode::InvalidSample);
  EXPECT_EQ(code_of([&] { paired_t_test(std::vector<double>{1, NAN}, x); }), ErrorCode::InvalidSample);
}

TEST(Parametric, LocationScaleInvariance) {
  std::mt19937_64 rng(5);
  const auto x = normal_sample(rng, 12), y = normal_sample(rng, 12, 0.4);
  std::vector<double> xs(x), ys(y);
  for (auto& v : xs) v = 3.5 * v + 100;
  for (auto& v : ys) v = 3.5 * v + 100;
  EXPECT_NEAR(paired_t_test(x, y).statistic, paired_t_test(xs, ys).statistic, 1e-9);
  EXPECT_NEAR(unpaired_t_test(x, y).p_value, unpaired_t_test(xs, ys).p_value, 1e-12);
  EXPECT_NEAR(pearson_correlation(x, y).statistic, pearson_correlation(xs, ys).statistic, 1e-12);
}

// --- ANOVA ---------------------------------------------------------------

TEST(Anova, TwoConditionRepeatedMeasuresEqualsPairedTSquared) {
  std::mt19937_64 rng(6);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t n = 3 + trial % 12;
    const auto x = normal_sample(rng, n, 80, 8), y = normal_sample(rng, n, 84, 8);
    RepeatedMeasuresTable table;
    table.condition_ids = {"a", "b"};
    for (std::size_t i = 0; i < n; ++i) {
      table.subject_ids.push_back("s" + std::to_string(i));
      table.values.push_back({x[i], y[i]});
    }
    const auto f = repeated_measures_anova(table);
    const auto t = paired_t_test(x, y);
    EXPECT_NEAR(f.statistic, t.statistic * t.statistic, 1e-9 * std::max(1.0, f.statistic));
    EXPECT_NEAR(f.p_value, t.p_value, 1e-9);
    EXPECT_EQ(f.df, (std::vector<double>{1.0, n - 1.0}));
  }
}

TEST(Anova, TwoGroupOneWayEqualsPooledTSquared) {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 100; ++trial) {
    const auto x = normal_sample(rng, 2 + trial % 8), y = normal_sample(rng, 2 + trial % 11, 0.3);
    const auto f = one_way_anova({x, y});
    const auto t = pooled_t_test(x, y);
    EXPECT_NEAR(f.statistic, t.statistic * t.statistic, 1e-9 * std::max(1.0, f.statistic));
    EXPECT_NEAR(f.p_value, t.p_value, 1e-9);
  }
}

TEST(Anova, DecompositionSumsToTotal) {
  std::mt19937_64 rng(8);
  RepeatedMeasuresTable table;
  table.condition_ids = {"a", "b", "c", "d", "e", "f"};
  for (int s = 0; s < 10; ++s) {
    table.subject_ids.push_back("s" + std::to_string(s));
    table.values.push_back(normal_sample(rng, 6, 90, 5));
  }
  const auto d = decompose(table);
  EXPECT_NEAR(d.ss_subjects + d.ss_conditions + d.ss_error, d.ss_total, 1e-9 * d.ss_total);
  const auto r = repeated_measures_anova(table);
  EXPECT_EQ(r.df, (std::vector<double>{5.0, 45.0}));
  EXPECT_NEAR(r.statistic, (d.ss_conditions / 5) / (d.ss_error / 45), 1e-12 * r.statistic);
}

TEST(Anova, Degenerate) {
  RepeatedMeasuresTable same{{"s1", "s2"}, {"a", "b"}, {{5, 5}, {7, 7}}};
  auto r = repeated_measures_anova(same);
  EXPECT_EQ(r.statistic, 0.0);
  EXPECT_EQ(r.p_value, 1.0);
  RepeatedMeasuresTable shift{{"s1", "s2"}, {"a", "b"}, {{5, 6}, {7, 8}}};
  r = repeated_measures_anova(shift);
  EXPECT_TRUE(std::isinf(r.statistic));
  EXPECT_EQ(r.p_value, 0.0);
  RepeatedMeasuresTable ragged{{"s1", "s2"}, {"a", "b"}, {{5, 6}, {7}}};
  EXPECT_EQ(code_of([&] { repeated_measures_anova(ragged); }), ErrorCode::IncompleteTable);
  RepeatedMeasuresTable single{{"s1"}, {"a", "b"}, {{5, 6}}};
  EXPECT_EQ(code_of([&] { repeated_measures_anova(single); }), ErrorCode::IncompleteTable);
  EXPECT_EQ(code_of([&] { one_way_anova({{1, 2, 3}}); }), ErrorCode::TooFewGroups);
  EXPECT_EQ(code_of([&] { one_way_anova({{1, 2, 3}, {4}}); }), ErrorCode::TooFewGroups);
}

// --- Mann-Whitney --------------------------------------------------------

// Two-sided permutation p by enumerating every assignment of the pooled
// values to X.
double enumerated_mw_p(const std::vector<double>& x, const std::vector<double>& y) {
  std::vector<double> pooled(x);
  pooled.insert(pooled.end(), y.begin(), y.end());
  const std::size_t n = pooled.size(), nx = x.size();
  auto u_of = [&](unsigned mask) {
    double u = 0;
    for (std::size_t i = 0; i < n; ++i) {
      if (!(mask >> i & 1u)) continue;
      for (std::size_t j = 0; j < n; ++j) {
        if (mask >> j & 1u) continue;
        u += pooled[i] > pooled[j] ? 1.0 : (pooled[i] == pooled[j] ? 0.5 : 0.0);
      }
    }
    return u;
  };
  const double observed = u_of((1u << nx) - 1u);
  double le = 0, ge = 0, total = 0;
  for (unsigned mask = 0; mask < (1u << n); ++mask) {
    if (static_cast<std::size_t>(std::popcount(mask)) != nx) continue;
    const double u = u_of(mask);
    total += 1;
    if (u <= observed + 1e-9) le += 1;
    if (u >= observed - 1e-9) ge += 1;
  }
  return std::min(1.0, 2.0 * std::min(le, ge) / total);
}

TEST(MannWhitney, ExactMatchesEnumerationForAllSmallSizes) {
  std::mt19937_64 rng(9);
  for (std::size_t nx = 1; nx <= 7; ++nx) {
    for (std::size_t ny = 1; ny <= 7; ++ny) {
      for (int rep = 0; rep < 3; ++rep) {
        std::vector<double> all(nx + ny);
        std::iota(all.begin(), all.end(), 1.0);
        std::shuffle(all.begin(), all.end(), rng);
        const std::vector<double> x(all.begin(), all.begin() + nx), y(all.begin() + nx, all.end());
        const auto r = mann_whitney_u(x, y, MannWhitneyMode::Auto);
        EXPECT_EQ(r.method, Method::MannWhitneyExact);
        EXPECT_NEAR(r.p_value, enumerated_mw_p(x, y), 1e-12) << nx << "x" << ny;
        EXPECT_DOUBLE_EQ(r.u_x + r.u_y, static_cast<double>(nx * ny));
      }
    }
  }
}

TEST(MannWhitney, ExactWithTiesMatchesEnumeration) {
  const std::vector<double> x{1, 2, 2, 4}, y{2, 3, 4, 4, 5};
  const auto r = mann_whitney_u(x, y, MannWhitneyMode::Exact);
  EXPECT_NEAR(r.p_value, enumerated_mw_p(x, y), 1e-12);
}

TEST(MannWhitney, KnownValuesAndNormalApprox) {
  const std::vector<double> x{1, 2, 3}, y{4, 5, 6};
  auto r = mann_whitney_u(x, y);
  EXPECT_DOUBLE_EQ(r.u_x, 0.0);
  EXPECT_DOUBLE_EQ(r.u_y, 9.0);
  EXPECT_NEAR(r.p_value, 0.1, 1e-12);
  // Ties force the normal approximation with tie correction and continuity.
  const std::vector<double> a{1, 2, 2, 3, 4, 5, 5, 6}, b{3, 4, 5, 6, 7, 7, 8, 9, 9, 10};
  r = mann_whitney_u(a, b);
  EXPECT_EQ(r.method, Method::MannWhitneyNormal);
  std::vector<double> pooled(a);
  pooled.insert(pooled.end(), b.begin(), b.end());
  const auto ranks = midranks(pooled);
  const double rx = std::accumulate(ranks.begin(), ranks.begin() + a.size(), 0.0);
  const double ux = rx - 8.0 * 9.0 / 2.0, n = 18.0;
  EXPECT_DOUBLE_EQ(r.u_x, ux);
  double tie = 0;
  std::map<double, int> counts;
  for (double v : pooled) ++counts[v];
  for (auto [v, c] : counts) tie += std::pow(c, 3) - c;
  const double var = 80.0 / 12.0 * ((n + 1) - tie / (n * (n - 1)));
  const double z = (std::max(ux, 80.0 - ux) - 40.0 - 0.5) / std::sqrt(var);
  EXPECT_NEAR(r.p_value, 2.0 * bm::cdf(bm::complement(bm::normal(), z)), 1e-12);
}

TEST(MannWhitney, MonotoneInvarianceAndErrors) {
  std::mt19937_64 rng(11);
  const auto x = normal_sample(rng, 15), y = normal_sample(rng, 12, 0.6);
  std::vector<double> xe(x), ye(y);
  for (auto& v : xe) v = std::exp(v);
  for (auto& v : ye) v = std::exp(v);
  EXPECT_DOUBLE_EQ(mann_whitney_u(x, y).p_value, mann_whitney_u(xe, ye).p_value);
  EXPECT_EQ(code_of([&] { mann_whitney_u(std::vector<double>{}, y); }), ErrorCode::EmptySample);
  const std::vector<double> c{3, 3, 3};
  const auto r = mann_whitney_u(c, c);
  EXPECT_TRUE(r.degenerate);
  EXPECT_EQ(r.p_value, 1.0);
}

// --- Benjamini-Hochberg --------------------------------------------------

TEST(Fdr, MatchesBruteForce) {
  std::mt19937_64 rng(12);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::uniform_int_distribution<int> size(1, 12);
  for (int trial = 0; trial < 1000; ++trial) {
    const std::size_t m = size(rng);
    std::vector<double> p(m);
    for (auto& v : p) v = trial % 3 == 0 ? std::round(u(rng) * 20) / 400 : std::pow(u(rng), 3);
    const double alpha = trial % 2 ? 0.05 : 0.1;
    const auto out = bh_fdr(p, alpha);
    auto rank = [&](double v) { return static_cast<double>(std::count_if(p.begin(), p.end(), [v](double q) { return q <= v; })); };
    std::size_t cutoff = 0;
    for (double v : p) {
      if (v <= rank(v) * alpha / m) cutoff = std::max(cutoff, static_cast<std::size_t>(rank(v)));
    }
    EXPECT_EQ(out.cutoff_rank, cutoff);
    for (std::size_t i = 0; i < m; ++i) {
      double adj = 1.0;
      bool reject = false;
      for (double v : p) {
        if (v < p[i]) continue;
        adj = std::min(adj, v * m / rank(v));
        reject = reject || v <= rank(v) * alpha / m;
      }
      EXPECT_NEAR(out.adjusted_p[i], adj, 1e-15);
      EXPECT_EQ(out.significant[i], reject);
      EXPECT_EQ(out.significant[i], out.adjusted_p[i] <= alpha);
      EXPECT_EQ(out.raw_p[i], p[i]);
    }
  }
}

TEST(Fdr, MonotoneInAlphaAndErrors) {
  std::mt19937_64 rng(13);
  std::uniform_real_distribution<double> u(0.0, 0.2);
  std::vector<double> p(10);
  for (auto& v : p) v = u(rng);
  std::size_t previous = 0;
  for (double alpha : {0.01, 0.02, 0.05, 0.1, 0.2, 0.5}) {
    const auto out = bh_fdr(p, alpha);
    const auto count = static_cast<std::size_t>(std::count(out.significant.begin(), out.significant.end(), true));
    EXPECT_GE(count, previous);
    previous = count;
  }
  EXPECT_EQ(code_of([] { bh_fdr(std::vector<double>{0.5, 1.2}); }), ErrorCode::InvalidP);
  EXPECT_EQ(code_of([] { bh_fdr(std::vector<double>{0.5}, 0.0); }), ErrorCode::InvalidP);
  EXPECT_TRUE(bh_fdr(std::vector<double>{}).adjusted_p.empty());
}

// --- Shapiro-Wilk --------------------------------------------------------

struct SwCase {
  std::vector<double> x;
  double w;
  double p;
};

TEST(ShapiroWilk, ReferenceValues) {
  const std::vector<SwCase> cases{
      {{148, 154, 158, 160, 161, 162, 166, 170, 182, 195}, 0.9080491141028906, 0.2678575575376505},
      {{1, 2, 4}, 0.9642857142857142, 0.6368868450289689},
      {{2.1, 3.5, 3.9, 7.2, 8.8}, 0.9190014914474033, 0.5235187409627979},
      {{5.1, 4.9, 4.7, 4.6, 5.0, 5.4, 4.6, 5.0, 4.4, 4.9, 5.4}, 0.9489213105157662, 0.6301999112351784},
      {{0.139, 0.157, 0.175, 0.256, 0.344, 0.413, 0.503, 0.577, 0.614, 0.655, 0.954, 1.392, 1.557, 1.648,
        1.690, 1.994, 2.174, 2.206, 3.245, 3.510},
       0.8827054959902195, 0.01979656036623793},
  };
  for (const auto& c : cases) {
    const auto r = shapiro_wilk(c.x);
    EXPECT_EQ(r.method, Method::ShapiroWilk);
    EXPECT_NEAR(r.statistic, c.w, 1e-6) << c.x.size();
    EXPECT_NEAR(r.p_value, c.p, 1e-5) << c.x.size();
  }
}

TEST(ShapiroWilk, InvarianceAndRange) {
  std::mt19937_64 rng(14);
  for (int trial = 0; trial < 50; ++trial) {
    auto x = normal_sample(rng, 3 + trial * 7);
    const auto r = shapiro_wilk(x);
    EXPECT_GT(r.statistic, 0.0);
    EXPECT_LE(r.statistic, 1.0);
    EXPECT_GE(r.p_value, 0.0);
    EXPECT_LE(r.p_value, 1.0);
    std::vector<double> moved(x);
    for (auto& v : moved) v = 42.0 + 0.25 * v;
    std::shuffle(moved.begin(), moved.end(), rng);
    EXPECT_NEAR(shapiro_wilk(moved).statistic, r.statistic, 1e-10);
  }
}

TEST(ShapiroWilk, Errors) {
  EXPECT_EQ(code_of([] { shapiro_wilk(std::vector<double>{1, 2}); }), ErrorCode::SampleTooSmall);
  EXPECT_EQ(code_of([] { shapiro_wilk(std::vector<double>{4, 4, 4, 4}); }), ErrorCode::ConstantSample);
  EXPECT_EQ(code_of([] { shapiro_wilk(std::vector<double>(5001, 1.0)); }), ErrorCode::SampleTooSmall);
}

// --- descriptive and quality ---------------------------------------------

TEST(Descriptive, MeanSdAndFormatting) {
  const std::vector<double> x{2, 4, 4, 4, 5, 5, 7, 9};
  EXPECT_DOUBLE_EQ(mean(x), 5.0);
  EXPECT_NEAR(variance(x), 32.0 / 7.0, 1e-14);
  EXPECT_EQ(variance(std::vector<double>{3.0}), 0.0);
  EXPECT_EQ(round_half_away(2.5), 3);
  EXPECT_EQ(round_half_away(-2.5), -3);
  EXPECT_EQ(round_half_away(90.49), 90);
  EXPECT_EQ(format_mean_sd({90.5, 9.4}), "91 ± 9");
}

TEST(Quality, AccuracyAndNormalizedScores) {
  EXPECT_NEAR(accuracy(29, 30), 96.6666666666667, 1e-9);
  EXPECT_DOUBLE_EQ(accuracy(30, 30), 100.0);
  EXPECT_EQ(code_of([] { accuracy(0, 0); }), ErrorCode::EmptyTrials);
  EXPECT_EQ(code_of([] { accuracy(4, 3); }), ErrorCode::InvalidSample);
  EXPECT_DOUBLE_EQ(normalized_quality_score(std::vector<int>{5, 5, 5}), 100.0);
  EXPECT_DOUBLE_EQ(normalized_quality_score(std::vector<int>{1}), 20.0);
  EXPECT_DOUBLE_EQ(normalized_quality_score(std::vector<int>{3, 4}), 70.0);
  std::vector<int> thirty(30, 4);
  thirty[0] = thirty[1] = 5;
  thirty[2] = thirty[3] = 5;
  EXPECT_NEAR(normalized_quality_score(thirty), 82.67, 0.005);  // 124 points over 30 ratings
  EXPECT_EQ(code_of([] { normalized_quality_score(std::vector<int>{3, 6}); }), ErrorCode::OutOfRangeRating);
  EXPECT_EQ(code_of([] { normalized_quality_score(std::vector<int>{0}); }), ErrorCode::OutOfRangeRating);
  EXPECT_EQ(code_of([] { normalized_quality_score(std::vector<int>{}); }), ErrorCode::EmptySample);
}

TEST(Quality, Degradation) {
  const std::map<std::string, double> orig{{"a", 90}, {"b", 70}}, anon{{"a", 60}, {"b", 75}};
  EXPECT_EQ(degradation_scores(orig, anon), (std::vector<double>{30, -5}));
  const std::map<std::string, double> other{{"a", 60}, {"c", 75}};
  EXPECT_EQ(code_of([&] { degradation_scores(orig, other); }), ErrorCode::KeyMismatch);
}

}  // namespace
}  // namespace anonlab::stats
