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
#include <cmath>
#include <fstream>
#include <random>

#include <gtest/gtest.h>

#include "anonlab/error.hpp"
#include "anonlab/metrics/embedding.hpp"
#include "anonlab/metrics/metrics_io.hpp"
#include "anonlab/metrics/verification.hpp"
#include "anonlab/stats/mann_whitney.hpp"
#include "test_support.hpp"

namespace anonlab::metrics {
namespace {

// Brute-force EER: every candidate threshold, no interpolation. Returns the
// smallest max(FAR, FRR) over thresholds.
double brute_force_eer(const ScoreSet& s) {
  std::vector<double> thresholds = s.genuine;
  thresholds.insert(thresholds.end(), s.impostor.begin(), s.impostor.end());
  thresholds.push_back(std::numeric_limits<double>::infinity());
  double best = 1.0;
  for (double t : thresholds) {
    const double far = std::count_if(s.impostor.begin(), s.impostor.end(), [t](double x) { return x >= t; }) /
                       static_cast<double>(s.impostor.size());
    const double frr = std::count_if(s.genuine.begin(), s.genuine.end(), [t](double x) { return x < t; }) /
                       static_cast<double>(s.genuine.size());
    best = std::min(best, std::max(far, frr));
  }
  return best;
}

// Trapezoidal integration of the ROC curve swept over distinct thresholds.
double trapezoid_auc(const LabeledScores& d) {
  std::vector<double> t = d.scores;
  std::sort(t.begin(), t.end(), std::greater<>());
  t.erase(std::unique(t.begin(), t.end()), t.end());
  const double pos = std::count(d.labels.begin(), d.labels.end(), 1);
  const double neg = static_cast<double>(d.labels.size()) - pos;
  double area = 0.0, px = 0.0, py = 0.0;
  for (double th : t) {
    double tp = 0, fp = 0;
    for (std::size_t i = 0; i < d.scores.size(); ++i) {
      if (d.scores[i] >= th) (d.labels[i] == 1 ? tp : fp) += 1;
    }
    const double x = fp / neg, y = tp / pos;
    area += (x - px) * (y + py) / 2;
    px = x;
    py = y;
  }
  return area + (1 - px) * (1 + py) / 2;
}

TEST(Cosine, BasicCases) {
  const std::vector<double> a{1, 0}, b{0, 1}, c{-1, 0}, d{3, 4};
  EXPECT_DOUBLE_EQ(cosine_similarity(d, d), 1.0);
  EXPECT_DOUBLE_EQ(cosine_similarity(a, b), 0.0);
  EXPECT_DOUBLE_EQ(cosine_similarity(a, c), -1.0);
  const std::vector<double> d10{30, 40};
  EXPECT_NEAR(cosine_similarity(a, d), cosine_similarity(a, d10), 1e-15);
  EXPECT_DOUBLE_EQ(cosine_similarity(a, d), cosine_similarity(d, a));
}

TEST(Cosine, Errors) {
  const std::vector<double> a{1, 0}, b{1, 0, 0}, z{0, 0};
  try {
    cosine_similarity(a, b);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::DimensionMismatch);
  }
  try {
    cosine_similarity(a, z);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::ZeroNormEmbedding);
  }
}

TEST(Eer, SeparableAndIdentical) {
  EXPECT_DOUBLE_EQ(compute_eer({{0.9, 0.8}, {0.2, 0.1}}).eer, 0.0);
  std::vector<double> same;
  for (int i = 1; i <= 10; ++i) same.push_back(i / 10.0);
  EXPECT_DOUBLE_EQ(compute_eer({same, same}).eer, 0.5);
}

TEST(Eer, SmallExampleAgainstBruteForce) {
  const ScoreSet s{{0.7, 0.4}, {0.6, 0.3}};
  EXPECT_DOUBLE_EQ(compute_eer(s).eer, 0.5);
  EXPECT_DOUBLE_EQ(brute_force_eer(s), 0.5);
}

TEST(Eer, EmptyListsThrow) {
  EXPECT_THROW(compute_eer({{}, {0.1}}), Error);
  EXPECT_THROW(compute_eer({{0.1}, {}}), Error);
}

TEST(Eer, BracketedByBruteForceSweep) {
  // The interpolated crossing lies between the two sweep points around it,
  // so it never exceeds the best achievable max(FAR, FRR).
  std::mt19937_64 rng(8);
  std::normal_distribution<double> g(0.0, 1.0);
  for (int trial = 0; trial < 200; ++trial) {
    ScoreSet s;
    for (int i = 0; i < 30; ++i) s.genuine.push_back(g(rng) + 1.0);
    for (int i = 0; i < 45; ++i) s.impostor.push_back(g(rng));
    const double eer = compute_eer(s).eer;
    EXPECT_LE(eer, brute_force_eer(s) + 1e-12);
    EXPECT_GE(eer, 0.0);
  }
}

TEST(Eer, InvariantUnderMonotoneTransforms) {
  std::mt19937_64 rng(21);
  std::normal_distribution<double> g(0.0, 1.0);
  ScoreSet s;
  for (int i = 0; i < 40; ++i) s.genuine.push_back(g(rng) + 0.8);
  for (int i = 0; i < 60; ++i) s.impostor.push_back(g(rng));
  const double base = compute_eer(s).eer;
  std::uniform_real_distribution<double> u(0.1, 3.0);
  for (int t = 0; t < 20; ++t) {
    const double a = u(rng), b = u(rng), k = u(rng);
    auto f = [&](double x) { return a * std::tanh(x / k) + b * x * x * x + 7.0; };
    ScoreSet m;
    for (double x : s.genuine) m.genuine.push_back(f(x));
    for (double x : s.impostor) m.impostor.push_back(f(x));
    EXPECT_NEAR(compute_eer(m).eer, base, 1e-12);
  }
}

TEST(Eer, SwappedAndNegatedGivesSameValue) {
  std::mt19937_64 rng(4);
  std::normal_distribution<double> g(0.0, 1.0);
  ScoreSet s;
  for (int i = 0; i < 25; ++i) s.genuine.push_back(g(rng) + 1.0);
  for (int i = 0; i < 25; ++i) s.impostor.push_back(g(rng));
  ScoreSet flipped;
  for (double x : s.impostor) flipped.genuine.push_back(-x);
  for (double x : s.genuine) flipped.impostor.push_back(-x);
  EXPECT_NEAR(compute_eer(flipped).eer, compute_eer(s).eer, 1.0 / 25);
}

TEST(Auc, BasicCases) {
  EXPECT_DOUBLE_EQ(compute_auc({{0.9, 0.8, 0.2, 0.1}, {1, 1, 0, 0}}), 1.0);
  EXPECT_DOUBLE_EQ(compute_auc({{0.5, 0.5, 0.5, 0.5}, {1, 0, 1, 0}}), 0.5);
  EXPECT_THROW(compute_auc({{0.5, 0.2}, {1, 1}}), Error);
  EXPECT_THROW(compute_auc({{0.5}, {1, 0}}), Error);
}

TEST(Auc, MatchesTrapezoidalRoc) {
  std::mt19937_64 rng(10);
  std::uniform_int_distribution<int> coin(0, 1);
  std::uniform_int_distribution<int> level(0, 6);
  for (int trial = 0; trial < 300; ++trial) {
    LabeledScores d;
    for (int i = 0; i < 12; ++i) {
      d.scores.push_back(level(rng) * 0.5);
      d.labels.push_back(coin(rng));
    }
    d.labels[0] = 1;
    d.labels[1] = 0;
    EXPECT_NEAR(compute_auc(d), trapezoid_auc(d), 1e-12);
  }
}

TEST(Auc, ComplementUnderNegation) {
  std::mt19937_64 rng(12);
  std::normal_distribution<double> g(0.0, 1.0);
  LabeledScores d, neg;
  for (int i = 0; i < 40; ++i) {
    d.scores.push_back(g(rng));
    d.labels.push_back(i % 3 == 0 ? 1 : 0);
  }
  neg = d;
  for (double& s : neg.scores) s = -s;
  EXPECT_NEAR(compute_auc(d) + compute_auc(neg), 1.0, 1e-12);
}

TEST(Auc, EqualsMannWhitneyUOverProduct) {
  std::mt19937_64 rng(13);
  std::uniform_int_distribution<int> level(0, 9);
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<double> pos, neg;
    LabeledScores d;
    for (int i = 0; i < 8 + trial % 5; ++i) {
      pos.push_back(level(rng));
      d.scores.push_back(pos.back());
      d.labels.push_back(1);
    }
    for (int i = 0; i < 6 + trial % 7; ++i) {
      neg.push_back(level(rng));
      d.scores.push_back(neg.back());
      d.labels.push_back(0);
    }
    const auto mw = stats::mann_whitney_u(pos, neg, stats::MannWhitneyMode::NormalApprox);
    EXPECT_NEAR(compute_auc(d), mw.u_x / (pos.size() * neg.size()), 1e-12);
  }
}

TEST(Embedding, DeterministicAndSelfSimilar) {
  const auto a = testing::synth_vowel({{0.3, 0.97}, {0.8, 0.95}}, 120.0, 1.0);
  const auto e1 = reference_embed(a);
  const auto e2 = reference_embed(a);
  EXPECT_EQ(e1.vector, e2.vector);
  EXPECT_EQ(e1.dim(), 80u);
  EXPECT_NEAR(cosine_similarity(e1, e2), 1.0, 1e-12);
}

TEST(Embedding, DifferentVoicesScoreLowerThanSelf) {
  const auto a = testing::synth_vowel({{0.3, 0.97}, {0.8, 0.95}}, 120.0, 1.0);
  const auto a2 = testing::synth_vowel({{0.3, 0.97}, {0.8, 0.95}}, 124.0, 1.2);
  const auto b = testing::synth_vowel({{0.55, 0.96}, {1.5, 0.94}}, 220.0, 1.0);
  const auto ea = reference_embed(a), ea2 = reference_embed(a2), eb = reference_embed(b);
  EXPECT_LT(cosine_similarity(ea, eb), cosine_similarity(ea, ea));
  EXPECT_GT(cosine_similarity(ea, ea2), cosine_similarity(ea, eb));
}

TEST(Embedding, TooShort) {
  try {
    reference_embed({std::vector<double>(500, 0.1), 16000});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::AudioTooShort);
  }
}

TEST(MetricsIo, EmbeddingsTrialsAndScores) {
  testing::TempDir dir;
  std::vector<Embedding> embs{{"u1", {1.0, 0.0, 0.5}}, {"u2", {0.9, 0.1, 0.4}}, {"u3", {-1.0, 0.2, 0.0}}};
  write_embeddings(embs, dir.path() / "e.csv");
  const auto back = read_embeddings(dir.path() / "e.csv");
  ASSERT_EQ(back.size(), 3u);
  EXPECT_EQ(back[2].vector, embs[2].vector);

  std::ofstream(dir.path() / "t.csv") << "trial_id,enroll_id,verify_id,kind\n"
                                         "t1,u1,u2,genuine\nt2,u1,u3,impostor\n";
  const auto trials = read_trials(dir.path() / "t.csv");
  const auto scores = score_trials(back, trials);
  ASSERT_EQ(scores.genuine.size(), 1u);
  EXPECT_NEAR(scores.genuine[0], cosine_similarity(embs[0], embs[1]), 1e-15);
  EXPECT_DOUBLE_EQ(compute_eer(scores).eer, 0.0);

  std::ofstream(dir.path() / "bad.csv") << "trial_id,enroll_id,verify_id,kind\nt1,u1,u9,genuine\n";
  EXPECT_THROW(score_trials(back, read_trials(dir.path() / "bad.csv")), Error);

  std::ofstream(dir.path() / "s.csv") << "trial_id,kind,score\na,genuine,0.9\nb,impostor,0.1\n";
  EXPECT_DOUBLE_EQ(compute_eer(read_scores(dir.path() / "s.csv")).eer, 0.0);

  std::ofstream(dir.path() / "l.csv") << "utterance_id,score,label\na,0.9,1\nb,0.1,0\n";
  EXPECT_DOUBLE_EQ(compute_auc(read_labeled_scores(dir.path() / "l.csv")), 1.0);

  std::ofstream(dir.path() / "g.csv") << "group,value\nCLP,0.31\nDysarthria,0.4\n";
  const auto groups = read_group_metric(dir.path() / "g.csv");
  ASSERT_EQ(groups.size(), 2u);
  EXPECT_EQ(groups[1].first, "Dysarthria");
}

}  // namespace
}  // namespace anonlab::metrics
