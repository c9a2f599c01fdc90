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

#include "anonlab/metrics/verification.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "anonlab/error.hpp"

namespace anonlab::metrics {
namespace {

void check_finite(std::span<const double> values, const char* what) {
  for (double v : values) {
    if (!std::isfinite(v)) throw Error(ErrorCode::InvalidSample, std::string(what) + " contains non-finite values");
  }
}

}  // namespace

double cosine_similarity(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) {
    throw Error(ErrorCode::DimensionMismatch, "embedding dimensions differ (" + std::to_string(a.size()) +
                                                  " vs " + std::to_string(b.size()) + ")");
  }
  double dot = 0.0, na = 0.0, nb = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    dot += a[i] * b[i];
    na += a[i] * a[i];
    nb += b[i] * b[i];
  }
  if (!(na > 0.0) || !(nb > 0.0)) throw Error(ErrorCode::ZeroNormEmbedding, "embedding has zero norm");
  return std::clamp(dot / (std::sqrt(na) * std::sqrt(nb)), -1.0, 1.0);
}

double cosine_similarity(const Embedding& a, const Embedding& b) {
  return cosine_similarity(std::span<const double>(a.vector), std::span<const double>(b.vector));
}

EerResult compute_eer(const ScoreSet& scores) {
  if (scores.genuine.empty() || scores.impostor.empty()) {
    throw Error(ErrorCode::EmptyScores, "EER needs both genuine and impostor scores");
  }
  check_finite(scores.genuine, "genuine scores");
  check_finite(scores.impostor, "impostor scores");

  auto genuine = scores.genuine;
  auto impostor = scores.impostor;
  std::sort(genuine.begin(), genuine.end());
  std::sort(impostor.begin(), impostor.end());

  std::vector<double> thresholds;
  thresholds.reserve(genuine.size() + impostor.size());
  std::merge(genuine.begin(), genuine.end(), impostor.begin(), impostor.end(), std::back_inserter(thresholds));
  thresholds.erase(std::unique(thresholds.begin(), thresholds.end()), thresholds.end());

  const double ng = static_cast<double>(genuine.size());
  const double ni = static_cast<double>(impostor.size());
  auto far = [&](double t) {
    return static_cast<double>(impostor.end() - std::lower_bound(impostor.begin(), impostor.end(), t)) / ni;
  };
  auto frr = [&](double t) {
    return static_cast<double>(std::lower_bound(genuine.begin(), genuine.end(), t) - genuine.begin()) / ng;
  };

  double prev_t = thresholds.front();
  double prev_far = far(prev_t);
  double prev_frr = frr(prev_t);
  if (prev_frr >= prev_far) return {prev_far, prev_t};

  // A final sweep point above every score closes the curve at FAR = 0, FRR = 1.
  for (std::size_t i = 1; i <= thresholds.size(); ++i) {
    const bool beyond = i == thresholds.size();
    const double t = beyond ? std::numeric_limits<double>::infinity() : thresholds[i];
    const double cur_far = beyond ? 0.0 : far(t);
    const double cur_frr = beyond ? 1.0 : frr(t);
    if (cur_frr >= cur_far) {
      if (cur_frr == cur_far) return {cur_far, beyond ? prev_t : t};
      const double d_prev = prev_far - prev_frr;
      const double d_cur = cur_far - cur_frr;
      const double lambda = d_prev / (d_prev - d_cur);
      const double eer = prev_far + lambda * (cur_far - prev_far);
      const double threshold = beyond ? prev_t : prev_t + lambda * (t - prev_t);
      return {eer, threshold};
    }
    prev_t = t;
    prev_far = cur_far;
    prev_frr = cur_frr;
  }
  return {prev_far, prev_t};  // unreachable: the closing point always crosses
}

double compute_auc(const LabeledScores& data) {
  if (data.scores.size() != data.labels.size()) {
    throw Error(ErrorCode::DimensionMismatch, "scores and labels differ in length");
  }
  check_finite(data.scores, "scores");
  const std::size_t n = data.scores.size();
  std::size_t n_pos = 0;
  for (int label : data.labels) {
    if (label != 0 && label != 1) throw Error(ErrorCode::DegenerateLabels, "labels must be 0 or 1");
    n_pos += static_cast<std::size_t>(label);
  }
  const std::size_t n_neg = n - n_pos;
  if (n_pos == 0 || n_neg == 0) {
    throw Error(ErrorCode::DegenerateLabels, "AUC needs at least one positive and one negative");
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return data.scores[a] < data.scores[b]; });

  double rank_sum_pos = 0.0;
  for (std::size_t i = 0; i < n;) {
    std::size_t j = i;
    while (j < n && data.scores[order[j]] == data.scores[order[i]]) ++j;
    const double midrank = 0.5 * static_cast<double>(i + 1 + j);
    for (std::size_t k = i; k < j; ++k) {
      if (data.labels[order[k]] == 1) rank_sum_pos += midrank;
    }
    i = j;
  }
  const double np = static_cast<double>(n_pos);
  const double u = rank_sum_pos - np * (np + 1.0) / 2.0;
  return u / (np * static_cast<double>(n_neg));
}

}  // namespace anonlab::metrics
