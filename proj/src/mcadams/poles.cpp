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

#include "anonlab/mcadams/poles.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <numbers>

#include "anonlab/error.hpp"

namespace anonlab::mcadams {
namespace {

using cd = std::complex<double>;

constexpr double kRootTolerance = 1e-6;
constexpr double kImagTolerance = 1e-9;
constexpr double kSplitImag = 1e-3;

// Monic polynomial coefficients c_0 = 1, c_k = -a_k, highest power first.
std::vector<double> monic_from_lpc(std::span<const double> a) {
  std::vector<double> c(a.size() + 1);
  c[0] = 1.0;
  for (std::size_t k = 0; k < a.size(); ++k) c[k + 1] = -a[k];
  return c;
}

template <typename T>
void horner(const std::vector<double>& c, T z, T& value, T& derivative) {
  value = T(c[0]);
  derivative = T(0);
  for (std::size_t k = 1; k < c.size(); ++k) {
    derivative = derivative * z + value;
    value = value * z + T(c[k]);
  }
}

double relative_residual(const std::vector<double>& c, cd z) {
  cd value, derivative;
  horner(c, z, value, derivative);
  double scale = 0.0;
  double power = 1.0;
  const double mag = std::abs(z);
  for (auto it = c.rbegin(); it != c.rend(); ++it) {
    scale += std::abs(*it) * power;
    power *= mag;
  }
  return scale > 0.0 ? std::abs(value) / scale : std::abs(value);
}

constexpr int kMaxPolishSteps = 30;

// Simultaneous Aberth-Ehrlich polishing. Unlike plain Newton it keeps
// clustered roots apart, so neighbours cannot collapse onto one root.
void polish(const std::vector<double>& c, std::vector<cd>& roots) {
  const std::size_t n = roots.size();
  std::vector<cd> next(n);
  for (int step = 0; step < kMaxPolishSteps; ++step) {
    double largest = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      cd value, derivative;
      horner(c, roots[i], value, derivative);
      next[i] = roots[i];
      if (value == cd(0.0) || derivative == cd(0.0)) continue;
      const cd w = value / derivative;
      cd repulsion(0.0);
      for (std::size_t j = 0; j < n; ++j) {
        if (j != i && roots[j] != roots[i]) repulsion += 1.0 / (roots[i] - roots[j]);
      }
      const cd delta = w / (1.0 - w * repulsion);
      if (!std::isfinite(delta.real()) || !std::isfinite(delta.imag())) continue;
      next[i] = roots[i] - delta;
      largest = std::max(largest, std::abs(delta) / std::max(1.0, std::abs(roots[i])));
    }
    roots.swap(next);
    if (largest < 1e-15) break;
  }
}

PoleSet polished_set(const std::vector<double>& c, const std::vector<double>& reals,
                     const std::vector<cd>& pairs) {
  std::vector<cd> roots(reals.begin(), reals.end());
  for (const cd& z : pairs) roots.push_back(z);
  for (const cd& z : pairs) roots.push_back(std::conj(z));
  polish(c, roots);

  PoleSet set;
  for (std::size_t i = 0; i < reals.size(); ++i) {
    const double root = roots[i].real();
    set.poles.push_back({std::abs(root), root < 0.0 ? std::numbers::pi : 0.0, true});
  }
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    cd z = roots[reals.size() + i];
    // Polishing pushed the pair onto the real axis; keep the eigenvalue.
    if (z.imag() <= 0.0) z = pairs[i];
    set.poles.push_back({std::abs(z), std::arg(z), false});
  }
  return set;
}

double expansion_error(const PoleSet& set, std::span<const double> a) {
  const auto expansion = expand_poles(set);
  double worst = expansion.max_imag_residue;
  for (std::size_t k = 0; k < a.size(); ++k) worst = std::max(worst, std::abs(expansion.coefficients[k] - a[k]));
  return worst;
}

}  // namespace

cd Pole::value() const {
  if (is_real) return {angle == 0.0 ? magnitude : -magnitude, 0.0};
  return std::polar(magnitude, angle);
}

std::size_t PoleSet::order() const {
  std::size_t n = 0;
  for (const auto& p : poles) n += p.is_real ? 1 : 2;
  return n;
}

std::vector<cd> PoleSet::roots() const {
  std::vector<cd> out;
  out.reserve(order());
  for (const auto& p : poles) {
    const cd z = p.value();
    out.push_back(z);
    if (!p.is_real) out.push_back(std::conj(z));
  }
  return out;
}

PoleSet find_poles(std::span<const double> a) {
  const std::size_t p = a.size();
  if (p == 0) return {};
  for (double v : a) {
    if (!std::isfinite(v)) throw Error(ErrorCode::NumericalFailure, "non-finite LPC coefficient");
  }
  const auto c = monic_from_lpc(a);

  Eigen::MatrixXd companion = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(p), static_cast<Eigen::Index>(p));
  for (std::size_t k = 0; k < p; ++k) companion(0, static_cast<Eigen::Index>(k)) = a[k];
  for (std::size_t k = 1; k < p; ++k) companion(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(k - 1)) = 1.0;

  Eigen::EigenSolver<Eigen::MatrixXd> solver(companion, /*computeEigenvectors=*/false);
  if (solver.info() != Eigen::Success) {
    throw Error(ErrorCode::RootFindingFailure, "companion eigenvalue iteration did not converge");
  }
  const auto& eig = solver.eigenvalues();

  // One representative per conjugate pair plus the real roots. The full
  // conjugate-closed set is polished so the updates stay symmetric.
  std::vector<cd> upper, lower, reals;
  for (Eigen::Index i = 0; i < eig.size(); ++i) {
    const cd z = eig[i];
    if (z.imag() > 0.0) {
      upper.push_back(z);
    } else if (z.imag() < 0.0) {
      lower.push_back(z);
    } else {
      reals.push_back(z);
    }
  }
  if (upper.size() != lower.size()) {
    throw Error(ErrorCode::RootFindingFailure, "complex eigenvalues are not conjugate-paired");
  }

  std::vector<bool> used(lower.size(), false);
  std::vector<double> real_roots;
  for (const cd& z : reals) real_roots.push_back(z.real());
  std::vector<cd> pairs;
  for (const cd& u : upper) {
    std::size_t best = lower.size();
    double best_dist = 0.0;
    for (std::size_t j = 0; j < lower.size(); ++j) {
      if (used[j]) continue;
      const double d = std::abs(u - std::conj(lower[j]));
      if (best == lower.size() || d < best_dist) {
        best = j;
        best_dist = d;
      }
    }
    used[best] = true;
    pairs.push_back(0.5 * (u + std::conj(lower[best])));
  }

  PoleSet set = polished_set(c, real_roots, pairs);
  double error = expansion_error(set, a);
  // Two close real roots can come back as a pair with a tiny imaginary part.
  // Try splitting such pairs and keep the split when it fits A(z) better.
  for (std::size_t i = 0; i < pairs.size();) {
    if (std::abs(pairs[i].imag()) > kSplitImag) {
      ++i;
      continue;
    }
    auto split_reals = real_roots;
    split_reals.push_back(pairs[i].real() - std::abs(pairs[i].imag()));
    split_reals.push_back(pairs[i].real() + std::abs(pairs[i].imag()));
    auto split_pairs = pairs;
    split_pairs.erase(split_pairs.begin() + static_cast<std::ptrdiff_t>(i));
    PoleSet candidate = polished_set(c, split_reals, split_pairs);
    const double candidate_error = expansion_error(candidate, a);
    if (candidate_error < error) {
      set = std::move(candidate);
      error = candidate_error;
      real_roots = std::move(split_reals);
      pairs = std::move(split_pairs);
    } else {
      ++i;
    }
  }

  for (const auto& pole : set.poles) {
    if (relative_residual(c, pole.value()) > kRootTolerance) {
      throw Error(ErrorCode::RootFindingFailure, "root residual exceeds tolerance after refinement");
    }
  }
  return set;
}

PoleSet mcadams_transform(const PoleSet& poles, double alpha, double clamp_eps) {
  PoleSet out = poles;
  for (auto& pole : out.poles) {
    if (pole.is_real) continue;
    const double warped = std::pow(pole.angle, alpha);
    const double lo = std::min(clamp_eps, pole.angle);
    const double hi = std::max(std::numbers::pi - clamp_eps, pole.angle);
    pole.angle = std::clamp(warped, lo, hi);
  }
  return out;
}

PolynomialExpansion expand_poles(const PoleSet& poles) {
  const auto roots = poles.roots();
  // poly[k] is the coefficient of z^(p-k); poly[0] = 1.
  std::vector<cd> poly(1, cd(1.0, 0.0));
  for (const cd& z : roots) {
    poly.push_back(cd(0.0, 0.0));
    for (std::size_t k = poly.size() - 1; k >= 1; --k) poly[k] -= z * poly[k - 1];
  }
  PolynomialExpansion out;
  out.coefficients.resize(roots.size());
  for (std::size_t k = 1; k < poly.size(); ++k) {
    out.coefficients[k - 1] = -poly[k].real();
    out.max_imag_residue = std::max(out.max_imag_residue, std::abs(poly[k].imag()));
  }
  return out;
}

std::vector<double> poles_to_coefficients(const PoleSet& poles) {
  auto expansion = expand_poles(poles);
  if (!(expansion.max_imag_residue < kImagTolerance)) {
    throw Error(ErrorCode::ConjugateAsymmetry, "pole expansion left an imaginary residue");
  }
  return std::move(expansion.coefficients);
}

}  // namespace anonlab::mcadams
