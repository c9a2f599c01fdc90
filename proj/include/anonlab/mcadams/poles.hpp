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

#include <complex>
#include <span>
#include <vector>

namespace anonlab::mcadams {

/// One representative of a root of A(z). Complex roots store the member with
/// angle in (0, pi); the conjugate partner is implied.
struct Pole {
  double magnitude = 0.0;
  double angle = 0.0;  // radians in [0, pi]
  bool is_real = false;

  std::complex<double> value() const;
  bool operator==(const Pole&) const = default;
};

struct PoleSet {
  std::vector<Pole> poles;

  /// real poles + 2 * complex poles
  std::size_t order() const;
  /// Full root set with conjugates, real poles exactly on the real axis.
  std::vector<std::complex<double>> roots() const;
  bool operator==(const PoleSet&) const = default;
};

/// Roots of z^p - a_1 z^(p-1) - ... - a_p via companion-matrix eigenvalues,
/// one Newton pass per representative, then a relative residual check
/// (|A(root)| / sum_k |c_k| |root|^k < 1e-6, else RootFindingFailure).
PoleSet find_poles(std::span<const double> coefficients);

/// phi' = phi^alpha on complex representatives, magnitudes untouched, real
/// poles returned as-is. The result is kept inside
/// [min(eps, phi), max(pi - eps, phi)] so a pole never lands on the real
/// axis or past Nyquist because of the warp.
PoleSet mcadams_transform(const PoleSet& poles, double alpha, double clamp_eps);

struct PolynomialExpansion {
  std::vector<double> coefficients;  // a_1 .. a_p
  double max_imag_residue = 0.0;
};

/// Multiplies out prod (z - z_k) over the conjugate-closed root set.
PolynomialExpansion expand_poles(const PoleSet& poles);

/// Coefficients a_1..a_p of the all-pole filter; throws ConjugateAsymmetry if
/// the expansion leaves an imaginary residue >= 1e-9.
std::vector<double> poles_to_coefficients(const PoleSet& poles);

}  // namespace anonlab::mcadams
