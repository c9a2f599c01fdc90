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

namespace anonlab::stats {

/// Thread-safe log Gamma for positive arguments.
double log_gamma(double x);

/// I_x(a, b), the regularized incomplete beta function (continued fraction).
double incomplete_beta(double a, double b, double x);

double normal_cdf(double z);
/// Upper tail 1 - Phi(z), accurate far into the tail.
double normal_sf(double z);
/// Inverse of normal_cdf (Wichura's AS 241, ~1e-16 relative).
double normal_quantile(double p);

double student_t_cdf(double t, double df);
/// P(|T| >= |t|) for Student's t with df degrees of freedom.
double student_t_two_tailed(double t, double df);

/// P(F >= f) for the F distribution with (d1, d2) degrees of freedom.
double f_sf(double f, double d1, double d2);

}  // namespace anonlab::stats
