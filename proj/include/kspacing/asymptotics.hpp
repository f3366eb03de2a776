// Copyright 2026 The kspacing Authors.
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

#include <cstdint>

// Closed-form quantities for the Gumbel limit of the maximal k-spacing:
//
//   n M_n^(k) - a(n,k)  ->  G,   a(n,k) = log n + (k-1) log log n - log (k-1)!
//
// where G is standard Gumbel. Sample sizes are taken as 64-bit counts so that
// tail calibrations can be evaluated far beyond simulable n.

namespace kspacing {

struct LimitNormalization {
  std::uint64_t n = 0;
  unsigned k = 0;
  // Centering constant a(n,k).
  double a = 0.0;
};

struct WatsonThreshold {
  unsigned k = 0;
  double x = 0.0;
  // exp(-x), the limiting expected number of exceedances.
  double xi = 0.0;
  // a(n,k) + x.
  double y_n = 0.0;
};

// Erlang (integer-shape gamma) law of a sum of `shape` unit exponentials.
struct GammaTail {
  unsigned shape = 1;
};

/// log((k)!) as a sum of logarithms; exact enough for every k used here.
double log_factorial(unsigned k);

/// Throws DomainError unless k >= 1 and n >= 1 (k == 1) or n >= 3 (k >= 2).
LimitNormalization centering(std::uint64_t n, unsigned k);

double gumbel_cdf(double t);

/// Inverse of gumbel_cdf; p must lie in (0,1).
double gumbel_quantile(double p);

/// Asymptotic upper-tail probability 1 - exp(-exp(-t)) of the normalized
/// statistic t = n m - a(n,k). First-order only: for k >= 2 the approach to
/// the limit is log log-slow and small p-values are typically optimistic.
double pvalue_max_k_spacing(std::uint64_t n, unsigned k, double m_observed);

/// Same tail at a given normalized statistic, computed without cancellation.
double gumbel_upper_tail(double t);

/// P(Y > y) for Y ~ Gamma(shape, 1), exactly: e^{-y} sum_{j<shape} y^j / j!.
double gamma_tail_exact(GammaTail g, double y);

/// Leading-order tail y^{shape-1} e^{-y} / (shape-1)!.
double gamma_tail_asymptotic(GammaTail g, double y);

/// gamma_tail_exact / gamma_tail_asymptotic evaluated without exponentials:
/// sum_{j<shape} (shape-1)! / (j! y^{shape-1-j}).
double gamma_tail_ratio(GammaTail g, double y);

WatsonThreshold watson_threshold(std::uint64_t n, unsigned k, double x);

/// n P(Y_1 > y_n) for moving sums of order k, which tends to xi = e^{-x}.
/// Computed as exp(log n - y_n) * sum_{j<k} y_n^j / j! with log n - y_n
/// formed symbolically, so k = 1 returns exp(-x) bit-for-bit.
double as2_check(unsigned k, double x, std::uint64_t n);

}  // namespace kspacing
