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

#include "kspacing/asymptotics.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "kspacing/error.hpp"

namespace kspacing {
namespace {

// Beyond this e^{-y} underflows and the Erlang partial sum may overflow, so
// tails are assembled in log space.
constexpr double kDirectTailLimit = 700.0;

void check_tail_argument(double y) {
  if (!(y >= 0.0)) {
    throw DomainError("gamma tail argument must be non-negative, got " +
                      std::to_string(y));
  }
}

void check_shape(GammaTail g) {
  if (g.shape < 1) throw DomainError("gamma shape must be at least 1");
}

// (k-1) log log n - log (k-1)!, the part of a(n,k) beyond log n.
double centering_excess(std::uint64_t n, unsigned k) {
  if (k == 1) return 0.0;
  const double log_n = std::log(static_cast<double>(n));
  return (k - 1) * std::log(log_n) - log_factorial(k - 1);
}

}  // namespace

double log_factorial(unsigned k) {
  double acc = 0.0;
  for (unsigned j = 2; j <= k; ++j) acc += std::log(static_cast<double>(j));
  return acc;
}

LimitNormalization centering(std::uint64_t n, unsigned k) {
  if (k < 1) throw DomainError("spacing order k must be at least 1");
  if (n < 1) throw DomainError("sample size n must be at least 1");
  if (k >= 2 && n < 3) {
    throw DomainError("k >= 2 requires n >= 3 so that log log n > 0 (got n=" +
                      std::to_string(n) + ")");
  }
  const double a = std::log(static_cast<double>(n)) + centering_excess(n, k);
  return {n, k, a};
}

double gumbel_cdf(double t) { return std::exp(-std::exp(-t)); }

double gumbel_quantile(double p) {
  if (!(p > 0.0 && p < 1.0)) {
    throw DomainError("Gumbel quantile needs 0 < p < 1, got " + std::to_string(p));
  }
  return -std::log(-std::log(p));
}

double gumbel_upper_tail(double t) { return -std::expm1(-std::exp(-t)); }

double pvalue_max_k_spacing(std::uint64_t n, unsigned k, double m_observed) {
  const LimitNormalization norm = centering(n, k);
  if (!(m_observed > 0.0 && m_observed <= 1.0)) {
    throw DomainError("observed maximal spacing m must lie in (0,1], got " +
                      std::to_string(m_observed));
  }
  return gumbel_upper_tail(static_cast<double>(n) * m_observed - norm.a);
}

double gamma_tail_exact(GammaTail g, double y) {
  check_shape(g);
  check_tail_argument(y);
  if (y <= kDirectTailLimit) {
    double term = 1.0;
    double sum = 1.0;
    for (unsigned j = 1; j < g.shape; ++j) {
      term *= y / j;
      sum += term;
    }
    return std::exp(-y) * sum;
  }
  // log-sum-exp over log(y^j / j!) - y.
  const double log_y = std::log(y);
  double top = -INFINITY;
  for (unsigned j = 0; j < g.shape; ++j) {
    top = std::max(top, j * log_y - log_factorial(j));
  }
  double sum = 0.0;
  for (unsigned j = 0; j < g.shape; ++j) {
    sum += std::exp(j * log_y - log_factorial(j) - top);
  }
  return std::exp(top - y + std::log(sum));
}

double gamma_tail_asymptotic(GammaTail g, double y) {
  check_shape(g);
  check_tail_argument(y);
  if (g.shape == 1) return std::exp(-y);
  if (y == 0.0) return 0.0;
  if (y <= kDirectTailLimit) {
    return std::pow(y, g.shape - 1) * std::exp(-y) / std::exp(log_factorial(g.shape - 1));
  }
  return std::exp((g.shape - 1) * std::log(y) - y - log_factorial(g.shape - 1));
}

double gamma_tail_ratio(GammaTail g, double y) {
  check_shape(g);
  if (!(y > 0.0)) throw DomainError("tail ratio needs y > 0");
  // Horner form of sum_{i=0}^{m} m! / ((m-i)! y^i) with m = shape-1:
  // 1 + (m/y)(1 + ((m-1)/y)(1 + ... (1 + 1/y))).
  double acc = 1.0;
  for (unsigned i = 1; i < g.shape; ++i) acc = 1.0 + acc * i / y;
  return acc;
}

WatsonThreshold watson_threshold(std::uint64_t n, unsigned k, double x) {
  const LimitNormalization norm = centering(n, k);
  return {k, x, std::exp(-x), norm.a + x};
}

double as2_check(unsigned k, double x, std::uint64_t n) {
  const WatsonThreshold w = watson_threshold(n, k, x);
  double term = 1.0;
  double sum = 1.0;
  for (unsigned j = 1; j < k; ++j) {
    term *= w.y_n / j;
    sum += term;
  }
  return std::exp(-(x + centering_excess(n, k))) * sum;
}

}  // namespace kspacing
