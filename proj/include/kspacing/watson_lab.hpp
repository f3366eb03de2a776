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

// Monte Carlo checks of the extreme-value machinery behind the maximal
// k-spacing limit: maxima of the (k-1)-dependent moving sums
// Y_i = X_i + ... + X_{i+k-1} of unit exponentials, the joint-exceedance
// condition that makes them behave like i.i.d. maxima, the k = 2 pair
// decomposition into interleaved maxima A_n and B_n, and the Slutsky term
// log n (n / S_{n+1} - 1).

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "kspacing/experiment.hpp"
#include "kspacing/rng.hpp"
#include "kspacing/sampling.hpp"

namespace kspacing {

// Stationary m-dependent sequence Y_i = window_fn(X_i, ..., X_{i+m}) driven by
// i.i.d. unit exponentials. window_fn must be pure; boundedness is not checked.
struct MDepProcessSpec {
  unsigned m = 0;
  std::function<double(std::span<const double>)> window_fn;
};

/// Moving sums of order k (m = k - 1).
MDepProcessSpec moving_sum_process(unsigned k);

struct As1Estimate {
  // max over lags a = 1..m of P(Y_{i+a} > y | Y_i > y); empty when the run
  // produced no exceedance (and m > 0).
  std::optional<double> max_conditional;
  // Conditional frequency for lag a at index a-1 (empty entries are NaN).
  std::vector<double> per_lag;
  // Number of indices i with Y_i > y.
  std::uint64_t exceedances = 0;
  // Fewer than kMinExceedances exceedances.
  bool low_confidence = true;

  static constexpr std::uint64_t kMinExceedances = 50;
};

/// Ergodic estimate of the joint-exceedance ratio from one long run of
/// run_length >= 10^4 consecutive Y values. For m = 0 the lag set is empty and
/// the maximum is defined as 0.
As1Estimate as1_estimate(const MDepProcessSpec& spec, double y,
                         std::uint64_t run_length, StreamKey key);

struct WatsonLimitEstimate {
  double x = 0.0;
  double y_n = 0.0;
  // Fraction of trials with max_{i<=n} Y_i <= y_n.
  double empirical = 0.0;
  // exp(-xi) = exp(-e^{-x}).
  double asymptotic = 0.0;
  // exp(-n P(Y_1 > y_n)).
  double finite_n = 0.0;
  std::uint64_t trials = 0;
  // Binomial standard error at finite_n.
  double standard_error = 0.0;
};

/// Per-trial maxima of Y_1..Y_n (n + k - 1 innovations per trial, trial t
/// reading key.substream(t)). Exposed so several thresholds can share trials.
std::vector<double> moving_sum_maxima(unsigned k, std::uint64_t n,
                                      std::uint64_t trials, StreamKey key,
                                      unsigned workers = 0);

WatsonLimitEstimate watson_limit_estimate(unsigned k, double x, std::uint64_t n,
                                          std::uint64_t trials, StreamKey key,
                                          unsigned workers = 0);

/// Evaluates several shifts x against one shared set of trial maxima.
std::vector<WatsonLimitEstimate> watson_limit_estimates(
    unsigned k, std::span<const double> xs, std::uint64_t n,
    std::uint64_t trials, StreamKey key, unsigned workers = 0);

enum class PairMode {
  // A and B read the same 2n+1 innovations.
  overlapping,
  // A and B read independent streams.
  disjoint,
};

// Interleaved maxima of one trial:
//   A_n = max_{i<=n} (X_{2i-1} + X_{2i}),  B_n = max_{i<=n} (X_{2i} + X_{2i+1}).
struct PairMaximaResult {
  double a_max = 0.0;
  double b_max = 0.0;
  // Each minus (log n + log log n).
  double a_normalized = 0.0;
  double b_normalized = 0.0;
};

PairMaximaResult pair_maxima(std::uint64_t n, StreamKey key, PairMode mode);

struct IndependenceReport {
  std::uint64_t n = 0;
  PairMode mode = PairMode::overlapping;
  std::vector<PairMaximaResult> trials;
  // Pearson correlation of (a', b').
  double correlation = 0.0;
  // gumbel_quantile(0.8).
  double threshold = 0.0;
  // |P(a'>t, b'>t) - P(a'>t) P(b'>t)|.
  double joint_exceedance_gap = 0.0;
  // max(a', b') - log 2 against the standard Gumbel.
  KSReport max_shifted_vs_gumbel;
};

/// Requires n >= 16 and trials >= 500.
IndependenceReport independence_experiment(std::uint64_t n, std::uint64_t trials,
                                           StreamKey key,
                                           PairMode mode = PairMode::overlapping,
                                           unsigned workers = 0);

// Splits the maximal 2-spacing of the exponential representation into the
// odd-window maximum A and even-window maximum B.
struct PairDecomposition {
  // max(A_{ceil(n/2)}, B_{floor(n/2)}) / total: every window of X_1..X_{n+1}.
  double full_range = 0.0;
  // max(A_{floor(n/2)}, B_{floor((n-1)/2)}) / total. These shorter ranges
  // omit the last window Y_n.
  double floor_halving = 0.0;
};

/// Requires n >= 2, i.e. at least three innovations.
PairDecomposition m2_pair_decomposition(const InnovationDraw& d);

/// log n * (n / total - 1).
double slutsky_value(std::uint64_t n, double total);

/// One slutsky_value per trial, with total = X_1 + ... + X_{n+1} summed with
/// compensation from key.substream(trial). Requires n >= 3.
std::vector<double> slutsky_remainder(std::uint64_t n, std::uint64_t trials,
                                      StreamKey key, unsigned workers = 0);

}  // namespace kspacing
