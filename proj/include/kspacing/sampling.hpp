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

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "kspacing/rng.hpp"
#include "kspacing/spacing.hpp"

namespace kspacing {

// Neumaier's compensated summation.
class CompensatedSum {
 public:
  void add(double v) {
    const double t = sum_ + v;
    if (std::abs(sum_) >= std::abs(v)) {
      comp_ += (sum_ - t) + v;
    } else {
      comp_ += (v - t) + sum_;
    }
    sum_ = t;
  }
  double value() const { return sum_ + comp_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

double compensated_sum(std::span<const double> values);

// Standard exponential variates by inverse transform, X = -log(1 - U). A draw
// of U == 0 is rejected so every variate is strictly positive.
class ExponentialStream {
 public:
  explicit ExponentialStream(StreamKey key) : rng_(key) {}

  double next() {
    double u = rng_.next_uniform();
    while (u == 0.0) u = rng_.next_uniform();
    return -std::log(1.0 - u);
  }

 private:
  CounterRng rng_;
};

// Running sum of the last k pushed values. The sum is updated by compensated
// add/subtract steps and recomputed from the stored window every
// kReanchorInterval pushes to bound drift.
class SlidingWindowSum {
 public:
  static constexpr std::uint64_t kReanchorInterval = std::uint64_t{1} << 20;

  explicit SlidingWindowSum(std::size_t k) : window_(k, 0.0) {}

  void push(double x);
  bool full() const { return pushed_ >= window_.size(); }
  double value() const { return sum_ + comp_; }

 private:
  std::vector<double> window_;
  std::size_t head_ = 0;
  std::uint64_t pushed_ = 0;
  double sum_ = 0.0;
  double comp_ = 0.0;
};

// i.i.d. standard exponential variates X_1..X_{n+1} with their total.
class InnovationDraw {
 public:
  // Injects explicit variates (tests, replay). Throws DomainError unless
  // there is at least one value and all are positive and finite.
  static InnovationDraw from_values(std::vector<double> x);

  std::size_t n_plus_1() const { return x_.size(); }
  std::span<const double> x() const { return x_; }
  // Compensated sum of x.
  double total() const { return total_; }

 private:
  InnovationDraw(std::vector<double> x, double total)
      : x_(std::move(x)), total_(total) {}

  std::vector<double> x_;
  double total_ = 0.0;
};

struct MovingSumSeries {
  std::size_t k = 0;
  // y[i] = x[i] + ... + x[i+k-1], i = 0..n+1-k.
  std::vector<double> y;
};

/// n independent uniforms on [0,1), sorted.
SortedSample sample_uniform_sorted(std::size_t n, StreamKey key);

/// n_plus_1 >= 1 standard exponentials drawn from the stream of key.
InnovationDraw sample_exponentials(std::size_t n_plus_1, StreamKey key);

/// Uniform sample built from normalized partial sums: point i is
/// (X_1 + ... + X_i) / total for i = 1..n.
///
/// Partial sums are carried in double-double precision and the division is
/// corrected with an FMA residual, so each point is within about half an ulp
/// of the exact ratio. This keeps differences of nearby points accurate to a
/// relative 1e-10 even for n = 10^7.
SortedSample spacings_from_exponentials(const InnovationDraw& d);

/// Window sums of order k, 1 <= k <= n+1, by a sliding update.
MovingSumSeries moving_sums(const InnovationDraw& d, std::size_t k);

/// Relative difference between the maximal k-spacing of
/// spacings_from_exponentials(d) and max_j Y_j / total over all n+2-k windows.
/// The two agree exactly in exact arithmetic.
double moving_sum_identity_check(const InnovationDraw& d, std::size_t k);

}  // namespace kspacing
