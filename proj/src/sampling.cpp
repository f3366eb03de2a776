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

#include "kspacing/sampling.hpp"

#include <algorithm>
#include <string>

#include "kspacing/error.hpp"

namespace kspacing {

double compensated_sum(std::span<const double> values) {
  CompensatedSum acc;
  for (double v : values) acc.add(v);
  return acc.value();
}

void SlidingWindowSum::push(double x) {
  const double evicted = window_[head_];
  window_[head_] = x;
  head_ = (head_ + 1) % window_.size();
  ++pushed_;
  if (pushed_ % kReanchorInterval == 0) {
    sum_ = compensated_sum(window_);
    comp_ = 0.0;
    return;
  }
  // Two TwoSum steps; the rounding errors go into comp_.
  for (const double v : {x, -evicted}) {
    const double t = sum_ + v;
    const double bv = t - sum_;
    comp_ += (sum_ - (t - bv)) + (v - bv);
    sum_ = t;
  }
}

InnovationDraw InnovationDraw::from_values(std::vector<double> x) {
  if (x.empty()) throw DomainError("an innovation draw needs at least one variate");
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (!(x[i] > 0.0) || !std::isfinite(x[i])) {
      throw DomainError("innovation at index " + std::to_string(i) +
                        " is not a positive finite number");
    }
  }
  const double total = compensated_sum(x);
  return InnovationDraw(std::move(x), total);
}

SortedSample sample_uniform_sorted(std::size_t n, StreamKey key) {
  CounterRng rng(key);
  std::vector<double> values(n);
  for (double& v : values) v = rng.next_uniform();
  std::sort(values.begin(), values.end());
  return SortedSample::from_sorted(std::move(values));
}

InnovationDraw sample_exponentials(std::size_t n_plus_1, StreamKey key) {
  if (n_plus_1 < 1) throw DomainError("sample_exponentials needs n+1 >= 1");
  ExponentialStream stream(key);
  std::vector<double> x(n_plus_1);
  for (double& v : x) v = stream.next();
  return InnovationDraw::from_values(std::move(x));
}

SortedSample spacings_from_exponentials(const InnovationDraw& d) {
  const auto x = d.x();
  const double total = d.total();
  const std::size_t n = x.size() - 1;
  std::vector<double> points(n);

  // (hi, lo) is the running partial sum as an unevaluated double-double.
  double hi = 0.0;
  double lo = 0.0;
  double prev = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double s = hi + x[i];
    const double bb = s - hi;
    const double err = (hi - (s - bb)) + (x[i] - bb) + lo;
    hi = s + err;
    lo = err - (hi - s);

    double q = hi / total;
    const double residual = std::fma(-q, total, hi);
    q += (residual + lo) / total;
    prev = std::clamp(q, prev, 1.0);
    points[i] = prev;
  }
  return SortedSample::from_sorted(std::move(points));
}

MovingSumSeries moving_sums(const InnovationDraw& d, std::size_t k) {
  const auto x = d.x();
  if (k < 1 || k > x.size()) {
    throw DomainError("moving sum order k=" + std::to_string(k) +
                      " must satisfy 1 <= k <= n+1=" + std::to_string(x.size()));
  }
  MovingSumSeries out{k, {}};
  out.y.reserve(x.size() + 1 - k);
  SlidingWindowSum window(k);
  for (double v : x) {
    window.push(v);
    if (window.full()) out.y.push_back(window.value());
  }
  return out;
}

double moving_sum_identity_check(const InnovationDraw& d, std::size_t k) {
  const MovingSumSeries series = moving_sums(d, k);
  const double via_sums =
      *std::max_element(series.y.begin(), series.y.end()) / d.total();
  const double via_spacings =
      max_k_spacing(spacings_from_exponentials(d), k).m_value;
  return std::abs(via_spacings - via_sums) / via_sums;
}

}  // namespace kspacing
