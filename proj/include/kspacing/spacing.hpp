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

#include <cstddef>
#include <span>
#include <vector>

namespace kspacing {

// An ascending sample of n points in [0,1]. The boundary points u(0) = 0 and
// u(n+1) = 1 are implied by the accessor and never stored.
class SortedSample {
 public:
  SortedSample() = default;

  // Takes ownership of values that are already sorted. Throws DomainError if
  // an entry is outside [0,1] or the sequence decreases.
  static SortedSample from_sorted(std::vector<double> values);

  std::size_t size() const { return values_.size(); }
  std::span<const double> values() const { return values_; }

  // Order statistic with sentinels, valid for i in [0, size()+1].
  double u(std::size_t i) const {
    if (i == 0) return 0.0;
    if (i > values_.size()) return 1.0;
    return values_[i - 1];
  }

 private:
  explicit SortedSample(std::vector<double> values) : values_(std::move(values)) {}

  std::vector<double> values_;
};

struct KSpacingResult {
  std::size_t k = 0;
  // Length of the longest window u(i+k) - u(i).
  double m_value = 0.0;
  // Smallest i attaining m_value.
  std::size_t start_index = 0;
};

/// Sorted copy of raw points; throws DomainError naming the first index
/// outside [0,1].
SortedSample order_statistics(std::span<const double> raw);

/// Maximal k-spacing max_{0 <= i <= n+1-k} (u(i+k) - u(i)) in a single O(n)
/// pass. Requires 1 <= k <= n+1.
KSpacingResult max_k_spacing(const SortedSample& s, std::size_t k);

/// Every k-spacing, entry j being u(j+k) - u(j) for j = 0..n+1-k.
std::vector<double> all_k_spacings(const SortedSample& s, std::size_t k);

/// Reference implementation for tests: materializes the sentinel-padded
/// sample and locates each window end by stepping k points forward.
KSpacingResult naive_max_k_spacing(const SortedSample& s, std::size_t k);

}  // namespace kspacing
