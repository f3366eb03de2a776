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

#include "kspacing/spacing.hpp"

#include <algorithm>
#include <string>

#include "kspacing/error.hpp"

namespace kspacing {
namespace {

void check_unit_interval(std::span<const double> values) {
  for (std::size_t i = 0; i < values.size(); ++i) {
    // Negated form also rejects NaN.
    if (!(values[i] >= 0.0 && values[i] <= 1.0)) {
      throw DomainError("sample entry at index " + std::to_string(i) +
                        " is outside [0,1]");
    }
  }
}

void check_order(const SortedSample& s, std::size_t k) {
  if (k < 1 || k > s.size() + 1) {
    throw DomainError("spacing order k=" + std::to_string(k) +
                      " must satisfy 1 <= k <= n+1 with n=" +
                      std::to_string(s.size()));
  }
}

}  // namespace

SortedSample SortedSample::from_sorted(std::vector<double> values) {
  check_unit_interval(values);
  if (auto it = std::is_sorted_until(values.begin(), values.end());
      it != values.end()) {
    throw DomainError("sample is not non-decreasing at index " +
                      std::to_string(it - values.begin()));
  }
  return SortedSample(std::move(values));
}

SortedSample order_statistics(std::span<const double> raw) {
  check_unit_interval(raw);
  std::vector<double> values(raw.begin(), raw.end());
  std::sort(values.begin(), values.end());
  return SortedSample::from_sorted(std::move(values));
}

KSpacingResult max_k_spacing(const SortedSample& s, std::size_t k) {
  check_order(s, k);
  const std::size_t last = s.size() + 1 - k;
  KSpacingResult best{k, s.u(k) - s.u(0), 0};
  for (std::size_t i = 1; i <= last; ++i) {
    const double gap = s.u(i + k) - s.u(i);
    if (gap > best.m_value) {
      best.m_value = gap;
      best.start_index = i;
    }
  }
  return best;
}

std::vector<double> all_k_spacings(const SortedSample& s, std::size_t k) {
  check_order(s, k);
  std::vector<double> out(s.size() + 2 - k);
  for (std::size_t j = 0; j < out.size(); ++j) out[j] = s.u(j + k) - s.u(j);
  return out;
}

KSpacingResult naive_max_k_spacing(const SortedSample& s, std::size_t k) {
  check_order(s, k);
  std::vector<double> padded;
  padded.reserve(s.size() + 2);
  padded.push_back(0.0);
  padded.insert(padded.end(), s.values().begin(), s.values().end());
  padded.push_back(1.0);

  std::vector<double> gaps;
  for (std::size_t i = 0; i + k < padded.size(); ++i) {
    std::size_t end = i;
    for (std::size_t step = 0; step < k; ++step) ++end;
    gaps.push_back(padded[end] - padded[i]);
  }
  const double top = *std::max_element(gaps.begin(), gaps.end());
  const auto first = std::find(gaps.begin(), gaps.end(), top);
  return {k, top, static_cast<std::size_t>(first - gaps.begin())};
}

}  // namespace kspacing
