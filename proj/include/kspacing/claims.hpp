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

// Named verification checks with fixed default parameters and thresholds.
// Each claim returns every metric it computed together with its threshold,
// so callers can print a full table rather than a bare verdict.

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "kspacing/experiment.hpp"

namespace kspacing {

inline constexpr std::uint64_t kDefaultClaimSeed = 20261016;

struct ClaimCheck {
  std::string label;
  double value = 0.0;
  // "<=", ">=", "<", "==", or "in" (value within [lower, upper]).
  std::string comparator;
  double lower = 0.0;
  double upper = 0.0;
  bool pass = false;
};

struct ClaimReport {
  std::string claim;
  std::vector<ClaimCheck> checks;
  // Free-form table rows printed before the checks.
  std::vector<std::string> notes;

  bool passed() const;
};

// Unset fields fall back to the claim's defaults.
struct ClaimOptions {
  std::optional<unsigned> k;
  std::vector<std::uint64_t> n;
  std::optional<std::uint64_t> trials;
  std::uint64_t seed = kDefaultClaimSeed;
  std::vector<double> x;
  double alpha = kDefaultAlpha;
  unsigned workers = 0;
};

std::span<const std::string_view> claim_names();

/// Throws DomainError for an unknown claim name or invalid options.
ClaimReport verify_claim(std::string_view claim, const ClaimOptions& options);

ClaimReport verify_theorem1(const ClaimOptions& options);
ClaimReport verify_representation(const ClaimOptions& options);
ClaimReport verify_tail(const ClaimOptions& options);
ClaimReport verify_as2(const ClaimOptions& options);
ClaimReport verify_slutsky(const ClaimOptions& options);
ClaimReport verify_independence(const ClaimOptions& options);
ClaimReport verify_watson(const ClaimOptions& options);

/// One-line rendering: "PASS label: value <= upper".
std::string format_check(const ClaimCheck& check);

}  // namespace kspacing
