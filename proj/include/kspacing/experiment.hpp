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
#include <cstdint>
#include <functional>
#include <span>
#include <string_view>
#include <vector>

#include "kspacing/asymptotics.hpp"
#include "kspacing/rng.hpp"

namespace kspacing {

// Right-continuous empirical distribution function of a finite sample.
class Ecdf {
 public:
  Ecdf() = default;
  // Sorts the sample; throws DomainError on NaN entries.
  static Ecdf from_sample(std::vector<double> sample);

  std::size_t size() const { return sorted_.size(); }
  bool empty() const { return sorted_.empty(); }
  std::span<const double> sorted() const { return sorted_; }

  // Fraction of the sample <= t.
  double operator()(double t) const;
  // Fraction of the sample < t.
  double left_limit(double t) const;
  // Smallest sample value v with F(v) >= p, for p in (0,1].
  double quantile(double p) const;

  friend bool operator==(const Ecdf&, const Ecdf&) = default;

 private:
  std::vector<double> sorted_;
};

struct KSReport {
  double statistic = 0.0;
  // n for one sample, n_a n_b / (n_a + n_b) for two.
  double n_eff = 0.0;
  // Asymptotic Kolmogorov p-value at sqrt(n_eff) * statistic.
  double p_value = 1.0;
  double alpha = 1e-3;
  bool reject = false;
  // Set when n_eff < 50, where the asymptotic p-value is unreliable.
  bool low_sample = false;
};

inline constexpr double kDefaultAlpha = 1e-3;

/// Two-sided sup |F_n - F| using both sides of every step.
KSReport ks_one_sample(const Ecdf& e, const std::function<double(double)>& cdf,
                       double alpha = kDefaultAlpha);

/// Sup distance between two empirical step functions over the merged support.
KSReport ks_two_sample(const Ecdf& a, const Ecdf& b, double alpha = kDefaultAlpha);

/// Q(lambda) = 2 sum_{j>=1} (-1)^{j-1} exp(-2 j^2 lambda^2), clamped to [0,1].
double kolmogorov_sf(double lambda);

enum class SamplingPath { uniform_sort, exponential_representation };

std::string_view to_string(SamplingPath path);

struct ExperimentConfig {
  unsigned k = 1;
  std::vector<std::uint64_t> n_list;
  std::uint64_t trials = 1;
  std::uint64_t seed = 0;
  SamplingPath path = SamplingPath::uniform_sort;
  // 0 = one per hardware thread. Never affects results.
  unsigned workers = 0;
  double alpha = kDefaultAlpha;
};

struct TrialRecord {
  unsigned k = 0;
  std::uint64_t n = 0;
  std::uint64_t trial = 0;
  std::uint64_t seed = 0;
  double m_value = 0.0;
  // n * m_value - a(n,k).
  double t_normalized = 0.0;

  friend bool operator==(const TrialRecord&, const TrialRecord&) = default;
};

struct LimitExperimentResult {
  LimitNormalization normalization;
  std::vector<TrialRecord> records;  // ordered by trial index
  Ecdf ecdf;                         // of t_normalized
  KSReport ks;                       // against gumbel_cdf
};

/// Throws DomainError if trials == 0, n_list is empty, or some n violates the
/// centering precondition or k <= n+1.
void validate(const ExperimentConfig& cfg);

/// Maximal k-spacing of one trial of size n on the given sampling path.
double simulate_max_k_spacing(std::uint64_t n, unsigned k, SamplingPath path,
                              StreamKey key);

/// Trials [first, last) for sample size n. Trial i reads stream
/// (cfg.seed, i), so any partition of the index range reproduces the same
/// records.
std::vector<TrialRecord> run_trial_range(const ExperimentConfig& cfg,
                                         std::uint64_t n, std::uint64_t first,
                                         std::uint64_t last);

/// Concatenates partitions and orders the records by (n, trial).
std::vector<TrialRecord> merge_trial_records(
    std::vector<std::vector<TrialRecord>> partitions);

/// Builds the ECDF and Gumbel KS report from the records of one n.
LimitExperimentResult summarize(const ExperimentConfig& cfg, std::uint64_t n,
                                std::vector<TrialRecord> records);

/// Runs cfg.trials independent trials for every n in cfg.n_list.
std::vector<LimitExperimentResult> run_limit_experiment(const ExperimentConfig& cfg);

}  // namespace kspacing
