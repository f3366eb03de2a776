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

#include "kspacing/experiment.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "kspacing/error.hpp"
#include "kspacing/parallel.hpp"
#include "kspacing/sampling.hpp"
#include "kspacing/spacing.hpp"

namespace kspacing {
namespace {

KSReport make_report(double statistic, double n_eff, double alpha) {
  KSReport r;
  r.statistic = statistic;
  r.n_eff = n_eff;
  r.p_value = kolmogorov_sf(std::sqrt(n_eff) * statistic);
  r.alpha = alpha;
  r.reject = r.p_value < alpha;
  r.low_sample = n_eff < 50.0;
  return r;
}

}  // namespace

Ecdf Ecdf::from_sample(std::vector<double> sample) {
  if (std::any_of(sample.begin(), sample.end(), [](double v) { return std::isnan(v); })) {
    throw DomainError("ECDF sample contains NaN");
  }
  std::sort(sample.begin(), sample.end());
  Ecdf e;
  e.sorted_ = std::move(sample);
  return e;
}

double Ecdf::operator()(double t) const {
  if (sorted_.empty()) return 0.0;
  const auto it = std::upper_bound(sorted_.begin(), sorted_.end(), t);
  return static_cast<double>(it - sorted_.begin()) / static_cast<double>(sorted_.size());
}

double Ecdf::left_limit(double t) const {
  if (sorted_.empty()) return 0.0;
  const auto it = std::lower_bound(sorted_.begin(), sorted_.end(), t);
  return static_cast<double>(it - sorted_.begin()) / static_cast<double>(sorted_.size());
}

double Ecdf::quantile(double p) const {
  if (sorted_.empty()) throw DomainError("quantile of an empty ECDF");
  if (!(p > 0.0 && p <= 1.0)) throw DomainError("ECDF quantile needs 0 < p <= 1");
  const double n = static_cast<double>(sorted_.size());
  auto idx = static_cast<std::size_t>(std::ceil(p * n));
  idx = std::clamp<std::size_t>(idx, 1, sorted_.size());
  return sorted_[idx - 1];
}

KSReport ks_one_sample(const Ecdf& e, const std::function<double(double)>& cdf,
                       double alpha) {
  if (e.empty()) throw DomainError("KS test needs a non-empty sample");
  const auto xs = e.sorted();
  const double n = static_cast<double>(xs.size());
  double d = 0.0;
  std::size_t lo = 0;
  while (lo < xs.size()) {
    std::size_t hi = lo;
    while (hi < xs.size() && xs[hi] == xs[lo]) ++hi;
    const double f = cdf(xs[lo]);
    d = std::max({d, std::abs(static_cast<double>(hi) / n - f),
                  std::abs(static_cast<double>(lo) / n - f)});
    lo = hi;
  }
  return make_report(d, n, alpha);
}

KSReport ks_two_sample(const Ecdf& a, const Ecdf& b, double alpha) {
  if (a.empty() || b.empty()) throw DomainError("KS test needs non-empty samples");
  const auto xa = a.sorted();
  const auto xb = b.sorted();
  const double na = static_cast<double>(xa.size());
  const double nb = static_cast<double>(xb.size());
  std::size_t i = 0;
  std::size_t j = 0;
  double d = 0.0;
  while (i < xa.size() && j < xb.size()) {
    const double t = std::min(xa[i], xb[j]);
    while (i < xa.size() && xa[i] == t) ++i;
    while (j < xb.size() && xb[j] == t) ++j;
    d = std::max(d, std::abs(static_cast<double>(i) / na - static_cast<double>(j) / nb));
  }
  // Past the end of one sample its ECDF is 1; the other only grows toward 1,
  // so the last merged point already attains the remaining maximum.
  if (i < xa.size()) d = std::max(d, 1.0 - static_cast<double>(i) / na);
  if (j < xb.size()) d = std::max(d, 1.0 - static_cast<double>(j) / nb);
  return make_report(d, na * nb / (na + nb), alpha);
}

double kolmogorov_sf(double lambda) {
  if (!(lambda > 0.0)) return 1.0;
  if (lambda < 1.18) {
    // Theta-function form of the CDF; converges in a few terms here.
    constexpr double kPi = 3.14159265358979323846;
    const double w = kPi * kPi / (8.0 * lambda * lambda);
    double cdf = 0.0;
    for (int j = 1; j < 20; ++j) {
      const double odd = 2.0 * j - 1.0;
      const double term = std::exp(-odd * odd * w);
      cdf += term;
      if (term < 1e-17 * cdf) break;
    }
    cdf *= std::sqrt(2.0 * kPi) / lambda;
    return std::clamp(1.0 - cdf, 0.0, 1.0);
  }
  double sum = 0.0;
  double sign = 1.0;
  for (int j = 1; j < 100; ++j) {
    const double term = std::exp(-2.0 * j * j * lambda * lambda);
    sum += sign * term;
    if (term < 1e-17) break;
    sign = -sign;
  }
  return std::clamp(2.0 * sum, 0.0, 1.0);
}

std::string_view to_string(SamplingPath path) {
  switch (path) {
    case SamplingPath::uniform_sort: return "sort";
    case SamplingPath::exponential_representation: return "exp";
  }
  return "unknown";
}

void validate(const ExperimentConfig& cfg) {
  if (cfg.trials < 1) throw DomainError("trials must be at least 1");
  if (cfg.n_list.empty()) throw DomainError("at least one sample size n is required");
  for (std::uint64_t n : cfg.n_list) {
    centering(n, cfg.k);
    if (cfg.k > n + 1) {
      throw DomainError("spacing order k=" + std::to_string(cfg.k) +
                        " exceeds n+1 for n=" + std::to_string(n));
    }
  }
}

double simulate_max_k_spacing(std::uint64_t n, unsigned k, SamplingPath path,
                              StreamKey key) {
  const SortedSample sample =
      path == SamplingPath::uniform_sort
          ? sample_uniform_sorted(n, key)
          : spacings_from_exponentials(sample_exponentials(n + 1, key));
  return max_k_spacing(sample, k).m_value;
}

std::vector<TrialRecord> run_trial_range(const ExperimentConfig& cfg,
                                         std::uint64_t n, std::uint64_t first,
                                         std::uint64_t last) {
  const double a = centering(n, cfg.k).a;
  std::vector<TrialRecord> out(last > first ? last - first : 0);
  for_each_index(out.size(), cfg.workers, [&](std::size_t slot) {
    const std::uint64_t trial = first + slot;
    const double m = simulate_max_k_spacing(n, cfg.k, cfg.path, {cfg.seed, trial});
    out[slot] = {cfg.k, n, trial, cfg.seed, m, static_cast<double>(n) * m - a};
  });
  return out;
}

std::vector<TrialRecord> merge_trial_records(
    std::vector<std::vector<TrialRecord>> partitions) {
  std::vector<TrialRecord> merged;
  for (auto& part : partitions) {
    merged.insert(merged.end(), part.begin(), part.end());
  }
  std::sort(merged.begin(), merged.end(), [](const TrialRecord& l, const TrialRecord& r) {
    return l.n != r.n ? l.n < r.n : l.trial < r.trial;
  });
  return merged;
}

LimitExperimentResult summarize(const ExperimentConfig& cfg, std::uint64_t n,
                                std::vector<TrialRecord> records) {
  std::vector<double> t(records.size());
  std::transform(records.begin(), records.end(), t.begin(),
                 [](const TrialRecord& r) { return r.t_normalized; });
  LimitExperimentResult result;
  result.normalization = centering(n, cfg.k);
  result.records = std::move(records);
  result.ecdf = Ecdf::from_sample(std::move(t));
  result.ks = ks_one_sample(result.ecdf, gumbel_cdf, cfg.alpha);
  return result;
}

std::vector<LimitExperimentResult> run_limit_experiment(const ExperimentConfig& cfg) {
  validate(cfg);
  std::vector<LimitExperimentResult> results;
  results.reserve(cfg.n_list.size());
  for (std::uint64_t n : cfg.n_list) {
    results.push_back(summarize(cfg, n, run_trial_range(cfg, n, 0, cfg.trials)));
  }
  return results;
}

}  // namespace kspacing
