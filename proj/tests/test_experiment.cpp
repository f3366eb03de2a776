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

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include "kspacing/asymptotics.hpp"
#include "kspacing/error.hpp"
#include "kspacing/experiment.hpp"
#include "kspacing/rng.hpp"

namespace kspacing {
namespace {

TEST(Ecdf, StepValues) {
  const Ecdf e = Ecdf::from_sample({3.0, 1.0, 2.0, 2.0});
  EXPECT_EQ(e(0.5), 0.0);
  EXPECT_EQ(e(1.0), 0.25);
  EXPECT_EQ(e.left_limit(2.0), 0.25);
  EXPECT_EQ(e(2.0), 0.75);
  EXPECT_EQ(e(3.0), 1.0);
  EXPECT_EQ(e.quantile(0.25), 1.0);
  EXPECT_EQ(e.quantile(0.26), 2.0);
  EXPECT_EQ(e.quantile(1.0), 3.0);
  EXPECT_THROW(e.quantile(0.0), DomainError);
  EXPECT_THROW(Ecdf::from_sample({1.0, std::nan("")}), DomainError);
}

TEST(EcdfProperty, MonotoneRightContinuousAndQuantileConsistent) {
  std::mt19937_64 gen(5);
  std::normal_distribution<double> normal;
  for (int rep = 0; rep < 50; ++rep) {
    std::vector<double> v(1 + rep * 7);
    for (double& x : v) x = std::round(normal(gen) * 4.0) / 4.0;  // forces ties
    const Ecdf e = Ecdf::from_sample(v);
    double prev = 0.0;
    for (double t = -5.0; t <= 5.0; t += 0.125) {
      const double f = e(t);
      ASSERT_GE(f, prev);
      ASSERT_LE(e.left_limit(t), f);
      ASSERT_EQ(e(t + 1e-12), f) << "right-continuity at " << t;
      prev = f;
    }
    for (double p = 0.01; p <= 1.0; p += 0.01) {
      const double q = e.quantile(p);
      ASSERT_GE(e(q), p - 1e-12);
      ASSERT_LT(e.left_limit(q), p + 1e-12);
    }
  }
}

double uniform_cdf(double t) { return std::clamp(t, 0.0, 1.0); }

TEST(KSOneSample, QuantileGridIsNearlyExact) {
  std::vector<double> grid;
  for (int i = 1; i <= 1000; ++i) grid.push_back(gumbel_quantile((i - 0.5) / 1000.0));
  const KSReport r = ks_one_sample(Ecdf::from_sample(grid), gumbel_cdf);
  EXPECT_LE(r.statistic, 5.01e-4);
  EXPECT_FALSE(r.reject);
  EXPECT_FALSE(r.low_sample);
}

TEST(KSOneSample, SinglePointAtMedian) {
  const KSReport r = ks_one_sample(Ecdf::from_sample({0.5}), uniform_cdf);
  EXPECT_DOUBLE_EQ(r.statistic, 0.5);
  EXPECT_TRUE(r.low_sample);
  EXPECT_EQ(r.n_eff, 1.0);
}

TEST(KSOneSample, GumbelVariatesAreAccepted) {
  CounterRng rng({99, 0});
  std::vector<double> v(5000);
  for (double& x : v) {
    double u = rng.next_uniform();
    while (u == 0.0) u = rng.next_uniform();
    x = gumbel_quantile(u);
  }
  const KSReport r = ks_one_sample(Ecdf::from_sample(v), gumbel_cdf);
  EXPECT_GE(r.p_value, 1e-3);
  EXPECT_FALSE(r.reject);
}

TEST(KSOneSample, DetectsShift) {
  std::vector<double> grid;
  for (int i = 1; i <= 1000; ++i) grid.push_back(gumbel_quantile((i - 0.5) / 1000.0) + 0.5);
  const KSReport r = ks_one_sample(Ecdf::from_sample(grid), gumbel_cdf);
  EXPECT_TRUE(r.reject);
  EXPECT_LT(r.p_value, 1e-10);
}

TEST(KSTwoSample, Examples) {
  const Ecdf a = Ecdf::from_sample({0.1, 0.2, 0.3});
  const KSReport same = ks_two_sample(a, a);
  EXPECT_EQ(same.statistic, 0.0);
  EXPECT_EQ(same.p_value, 1.0);

  const KSReport apart = ks_two_sample(Ecdf::from_sample({0.0}), Ecdf::from_sample({1.0}));
  EXPECT_EQ(apart.statistic, 1.0);
  EXPECT_EQ(apart.n_eff, 0.5);

  const KSReport tie = ks_two_sample(Ecdf::from_sample({0.0, 1.0}), Ecdf::from_sample({1.0}));
  EXPECT_DOUBLE_EQ(tie.statistic, 0.5);
}

TEST(KolmogorovSf, ReferenceValues) {
  EXPECT_EQ(kolmogorov_sf(0.0), 1.0);
  EXPECT_EQ(kolmogorov_sf(-1.0), 1.0);
  EXPECT_NEAR(kolmogorov_sf(1.358), 0.0500268, 1e-6);
  EXPECT_LE(kolmogorov_sf(3.0), 1e-7);
  EXPECT_NEAR(kolmogorov_sf(3.0), 3.0459e-8, 1e-11);
  EXPECT_NEAR(kolmogorov_sf(0.5), 0.9639452436648751, 1e-12);
  EXPECT_NEAR(kolmogorov_sf(1.18 - 1e-9), kolmogorov_sf(1.18 + 1e-9), 1e-8);
  double prev = 1.0;
  for (double l = 0.05; l < 4.0; l += 0.05) {
    const double q = kolmogorov_sf(l);
    ASSERT_LE(q, prev);
    ASSERT_GE(q, 0.0);
    prev = q;
  }
}

ExperimentConfig small_config() {
  ExperimentConfig cfg;
  cfg.k = 2;
  cfg.n_list = {50, 300};
  cfg.trials = 64;
  cfg.seed = 42;
  return cfg;
}

TEST(Experiment, ValidateRejectsBadConfigs) {
  ExperimentConfig cfg = small_config();
  EXPECT_NO_THROW(validate(cfg));
  cfg.trials = 0;
  EXPECT_THROW(validate(cfg), DomainError);
  cfg = small_config();
  cfg.n_list.clear();
  EXPECT_THROW(validate(cfg), DomainError);
  cfg = small_config();
  cfg.n_list = {2};
  EXPECT_THROW(validate(cfg), DomainError);
  cfg.k = 1;
  cfg.n_list = {1};
  EXPECT_NO_THROW(validate(cfg));
}

TEST(Experiment, DeterministicRecords) {
  const ExperimentConfig cfg = small_config();
  const auto a = run_limit_experiment(cfg);
  const auto b = run_limit_experiment(cfg);
  ASSERT_EQ(a.size(), 2u);
  for (std::size_t j = 0; j < a.size(); ++j) {
    EXPECT_EQ(a[j].records, b[j].records);
    EXPECT_EQ(a[j].ecdf, b[j].ecdf);
    EXPECT_EQ(a[j].ks.statistic, b[j].ks.statistic);
  }
  const auto& r = a[1].records[7];
  EXPECT_EQ(r.trial, 7u);
  EXPECT_EQ(r.n, 300u);
  EXPECT_EQ(r.m_value, simulate_max_k_spacing(300, 2, cfg.path, {cfg.seed, 7}));
  EXPECT_DOUBLE_EQ(r.t_normalized, 300 * r.m_value - centering(300, 2).a);
}

TEST(Experiment, PartitionMergeInvariance) {
  const ExperimentConfig cfg = small_config();
  const auto whole = run_trial_range(cfg, 300, 0, cfg.trials);
  std::vector<std::vector<TrialRecord>> parts{run_trial_range(cfg, 300, 40, 64),
                                              run_trial_range(cfg, 300, 0, 13),
                                              run_trial_range(cfg, 300, 13, 40)};
  EXPECT_EQ(merge_trial_records(std::move(parts)), whole);
}

TEST(Experiment, WorkerCountDoesNotChangeResults) {
  ExperimentConfig cfg = small_config();
  cfg.path = SamplingPath::exponential_representation;
  cfg.workers = 1;
  const auto one = run_limit_experiment(cfg);
  for (unsigned w : {2u, 4u, 7u}) {
    cfg.workers = w;
    const auto many = run_limit_experiment(cfg);
    for (std::size_t j = 0; j < one.size(); ++j) EXPECT_EQ(one[j].records, many[j].records);
  }
}

TEST(Experiment, PathsProduceValidSpacings) {
  for (SamplingPath path : {SamplingPath::uniform_sort, SamplingPath::exponential_representation}) {
    for (unsigned k : {1u, 3u}) {
      const double m = simulate_max_k_spacing(1000, k, path, {1, 1});
      EXPECT_GT(m, 0.0);
      EXPECT_LE(m, 1.0);
    }
  }
  EXPECT_EQ(to_string(SamplingPath::uniform_sort), "sort");
  EXPECT_EQ(to_string(SamplingPath::exponential_representation), "exp");
}

TEST(Experiment, SingleSpacingLimitAtTenThousand) {
  ExperimentConfig cfg;
  cfg.k = 1;
  cfg.n_list = {10000};
  cfg.trials = 5000;
  cfg.seed = 7;
  const auto res = run_limit_experiment(cfg);
  ASSERT_EQ(res.size(), 1u);
  EXPECT_EQ(res[0].records.size(), 5000u);
  EXPECT_LE(res[0].ks.statistic, 0.05);
  EXPECT_EQ(res[0].normalization.a, std::log(10000.0));
}

}  // namespace
}  // namespace kspacing
