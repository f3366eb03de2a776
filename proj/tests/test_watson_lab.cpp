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
#include <numeric>
#include <vector>

#include "kspacing/asymptotics.hpp"
#include "kspacing/error.hpp"
#include "kspacing/sampling.hpp"
#include "kspacing/spacing.hpp"
#include "kspacing/watson_lab.hpp"
#include "oracles.hpp"

namespace kspacing {
namespace {

double mean(const std::vector<double>& v) {
  return std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
}

double stddev(const std::vector<double>& v) {
  const double mu = mean(v);
  double ss = 0.0;
  for (double x : v) ss += (x - mu) * (x - mu);
  return std::sqrt(ss / static_cast<double>(v.size() - 1));
}

TEST(MovingSumProcess, WindowFunction) {
  const MDepProcessSpec spec = moving_sum_process(3);
  EXPECT_EQ(spec.m, 2u);
  const std::vector<double> w{1.0, 2.0, 4.0};
  EXPECT_EQ(spec.window_fn(w), 7.0);
}

TEST(As1, IndependentSequenceHasNoLags) {
  const As1Estimate e = as1_estimate(moving_sum_process(1), 1.0, 10000, {1, 1});
  ASSERT_TRUE(e.max_conditional.has_value());
  EXPECT_EQ(*e.max_conditional, 0.0);
  EXPECT_TRUE(e.per_lag.empty());
  EXPECT_GT(e.exceedances, 3000u);
}

TEST(As1, NoExceedancesGivesEmptyEstimate) {
  const As1Estimate e = as1_estimate(moving_sum_process(2), 200.0, 10000, {1, 1});
  EXPECT_FALSE(e.max_conditional.has_value());
  EXPECT_EQ(e.exceedances, 0u);
  EXPECT_TRUE(e.low_confidence);
  ASSERT_EQ(e.per_lag.size(), 1u);
  EXPECT_TRUE(std::isnan(e.per_lag[0]));
}

TEST(As1, RejectsShortRuns) {
  EXPECT_THROW(as1_estimate(moving_sum_process(2), 1.0, 9999, {1, 1}), DomainError);
}

TEST(As1Oracle, QuadratureMatchesClosedForm) {
  for (double y : {0.5, 2.0, 8.0, 16.44}) {
    const double closed = (2.0 - std::exp(-y)) / (1.0 + y);
    EXPECT_NEAR(testing::moving_sum_k2_joint_exceedance_ratio(y), closed, 1e-9) << y;
  }
  // At the centering level for n = 10^6 the joint ratio is still far from 0.
  const double y = centering(1000000, 2).a;
  EXPECT_NEAR(testing::moving_sum_k2_joint_exceedance_ratio(y), 0.11473, 1e-4);
}

TEST(As1, OrderTwoMatchesOracle) {
  for (double y : {2.0, 8.0}) {
    const As1Estimate e = as1_estimate(moving_sum_process(2), y, 1000000, {3, 2});
    ASSERT_TRUE(e.max_conditional.has_value());
    EXPECT_FALSE(e.low_confidence);
    const double oracle = testing::moving_sum_k2_joint_exceedance_ratio(y);
    const double n = static_cast<double>(e.exceedances);
    // Neighbouring exceedances are positively correlated; allow 4 binomial SE.
    const double se = std::sqrt(oracle * (1.0 - oracle) / n);
    EXPECT_NEAR(*e.max_conditional, oracle, 4.0 * se) << "y=" << y;
  }
}

TEST(As1, OrderThreeWorstLagIsFirst) {
  const As1Estimate e = as1_estimate(moving_sum_process(3), 6.0, 1000000, {3, 3});
  ASSERT_EQ(e.per_lag.size(), 2u);
  EXPECT_GT(e.per_lag[0], e.per_lag[1]);
  EXPECT_EQ(*e.max_conditional, e.per_lag[0]);
}

TEST(MovingSumMaxima, DeterministicAcrossWorkers) {
  const auto a = moving_sum_maxima(2, 500, 40, {9, 9}, 1);
  const auto b = moving_sum_maxima(2, 500, 40, {9, 9}, 3);
  EXPECT_EQ(a, b);
  // Trial t reads substream t.
  const InnovationDraw d = sample_exponentials(501, StreamKey{9, 9}.substream(5));
  const auto y = moving_sums(d, 2).y;
  EXPECT_DOUBLE_EQ(a[5], *std::max_element(y.begin(), y.end()));
}

TEST(WatsonLimit, ExponentialCaseMatchesGumbel) {
  const WatsonLimitEstimate e = watson_limit_estimate(1, 0.0, 10000, 5000, {21, 1});
  EXPECT_DOUBLE_EQ(e.asymptotic, std::exp(-1.0));
  EXPECT_NEAR(e.empirical, std::exp(-1.0), 0.02);
  EXPECT_NEAR(e.finite_n, std::exp(-1.0), 1e-4);
  EXPECT_EQ(e.trials, 5000u);
  EXPECT_GT(e.standard_error, 0.0);
}

TEST(WatsonLimit, OrderTwoSitsBetweenSurrogateAndLimit) {
  // Clustered exceedances make the finite-n maximum smaller than the
  // independent-block surrogate predicts.
  const WatsonLimitEstimate e = watson_limit_estimate(2, 0.0, 10000, 3000, {21, 2});
  EXPECT_DOUBLE_EQ(e.y_n, watson_threshold(10000, 2, 0.0).y_n);
  EXPECT_GT(e.empirical, e.finite_n);
  EXPECT_LT(e.empirical, e.asymptotic);
}

TEST(WatsonLimit, SharedTrialsAreMonotoneInShift) {
  const std::vector<double> xs{-1.0, 0.0, 1.0};
  const auto est = watson_limit_estimates(2, xs, 2000, 500, {4, 4});
  ASSERT_EQ(est.size(), 3u);
  EXPECT_LE(est[0].empirical, est[1].empirical);
  EXPECT_LE(est[1].empirical, est[2].empirical);
  EXPECT_EQ(est[1].empirical, watson_limit_estimate(2, 0.0, 2000, 500, {4, 4}).empirical);
}

TEST(WatsonLimit, DomainErrors) {
  EXPECT_THROW(watson_limit_estimate(2, 0.0, 1000, 0, {1, 1}), DomainError);
  EXPECT_THROW(watson_limit_estimate(2, 0.0, 1000, 99, {1, 1}), DomainError);
  EXPECT_THROW(watson_limit_estimate(2, 0.0, 2, 100, {1, 1}), DomainError);
}

TEST(PairMaxima, OverlappingMatchesDirectComputation) {
  const StreamKey key{8, 1};
  const PairMaximaResult r = pair_maxima(100, key, PairMode::overlapping);
  const InnovationDraw d = sample_exponentials(201, key);
  double a = 0.0;
  double b = 0.0;
  for (std::size_t i = 0; i < 100; ++i) {
    a = std::max(a, d.x()[2 * i] + d.x()[2 * i + 1]);
    b = std::max(b, d.x()[2 * i + 1] + d.x()[2 * i + 2]);
  }
  EXPECT_DOUBLE_EQ(r.a_max, a);
  EXPECT_DOUBLE_EQ(r.b_max, b);
  const double shift = std::log(100.0) + std::log(std::log(100.0));
  EXPECT_DOUBLE_EQ(r.a_normalized, a - shift);
  EXPECT_DOUBLE_EQ(r.b_normalized, b - shift);
}

TEST(Independence, DisjointControlIsUncorrelated) {
  const IndependenceReport r = independence_experiment(1000, 2000, {5, 201}, PairMode::disjoint);
  EXPECT_EQ(r.trials.size(), 2000u);
  EXPECT_LE(std::abs(r.correlation), 3.0 / std::sqrt(2000.0));
  EXPECT_DOUBLE_EQ(r.threshold, gumbel_quantile(0.8));
}

TEST(Independence, OverlapCorrelationShrinksWithN) {
  const IndependenceReport small = independence_experiment(1000, 2000, {5, 200});
  const IndependenceReport large = independence_experiment(100000, 2000, {5, 200});
  EXPECT_GT(small.correlation, 0.0);
  EXPECT_LT(large.correlation, small.correlation);
}

TEST(Independence, DomainErrors) {
  EXPECT_THROW(independence_experiment(15, 500, {1, 1}), DomainError);
  EXPECT_THROW(independence_experiment(100, 499, {1, 1}), DomainError);
}

TEST(PairDecomposition, FullRangeEqualsMaximalTwoSpacing) {
  for (std::uint64_t n : {2, 3, 10, 11, 1001}) {
    const InnovationDraw d = sample_exponentials(n + 1, {6, n});
    const PairDecomposition p = m2_pair_decomposition(d);
    const double direct = max_k_spacing(spacings_from_exponentials(d), 2).m_value;
    EXPECT_NEAR(p.full_range, direct, 1e-14) << "n=" << n;
    EXPECT_LE(p.floor_halving, p.full_range);
  }
  // The last window is the unique maximum, so only the full range sees it.
  const PairDecomposition p = m2_pair_decomposition(InnovationDraw::from_values({1.0, 1.0, 5.0}));
  EXPECT_DOUBLE_EQ(p.full_range, 6.0 / 7.0);
  EXPECT_DOUBLE_EQ(p.floor_halving, 2.0 / 7.0);
  EXPECT_THROW(m2_pair_decomposition(InnovationDraw::from_values({1.0, 1.0})), DomainError);
}

TEST(Slutsky, ValueExamples) {
  EXPECT_EQ(slutsky_value(1000, 1000.0), 0.0);
  EXPECT_DOUBLE_EQ(slutsky_value(1000, 500.0), std::log(1000.0));
}

TEST(Slutsky, SpreadMatchesDeltaMethod) {
  const auto v = slutsky_remainder(1000000, 1000, {11, 300});
  ASSERT_EQ(v.size(), 1000u);
  const double scale = std::log(1e6) / std::sqrt(1e6);
  EXPECT_NEAR(stddev(v) / scale, 1.0, 0.15);
  EXPECT_LT(std::abs(mean(v)), 5.0 * scale / std::sqrt(1000.0) + 2.0 * scale / 1e3);
  EXPECT_EQ(slutsky_remainder(10000, 100, {11, 300}, 1),
            slutsky_remainder(10000, 100, {11, 300}, 3));
}

TEST(Slutsky, ShrinksWithN) {
  auto mean_abs = [](const std::vector<double>& v) {
    double s = 0.0;
    for (double x : v) s += std::abs(x);
    return s / static_cast<double>(v.size());
  };
  EXPECT_LT(mean_abs(slutsky_remainder(1000000, 300, {12, 300})),
            mean_abs(slutsky_remainder(100, 300, {12, 300})));
  EXPECT_THROW(slutsky_remainder(2, 10, {1, 1}), DomainError);
}

// The first-order p-value against Monte Carlo tail frequency at moderate n.
TEST(PValue, AgreesWithSimulatedTail) {
  const std::uint64_t trials = 100000;
  ExperimentConfig cfg;
  cfg.k = 2;
  cfg.n_list = {1000};
  cfg.trials = trials;
  cfg.seed = 77;
  cfg.path = SamplingPath::exponential_representation;
  const auto rec = run_limit_experiment(cfg)[0].records;
  const double m = 0.02;
  double hits = 0.0;
  for (const auto& r : rec) hits += r.m_value >= m;
  const double freq = hits / static_cast<double>(trials);
  const double p = pvalue_max_k_spacing(1000, 2, m);
  const double se = std::sqrt(p * (1.0 - p) / static_cast<double>(trials));
  EXPECT_NEAR(freq, p, 3.0 * se);
}

}  // namespace
}  // namespace kspacing
