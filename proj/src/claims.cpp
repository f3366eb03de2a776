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

#include "kspacing/claims.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "kspacing/asymptotics.hpp"
#include "kspacing/error.hpp"
#include "kspacing/watson_lab.hpp"

namespace kspacing {
namespace {

constexpr std::array<std::string_view, 7> kClaimNames = {
    "theorem1", "representation", "tail", "as2", "slutsky", "independence", "watson"};

// Stream ids keep the Monte Carlo claims on disjoint streams under one seed.
constexpr std::uint64_t kWatsonStream = 100;
constexpr std::uint64_t kIndependenceStream = 200;
constexpr std::uint64_t kIndependenceControlStream = 201;
constexpr std::uint64_t kSlutskyStream = 300;

std::string fmt(const char* pattern, auto... args) {
  char buf[256];
  std::snprintf(buf, sizeof buf, pattern, args...);
  return buf;
}

ClaimCheck at_most(std::string label, double value, double limit) {
  return {std::move(label), value, "<=", 0.0, limit, value <= limit};
}

ClaimCheck at_least(std::string label, double value, double limit) {
  return {std::move(label), value, ">=", limit, 0.0, value >= limit};
}

ClaimCheck less_than(std::string label, double value, double limit) {
  return {std::move(label), value, "<", 0.0, limit, value < limit};
}

ClaimCheck equals(std::string label, double value, double expected) {
  return {std::move(label), value, "==", expected, expected, value == expected};
}

ClaimCheck within(std::string label, double value, double lo, double hi) {
  return {std::move(label), value, "in", lo, hi, value >= lo && value <= hi};
}

std::vector<unsigned> ks_or(const ClaimOptions& o, std::vector<unsigned> fallback) {
  return o.k ? std::vector<unsigned>{*o.k} : fallback;
}

std::vector<std::uint64_t> ns_or(const ClaimOptions& o, std::vector<std::uint64_t> fallback) {
  return o.n.empty() ? fallback : o.n;
}

std::vector<double> xs_or(const ClaimOptions& o, std::vector<double> fallback) {
  return o.x.empty() ? fallback : o.x;
}

}  // namespace

bool ClaimReport::passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const ClaimCheck& c) { return c.pass; });
}

std::span<const std::string_view> claim_names() { return kClaimNames; }

std::string format_check(const ClaimCheck& c) {
  std::ostringstream os;
  os << (c.pass ? "PASS " : "FAIL ") << c.label << ": " << fmt("%.6g", c.value) << ' ';
  if (c.comparator == "in") {
    os << "in [" << fmt("%.6g", c.lower) << ", " << fmt("%.6g", c.upper) << ']';
  } else if (c.comparator == ">=" || c.comparator == "==") {
    os << c.comparator << ' ' << fmt("%.17g", c.lower);
  } else {
    os << c.comparator << ' ' << fmt("%.6g", c.upper);
  }
  return os.str();
}

ClaimReport verify_theorem1(const ClaimOptions& o) {
  ClaimReport report{"theorem1", {}, {}};
  for (unsigned k : ks_or(o, {1, 2, 3})) {
    ExperimentConfig cfg;
    cfg.k = k;
    cfg.n_list = ns_or(o, k == 1 ? std::vector<std::uint64_t>{10000}
                                 : std::vector<std::uint64_t>{1000, 10000, 100000});
    cfg.trials = o.trials.value_or(5000);
    cfg.seed = o.seed;
    cfg.workers = o.workers;
    cfg.alpha = o.alpha;
    const auto results = run_limit_experiment(cfg);
    for (const auto& r : results) {
      report.notes.push_back(fmt("k=%u n=%llu trials=%llu a=%.6f KS=%.5f p=%.3g", k,
                                 static_cast<unsigned long long>(r.normalization.n),
                                 static_cast<unsigned long long>(cfg.trials),
                                 r.normalization.a, r.ks.statistic, r.ks.p_value));
    }
    if (k == 1) {
      for (const auto& r : results) {
        report.checks.push_back(at_most(
            fmt("KS vs Gumbel, k=1 n=%llu", static_cast<unsigned long long>(r.normalization.n)),
            r.ks.statistic, 0.05));
      }
      continue;
    }
    for (std::size_t i = 1; i < results.size(); ++i) {
      report.checks.push_back(less_than(
          fmt("KS decreasing, k=%u n=%llu vs n=%llu", k,
              static_cast<unsigned long long>(results[i].normalization.n),
              static_cast<unsigned long long>(results[i - 1].normalization.n)),
          results[i].ks.statistic, results[i - 1].ks.statistic));
    }
    report.checks.push_back(at_most(
        fmt("KS vs Gumbel, k=%u n=%llu", k,
            static_cast<unsigned long long>(results.back().normalization.n)),
        results.back().ks.statistic, 0.15));
  }
  return report;
}

ClaimReport verify_representation(const ClaimOptions& o) {
  ClaimReport report{"representation", {}, {}};
  for (unsigned k : ks_or(o, {1, 3})) {
    for (std::uint64_t n : ns_or(o, {10000})) {
      ExperimentConfig cfg;
      cfg.k = k;
      cfg.n_list = {n};
      cfg.trials = o.trials.value_or(5000);
      cfg.workers = o.workers;
      cfg.alpha = o.alpha;
      cfg.seed = o.seed;
      cfg.path = SamplingPath::uniform_sort;
      const auto sorted = run_limit_experiment(cfg).front();
      cfg.seed = o.seed + 1;
      cfg.path = SamplingPath::exponential_representation;
      const auto expo = run_limit_experiment(cfg).front();
      const KSReport ks = ks_two_sample(sorted.ecdf, expo.ecdf, o.alpha);
      report.notes.push_back(fmt("k=%u n=%llu trials=%llu two-sample KS=%.5f p=%.4g", k,
                                 static_cast<unsigned long long>(n),
                                 static_cast<unsigned long long>(cfg.trials), ks.statistic,
                                 ks.p_value));
      report.checks.push_back(at_least(
          fmt("sort vs exponential path p-value, k=%u n=%llu", k,
              static_cast<unsigned long long>(n)),
          ks.p_value, o.alpha));
    }
  }
  return report;
}

ClaimReport verify_tail(const ClaimOptions& o) {
  ClaimReport report{"tail", {}, {}};
  const double ys[] = {10.0, 30.0, 100.0};
  report.notes.push_back("theta       y    exact/asymptotic");
  for (unsigned theta : ks_or(o, {1, 2, 3})) {
    for (double y : ys) {
      const GammaTail g{theta};
      const double via_tails = gamma_tail_exact(g, y) / gamma_tail_asymptotic(g, y);
      const double closed = gamma_tail_ratio(g, y);
      report.notes.push_back(fmt("%5u %7.0f    %.15f", theta, y, via_tails));
      report.checks.push_back(at_most(fmt("relative gap to closed form, theta=%u y=%g", theta, y),
                                      std::abs(via_tails - closed) / closed, 1e-12));
    }
  }
  return report;
}

ClaimReport verify_as2(const ClaimOptions& o) {
  ClaimReport report{"as2", {}, {}};
  std::vector<std::uint64_t> default_ns;
  for (std::uint64_t n = 1000; n <= 1000000000000ULL; n *= 10) default_ns.push_back(n);
  const auto ns = ns_or(o, default_ns);
  for (unsigned k : ks_or(o, {1, 2, 3, 4})) {
    for (double x : xs_or(o, {-1.0, 0.0, 1.0})) {
      const double xi = std::exp(-x);
      std::string row = fmt("k=%u x=%+g xi=%.6f:", k, x, xi);
      std::vector<double> values;
      std::uint64_t outside = 0;
      for (std::uint64_t n : ns) {
        const double v = as2_check(k, x, n);
        values.push_back(v);
        row += fmt(" %.6f", v);
        if (k == 1) continue;
        const WatsonThreshold w = watson_threshold(n, k, x);
        const double log_n = std::log(static_cast<double>(n));
        const double upper =
            xi * std::pow(w.y_n / log_n, k - 1) * (1.0 + 2.0 * k / w.y_n);
        if (!(v >= xi && v <= upper)) ++outside;
      }
      report.notes.push_back(row);
      if (k == 1) {
        std::uint64_t mismatches = 0;
        for (double v : values) mismatches += v != xi;
        report.checks.push_back(
            equals(fmt("n P(Y_1>y_n) != exp(-x) count, k=1 x=%+g", x), mismatches, 0.0));
        continue;
      }
      std::uint64_t non_monotone = 0;
      for (std::size_t i = 1; i < values.size(); ++i) {
        non_monotone += !(std::abs(values[i] - xi) < std::abs(values[i - 1] - xi));
      }
      report.checks.push_back(
          equals(fmt("non-monotone steps toward xi, k=%u x=%+g", k, x), non_monotone, 0.0));
      report.checks.push_back(
          equals(fmt("values outside envelope, k=%u x=%+g", k, x), outside, 0.0));
    }
  }
  return report;
}

ClaimReport verify_slutsky(const ClaimOptions& o) {
  ClaimReport report{"slutsky", {}, {}};
  for (std::uint64_t n : ns_or(o, {1000000})) {
    const auto trials = o.trials.value_or(1000);
    const auto values =
        slutsky_remainder(n, trials, {o.seed, kSlutskyStream}, o.workers);
    const double dn = static_cast<double>(n);
    const double scale = std::log(dn) / std::sqrt(dn);

    double mean = 0.0;
    for (double v : values) mean += v;
    mean /= static_cast<double>(values.size());
    double ss = 0.0;
    for (double v : values) ss += (v - mean) * (v - mean);
    const double sd = std::sqrt(ss / static_cast<double>(values.size() - 1));

    std::vector<double> magnitudes;
    for (double v : values) magnitudes.push_back(std::abs(v));
    const double p99 = Ecdf::from_sample(std::move(magnitudes)).quantile(0.99);

    report.notes.push_back(fmt("n=%llu trials=%llu log n/sqrt(n)=%.6f sd=%.6f p99|v|=%.6f",
                               static_cast<unsigned long long>(n),
                               static_cast<unsigned long long>(trials), scale, sd, p99));
    report.checks.push_back(within(fmt("sd / (log n/sqrt n), n=%llu",
                                       static_cast<unsigned long long>(n)),
                                   sd / scale, 0.5, 2.0));
    report.checks.push_back(at_most(fmt("99th percentile |value|, n=%llu",
                                        static_cast<unsigned long long>(n)),
                                    p99, 5.0 * scale));
  }
  return report;
}

ClaimReport verify_independence(const ClaimOptions& o) {
  ClaimReport report{"independence", {}, {}};
  for (std::uint64_t n : ns_or(o, {100000})) {
    const auto trials = o.trials.value_or(5000);
    const auto overlap = independence_experiment(
        n, trials, {o.seed, kIndependenceStream}, PairMode::overlapping, o.workers);
    const auto control = independence_experiment(
        n, trials, {o.seed, kIndependenceControlStream}, PairMode::disjoint, o.workers);
    const auto un = static_cast<unsigned long long>(n);
    report.notes.push_back(fmt("overlapping n=%llu: corr=%.4f gap=%.4f KS=%.4f", un,
                               overlap.correlation, overlap.joint_exceedance_gap,
                               overlap.max_shifted_vs_gumbel.statistic));
    report.notes.push_back(fmt("disjoint    n=%llu: corr=%.4f gap=%.4f KS=%.4f", un,
                               control.correlation, control.joint_exceedance_gap,
                               control.max_shifted_vs_gumbel.statistic));
    report.checks.push_back(
        at_most(fmt("|corr(a',b')|, n=%llu", un), std::abs(overlap.correlation), 0.05));
    report.checks.push_back(at_most(fmt("joint-exceedance gap at 0.8 quantile, n=%llu", un),
                                    overlap.joint_exceedance_gap, 0.02));
    report.checks.push_back(at_most(fmt("KS of max(a',b') - log 2 vs Gumbel, n=%llu", un),
                                    overlap.max_shifted_vs_gumbel.statistic, 0.12));
    report.checks.push_back(at_most(fmt("control |corr|, n=%llu", un),
                                    std::abs(control.correlation),
                                    3.0 / std::sqrt(static_cast<double>(trials))));
  }
  return report;
}

ClaimReport verify_watson(const ClaimOptions& o) {
  ClaimReport report{"watson", {}, {}};
  const auto xs = xs_or(o, {-1.0, 0.0, 1.0});
  for (unsigned k : ks_or(o, {1, 2, 3})) {
    for (std::uint64_t n : ns_or(o, {100000})) {
      const auto estimates = watson_limit_estimates(
          k, xs, n, o.trials.value_or(3000), {o.seed, kWatsonStream + k}, o.workers);
      for (const auto& e : estimates) {
        report.notes.push_back(
            fmt("k=%u x=%+g n=%llu: empirical=%.4f finite-n=%.4f exp(-xi)=%.4f se=%.4f", k,
                e.x, static_cast<unsigned long long>(n), e.empirical, e.finite_n,
                e.asymptotic, e.standard_error));
        report.checks.push_back(at_most(
            fmt("|empirical - finite-n|, k=%u x=%+g n=%llu", k, e.x,
                static_cast<unsigned long long>(n)),
            std::abs(e.empirical - e.finite_n), std::max(0.03, 3.0 * e.standard_error)));
      }
    }
  }
  return report;
}

ClaimReport verify_claim(std::string_view claim, const ClaimOptions& options) {
  if (claim == "theorem1") return verify_theorem1(options);
  if (claim == "representation") return verify_representation(options);
  if (claim == "tail") return verify_tail(options);
  if (claim == "as2") return verify_as2(options);
  if (claim == "slutsky") return verify_slutsky(options);
  if (claim == "independence") return verify_independence(options);
  if (claim == "watson") return verify_watson(options);
  throw DomainError("unknown claim '" + std::string(claim) + "'");
}

}  // namespace kspacing
