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

#include "kspacing/watson_lab.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "kspacing/asymptotics.hpp"
#include "kspacing/error.hpp"
#include "kspacing/parallel.hpp"

namespace kspacing {
namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

double pearson(std::span<const double> a, std::span<const double> b) {
  const double n = static_cast<double>(a.size());
  const double ma = std::accumulate(a.begin(), a.end(), 0.0) / n;
  const double mb = std::accumulate(b.begin(), b.end(), 0.0) / n;
  double sab = 0.0;
  double saa = 0.0;
  double sbb = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    sab += (a[i] - ma) * (b[i] - mb);
    saa += (a[i] - ma) * (a[i] - ma);
    sbb += (b[i] - mb) * (b[i] - mb);
  }
  return sab / std::sqrt(saa * sbb);
}

double pair_centering(std::uint64_t n) {
  const double log_n = std::log(static_cast<double>(n));
  return log_n + std::log(log_n);
}

}  // namespace

MDepProcessSpec moving_sum_process(unsigned k) {
  if (k < 1) throw DomainError("moving sum order k must be at least 1");
  return {k - 1, [](std::span<const double> w) {
            return std::accumulate(w.begin(), w.end(), 0.0);
          }};
}

As1Estimate as1_estimate(const MDepProcessSpec& spec, double y,
                         std::uint64_t run_length, StreamKey key) {
  if (run_length < 10000) throw DomainError("as1_estimate needs run_length >= 10^4");
  if (!spec.window_fn) throw DomainError("process has no window function");

  const std::size_t width = spec.m + 1;
  // Mirrored ring: the newest `width` innovations are always contiguous at
  // buffer[slot+1 .. slot+width].
  std::vector<double> buffer(2 * width, 0.0);
  // exceeded[i % width] holds whether Y_i > y for the last `width` indices.
  std::vector<char> exceeded(width, 0);
  std::vector<std::uint64_t> joint(spec.m + 1, 0);
  std::uint64_t exceedances = 0;

  ExponentialStream stream(key);
  for (std::size_t j = 0; j + 1 < width; ++j) {
    const double x = stream.next();
    buffer[j] = x;
    buffer[j + width] = x;
  }
  for (std::uint64_t i = 0; i < run_length; ++i) {
    const std::size_t slot = (i + width - 1) % width;
    const double x = stream.next();
    buffer[slot] = x;
    buffer[slot + width] = x;
    const double value =
        spec.window_fn(std::span<const double>(buffer.data() + slot + 1, width));
    const bool over = value > y;
    exceeded[i % width] = over;
    if (!over) continue;
    ++exceedances;
    for (unsigned lag = 1; lag <= spec.m && lag <= i; ++lag) {
      if (exceeded[(i - lag) % width]) ++joint[lag];
    }
  }

  As1Estimate est;
  est.exceedances = exceedances;
  est.low_confidence = exceedances < As1Estimate::kMinExceedances;
  if (spec.m == 0) {
    est.max_conditional = 0.0;
    return est;
  }
  // Exceedances at the last `lag` indices have no partner at distance lag.
  std::uint64_t tail = 0;
  est.per_lag.assign(spec.m, kNaN);
  for (unsigned lag = 1; lag <= spec.m; ++lag) {
    tail += exceeded[(run_length - lag) % width];
    const std::uint64_t denom = exceedances - tail;
    if (denom == 0) continue;
    const double ratio = static_cast<double>(joint[lag]) / static_cast<double>(denom);
    est.per_lag[lag - 1] = ratio;
    est.max_conditional = std::max(est.max_conditional.value_or(0.0), ratio);
  }
  return est;
}

std::vector<double> moving_sum_maxima(unsigned k, std::uint64_t n,
                                      std::uint64_t trials, StreamKey key,
                                      unsigned workers) {
  if (k < 1 || n < 1) throw DomainError("moving sum maxima need k >= 1 and n >= 1");
  std::vector<double> maxima(trials);
  for_each_index(trials, workers, [&](std::size_t t) {
    ExponentialStream stream(key.substream(t));
    SlidingWindowSum window(k);
    for (unsigned j = 0; j + 1 < k; ++j) window.push(stream.next());
    double top = 0.0;
    for (std::uint64_t i = 0; i < n; ++i) {
      window.push(stream.next());
      top = std::max(top, window.value());
    }
    maxima[t] = top;
  });
  return maxima;
}

std::vector<WatsonLimitEstimate> watson_limit_estimates(
    unsigned k, std::span<const double> xs, std::uint64_t n,
    std::uint64_t trials, StreamKey key, unsigned workers) {
  if (trials < 100) throw DomainError("watson_limit_estimate needs trials >= 100");
  if (n < 3) throw DomainError("watson_limit_estimate needs n >= 3");
  std::vector<WatsonThreshold> thresholds;
  for (double x : xs) thresholds.push_back(watson_threshold(n, k, x));

  const std::vector<double> maxima = moving_sum_maxima(k, n, trials, key, workers);
  std::vector<WatsonLimitEstimate> out;
  for (const WatsonThreshold& w : thresholds) {
    const auto below = std::count_if(maxima.begin(), maxima.end(),
                                     [&](double m) { return m <= w.y_n; });
    WatsonLimitEstimate e;
    e.x = w.x;
    e.y_n = w.y_n;
    e.trials = trials;
    e.empirical = static_cast<double>(below) / static_cast<double>(trials);
    e.asymptotic = std::exp(-w.xi);
    e.finite_n = std::exp(-static_cast<double>(n) * gamma_tail_exact({k}, w.y_n));
    e.standard_error =
        std::sqrt(e.finite_n * (1.0 - e.finite_n) / static_cast<double>(trials));
    out.push_back(e);
  }
  return out;
}

WatsonLimitEstimate watson_limit_estimate(unsigned k, double x, std::uint64_t n,
                                          std::uint64_t trials, StreamKey key,
                                          unsigned workers) {
  const double xs[] = {x};
  return watson_limit_estimates(k, xs, n, trials, key, workers).front();
}

PairMaximaResult pair_maxima(std::uint64_t n, StreamKey key, PairMode mode) {
  if (n < 3) throw DomainError("pair maxima need n >= 3");
  ExponentialStream stream(key);
  double a = 0.0;
  double b = 0.0;
  if (mode == PairMode::overlapping) {
    double odd = stream.next();  // X_{2i-1}
    for (std::uint64_t i = 0; i < n; ++i) {
      const double even = stream.next();
      const double next_odd = stream.next();
      a = std::max(a, odd + even);
      b = std::max(b, even + next_odd);
      odd = next_odd;
    }
  } else {
    // A reads exactly what the overlapping mode reads; B gets its own stream.
    ExponentialStream other(key.substream(1));
    for (std::uint64_t i = 0; i < n; ++i) {
      const double odd = stream.next();
      const double even = stream.next();
      a = std::max(a, odd + even);
    }
    double even = other.next();
    for (std::uint64_t i = 0; i < n; ++i) {
      const double odd = other.next();
      b = std::max(b, even + odd);
      even = other.next();
    }
  }
  const double c = pair_centering(n);
  return {a, b, a - c, b - c};
}

IndependenceReport independence_experiment(std::uint64_t n, std::uint64_t trials,
                                           StreamKey key, PairMode mode,
                                           unsigned workers) {
  if (n < 16) throw DomainError("independence_experiment needs n >= 16");
  if (trials < 500) throw DomainError("independence_experiment needs trials >= 500");

  IndependenceReport r;
  r.n = n;
  r.mode = mode;
  r.trials.resize(trials);
  for_each_index(trials, workers, [&](std::size_t t) {
    r.trials[t] = pair_maxima(n, key.substream(t), mode);
  });

  std::vector<double> a(trials);
  std::vector<double> b(trials);
  std::vector<double> shifted(trials);
  for (std::size_t t = 0; t < trials; ++t) {
    a[t] = r.trials[t].a_normalized;
    b[t] = r.trials[t].b_normalized;
    shifted[t] = std::max(a[t], b[t]) - std::log(2.0);
  }
  r.correlation = pearson(a, b);

  r.threshold = gumbel_quantile(0.8);
  std::uint64_t over_a = 0;
  std::uint64_t over_b = 0;
  std::uint64_t over_both = 0;
  for (std::size_t t = 0; t < trials; ++t) {
    const bool ea = a[t] > r.threshold;
    const bool eb = b[t] > r.threshold;
    over_a += ea;
    over_b += eb;
    over_both += ea && eb;
  }
  const double count = static_cast<double>(trials);
  r.joint_exceedance_gap =
      std::abs(over_both / count - (over_a / count) * (over_b / count));
  r.max_shifted_vs_gumbel = ks_one_sample(Ecdf::from_sample(std::move(shifted)), gumbel_cdf);
  return r;
}

PairDecomposition m2_pair_decomposition(const InnovationDraw& d) {
  const auto x = d.x();
  if (x.size() < 3) throw DomainError("pair decomposition needs n >= 2");
  const std::size_t n = x.size() - 1;
  // 1-based X_j is x[j-1].
  auto a_max = [&](std::size_t count) {
    double top = -INFINITY;
    for (std::size_t i = 1; i <= count; ++i) top = std::max(top, x[2 * i - 2] + x[2 * i - 1]);
    return top;
  };
  auto b_max = [&](std::size_t count) {
    double top = -INFINITY;
    for (std::size_t i = 1; i <= count; ++i) top = std::max(top, x[2 * i - 1] + x[2 * i]);
    return top;
  };
  const double total = d.total();
  return {std::max(a_max((n + 1) / 2), b_max(n / 2)) / total,
          std::max(a_max(n / 2), b_max((n - 1) / 2)) / total};
}

double slutsky_value(std::uint64_t n, double total) {
  const double dn = static_cast<double>(n);
  return std::log(dn) * (dn / total - 1.0);
}

std::vector<double> slutsky_remainder(std::uint64_t n, std::uint64_t trials,
                                      StreamKey key, unsigned workers) {
  if (n < 3) throw DomainError("slutsky_remainder needs n >= 3");
  std::vector<double> values(trials);
  for_each_index(trials, workers, [&](std::size_t t) {
    ExponentialStream stream(key.substream(t));
    CompensatedSum total;
    for (std::uint64_t i = 0; i <= n; ++i) total.add(stream.next());
    values[t] = slutsky_value(n, total.value());
  });
  return values;
}

}  // namespace kspacing
