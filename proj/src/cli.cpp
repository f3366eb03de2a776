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

#include "kspacing/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <charconv>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

#include "kspacing/asymptotics.hpp"
#include "kspacing/claims.hpp"
#include "kspacing/error.hpp"

namespace kspacing::cli {
namespace {

constexpr unsigned kMaxK = 64;
constexpr std::uint64_t kMaxN = 100000000;

std::string shortest(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

// Result-affecting flags only, so outputs do not depend on --workers, --out
// or --format.
std::string simulate_command(const ExperimentConfig& cfg) {
  std::ostringstream os;
  os << "simulate --k " << cfg.k;
  for (std::uint64_t n : cfg.n_list) os << " --n " << n;
  os << " --trials " << cfg.trials << " --seed " << cfg.seed << " --path "
     << to_string(cfg.path) << " --alpha " << cfg.alpha;
  return os.str();
}

unsigned resolve_workers(const CLI::Option* flag, unsigned from_flag) {
  if (flag->count() > 0) return from_flag;
  const char* env = std::getenv("KSPACING_WORKERS");
  if (env == nullptr || *env == '\0') return 0;
  unsigned value = 0;
  const char* end = env + std::char_traits<char>::length(env);
  const auto [ptr, ec] = std::from_chars(env, end, value);
  if (ec != std::errc() || ptr != end) {
    throw CLI::ValidationError("KSPACING_WORKERS", "must be a non-negative integer");
  }
  return value;
}

void write_file(const std::filesystem::path& path, const std::string& body) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open " + path.string() + " for writing");
  f << body;
  if (!f) throw std::runtime_error("failed writing " + path.string());
}

CLI::Validator open_unit_interval() {
  return CLI::Validator(
      [](const std::string& s) -> std::string {
        const double v = std::stod(s);
        return v > 0.0 && v < 1.0 ? std::string() : "value must lie in (0,1)";
      },
      "(0,1)");
}

}  // namespace

std::string trial_csv(const std::string& command,
                      const std::vector<LimitExperimentResult>& results) {
  std::ostringstream os;
  os << kTrialCsvHeader << '\n';
  for (const auto& r : results) {
    for (const TrialRecord& rec : r.records) {
      os << kSchemaVersion << ',' << command << ',' << rec.k << ',' << rec.n << ','
         << rec.trial << ',' << rec.seed << ',' << shortest(rec.m_value) << ','
         << shortest(rec.t_normalized) << '\n';
    }
  }
  return os.str();
}

std::string summary_json(const std::string& command, const ExperimentConfig& cfg,
                         const LimitExperimentResult& result) {
  nlohmann::ordered_json doc;
  doc["schema_version"] = kSchemaVersion;
  doc["command"] = command;
  doc["k"] = cfg.k;
  doc["n"] = result.normalization.n;
  doc["trials"] = result.records.size();
  doc["seed"] = cfg.seed;
  doc["path"] = to_string(cfg.path);
  doc["centering_a"] = result.normalization.a;
  doc["ks_statistic"] = result.ks.statistic;
  doc["ks_pvalue"] = result.ks.p_value;
  auto quantiles = nlohmann::ordered_json::array();
  for (int i = 1; i <= 99; ++i) quantiles.push_back(result.ecdf.quantile(i / 100.0));
  doc["ecdf_quantiles"] = std::move(quantiles);
  return doc.dump(2) + "\n";
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Maximal k-spacing statistics: simulation, p-values and verification"};
  app.name("kspacing");
  app.require_subcommand(1);

  // simulate
  ExperimentConfig sim;
  sim.trials = 1000;
  sim.seed = 1;
  std::string sim_path = "sort";
  std::string sim_format = "both";
  std::string sim_out = ".";
  unsigned sim_workers = 0;
  auto* simulate = app.add_subcommand("simulate", "Monte Carlo distribution of n M_n^(k) - a(n,k)");
  simulate->add_option("--k", sim.k, "spacing order")->check(CLI::Range(1u, kMaxK));
  simulate->add_option("--n", sim.n_list, "sample size (repeatable)")
      ->required()
      ->check(CLI::Range(std::uint64_t{1}, kMaxN));
  simulate->add_option("--trials", sim.trials, "trials per n")
      ->check(CLI::Range(std::uint64_t{1}, std::uint64_t{100000000}));
  simulate->add_option("--seed", sim.seed, "base seed");
  simulate->add_option("--path", sim_path, "sampling path")->check(CLI::IsMember({"sort", "exp"}));
  simulate->add_option("--format", sim_format, "output files")
      ->check(CLI::IsMember({"csv", "json", "both"}));
  simulate->add_option("--out", sim_out, "output directory");
  simulate->add_option("--alpha", sim.alpha, "KS significance")->check(open_unit_interval());
  auto* sim_workers_opt =
      simulate->add_option("--workers", sim_workers, "worker threads (default: cores)");

  // pvalue
  std::uint64_t pv_n = 0;
  unsigned pv_k = 1;
  double pv_m = 0.0;
  auto* pvalue = app.add_subcommand("pvalue", "asymptotic p-value of an observed maximal k-spacing");
  pvalue->add_option("--n", pv_n, "sample size")->required();
  pvalue->add_option("--k", pv_k, "spacing order")->check(CLI::Range(1u, kMaxK));
  pvalue->add_option("--m", pv_m, "observed maximal k-spacing")->required();

  // verify
  std::vector<std::string> claims;
  ClaimOptions opts;
  unsigned vk = 0;
  std::uint64_t vtrials = 0;
  unsigned v_workers = 0;
  auto* verify = app.add_subcommand("verify", "run named verification checks");
  std::vector<std::string> names(claim_names().begin(), claim_names().end());
  verify->add_option("--claim", claims, "claim to check (repeatable)")
      ->required()
      ->check(CLI::IsMember(names));
  auto* vk_opt = verify->add_option("--k", vk, "restrict to one order k")->check(CLI::Range(1u, kMaxK));
  verify->add_option("--n", opts.n, "sample sizes (repeatable)")
      ->check(CLI::Range(std::uint64_t{1}, kMaxN));
  auto* vtrials_opt = verify->add_option("--trials", vtrials, "trials")
                          ->check(CLI::Range(std::uint64_t{1}, std::uint64_t{100000000}));
  verify->add_option("--seed", opts.seed, "base seed");
  verify->add_option("--x", opts.x, "threshold shift x (repeatable)");
  verify->add_option("--alpha", opts.alpha, "significance for KS verdicts")
      ->check(open_unit_interval());
  auto* v_workers_opt = verify->add_option("--workers", v_workers, "worker threads");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n\n" << app.help();
    return kUsage;
  }

  try {
    if (simulate->parsed()) {
      sim.path = sim_path == "exp" ? SamplingPath::exponential_representation
                                   : SamplingPath::uniform_sort;
      sim.workers = resolve_workers(sim_workers_opt, sim_workers);
      const std::string command = simulate_command(sim);
      const auto results = run_limit_experiment(sim);
      const std::filesystem::path dir(sim_out);
      std::filesystem::create_directories(dir);
      if (sim_format != "json") write_file(dir / "trials.csv", trial_csv(command, results));
      for (const auto& r : results) {
        if (sim_format != "csv") {
          write_file(dir / ("summary_n" + std::to_string(r.normalization.n) + ".json"),
                     summary_json(command, sim, r));
        }
        out << "k=" << sim.k << " n=" << r.normalization.n << " trials=" << r.records.size()
            << " a=" << std::setprecision(9) << r.normalization.a
            << " ks=" << r.ks.statistic << " ks_pvalue=" << r.ks.p_value << '\n';
      }
      return kOk;
    }
    if (pvalue->parsed()) {
      const double p = pvalue_max_k_spacing(pv_n, pv_k, pv_m);
      const double t = static_cast<double>(pv_n) * pv_m - centering(pv_n, pv_k).a;
      out << std::setprecision(9) << "n = " << pv_n << "\nk = " << pv_k << "\nm = " << pv_m
          << "\nt = " << t << "\np_value = " << p
          << "\nnote: asymptotic, first-order Gumbel approximation; for k >= 2 the "
             "approach is log log-slow, calibrate with 'simulate' when it matters\n";
      return kOk;
    }
    // verify
    if (vk_opt->count() > 0) opts.k = vk;
    if (vtrials_opt->count() > 0) opts.trials = vtrials;
    opts.workers = resolve_workers(v_workers_opt, v_workers);
    bool all_pass = true;
    for (const std::string& claim : claims) {
      const ClaimReport report = verify_claim(claim, opts);
      out << "== " << report.claim << '\n';
      for (const auto& note : report.notes) out << "   " << note << '\n';
      for (const auto& check : report.checks) out << format_check(check) << '\n';
      out << (report.passed() ? "claim PASSED" : "claim FAILED") << '\n';
      all_pass = all_pass && report.passed();
    }
    return all_pass ? kOk : kFailure;
  } catch (const CLI::ValidationError& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const DomainError& e) {
    err << "error: " << e.what() << '\n';
    return kFailure;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kFailure;
  }
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  std::vector<const char*> argv{"kspacing"};
  for (const auto& a : args) argv.push_back(a.c_str());
  return run(static_cast<int>(argv.size()), argv.data(), out, err);
}

}  // namespace kspacing::cli
