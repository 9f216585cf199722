// Copyright 2026 The mnlrank Authors
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

#include "mnlrank/experiment.h"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <sstream>
#include <thread>

#include "json.hpp"
#include "mnlrank/borda.h"
#include "mnlrank/confidence.h"
#include "mnlrank/error.h"
#include "mnlrank/mm_fit.h"
#include "mnlrank/tournament_machine.h"

namespace mnlrank {
namespace {

using nlohmann::json;

[[noreturn]] void BadConfig(const std::string& what) {
  throw Error(ErrorCode::kInvalidConfig, what);
}

std::string FormatDouble(double x) {
  char buf[64];
  const auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), x);
  return std::string(buf, end);
}

double ParseDouble(std::string_view text, std::string_view what) {
  double value = 0.0;
  const auto [ptr, ec] =
      std::from_chars(text.data(), text.data() + text.size(), value);
  if (text.empty() || ec != std::errc() || ptr != text.data() + text.size()) {
    BadConfig("bad value '" + std::string(text) + "' for " + std::string(what));
  }
  return value;
}

int64_t ParseInteger(std::string_view text, std::string_view what) {
  int64_t value = 0;
  const auto [ptr, ec] =
      std::from_chars(text.data(), text.data() + text.size(), value);
  if (text.empty() || ec != std::errc() || ptr != text.data() + text.size()) {
    BadConfig("bad value '" + std::string(text) + "' for " + std::string(what));
  }
  return value;
}

void ParseOracle(ExperimentConfig& config, std::string_view id) {
  constexpr std::string_view kEmpirical = "empirical:";
  if (id == "synthetic") {
    config.oracle = OracleKind::kSynthetic;
  } else if (id == "bandit-reduction") {
    config.oracle = OracleKind::kBanditReduction;
  } else if (id.starts_with(kEmpirical) && id.size() > kEmpirical.size()) {
    config.oracle = OracleKind::kEmpirical;
    config.empirical_path = std::string(id.substr(kEmpirical.size()));
  } else {
    BadConfig("unknown oracle '" + std::string(id) + "'");
  }
}

std::string OracleId(const ExperimentConfig& config) {
  switch (config.oracle) {
    case OracleKind::kSynthetic: return "synthetic";
    case OracleKind::kBanditReduction: return "bandit-reduction";
    case OracleKind::kEmpirical: return "empirical:" + config.empirical_path;
  }
  return "";
}

// The algorithm-level draw (instance scores are drawn separately).
std::unique_ptr<QueryMachine> BuildMachine(const ExperimentConfig& config,
                                           uint64_t seed) {
  MachineSpec spec;
  switch (config.algorithm) {
    case BenchAlgorithm::kPdtr: spec.algorithm = AlgorithmKind::kPdtr; break;
    case BenchAlgorithm::kPdks: spec.algorithm = AlgorithmKind::kPdks; break;
    case BenchAlgorithm::kTnks: spec.algorithm = AlgorithmKind::kTnks; break;
    default: return nullptr;
  }
  spec.n = config.n;
  spec.k = config.k;
  spec.l = config.l;
  spec.eps = config.eps;
  spec.delta = config.delta;
  spec.alpha = config.ResolvedAlpha();
  spec.seed = seed;
  return MakeMachine(spec);
}

}  // namespace

std::string_view BenchAlgorithmName(BenchAlgorithm algorithm) {
  switch (algorithm) {
    case BenchAlgorithm::kPdtr: return "pdtr";
    case BenchAlgorithm::kPdks: return "pdks";
    case BenchAlgorithm::kTnks: return "tnks";
    case BenchAlgorithm::kBordaTopK: return "borda-topk";
    case BenchAlgorithm::kBordaRanking: return "borda-rank";
  }
  return "unknown";
}

BenchAlgorithm ParseBenchAlgorithm(std::string_view name) {
  for (auto a : {BenchAlgorithm::kPdtr, BenchAlgorithm::kPdks,
                 BenchAlgorithm::kTnks, BenchAlgorithm::kBordaTopK,
                 BenchAlgorithm::kBordaRanking}) {
    if (BenchAlgorithmName(a) == name) return a;
  }
  BadConfig("unknown algorithm '" + std::string(name) + "'");
}

bool IsTopK(BenchAlgorithm algorithm) {
  return algorithm == BenchAlgorithm::kPdks ||
         algorithm == BenchAlgorithm::kTnks ||
         algorithm == BenchAlgorithm::kBordaTopK;
}

double ExperimentConfig::ResolvedAlpha() const {
  return alpha ? *alpha : DefaultAlpha(l, rbc_constant);
}

void ExperimentConfig::Validate() const {
  if (n < 2) BadConfig("n must be at least 2");
  if (l < 2 || l > n) BadConfig("l must satisfy 2 <= l <= n");
  if (IsTopK(algorithm) && (k < 1 || k > n / 2)) {
    BadConfig("k must satisfy 1 <= k <= n/2");
  }
  if (!(eps > 0.0 && eps < 1.0)) BadConfig("eps must lie in (0, 1)");
  if (!(delta > 0.0 && delta < 1.0)) BadConfig("delta must lie in (0, 1)");
  if (!(rbc_constant > 1.0) || !std::isfinite(rbc_constant)) {
    BadConfig("C must be a finite number above 1");
  }
  const double a = ResolvedAlpha();
  if (!(a > 0.0 && a < 0.5)) BadConfig("alpha must lie in (0, 1/2)");
  if (trials < 1) BadConfig("trials must be positive");
  if (budget < 1) BadConfig("budget must be positive");
  if (oracle == OracleKind::kEmpirical && empirical_path.empty()) {
    BadConfig("empirical oracle needs a data path");
  }
}

std::vector<std::string> ExperimentConfig::Warnings() const {
  std::vector<std::string> out;
  const double bound = DefaultAlpha(l, rbc_constant);
  if (alpha && *alpha > bound * (1.0 + 1e-12)) {
    out.push_back("alpha " + FormatDouble(*alpha) + " exceeds " +
                  FormatDouble(bound) +
                  "; the correctness guarantee does not cover it");
  }
  return out;
}

ExperimentConfig ParseExperimentConfig(std::string_view json_text,
                                       ExperimentConfig base) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::exception& e) {
    BadConfig(std::string("config is not valid JSON: ") + e.what());
  }
  if (!doc.is_object()) BadConfig("config must be a JSON object");
  ExperimentConfig c = std::move(base);
  std::optional<std::string> alpha_text;  // resolved once l and C are known
  try {
    for (const auto& [key, value] : doc.items()) {
      if (key == "algorithm") {
        c.algorithm = ParseBenchAlgorithm(value.get<std::string>());
      } else if (key == "oracle") {
        ParseOracle(c, value.get<std::string>());
      } else if (key == "n") {
        c.n = value.get<int>();
      } else if (key == "k") {
        c.k = value.get<int>();
      } else if (key == "l") {
        c.l = value.get<int>();
      } else if (key == "eps") {
        c.eps = value.get<double>();
      } else if (key == "delta") {
        c.delta = value.get<double>();
      } else if (key == "C") {
        c.rbc_constant = value.get<double>();
      } else if (key == "alpha") {
        if (value.is_string()) {
          alpha_text = value.get<std::string>();
        } else {
          c.alpha = value.get<double>();
        }
      } else if (key == "trials") {
        c.trials = value.get<int>();
      } else if (key == "seed" || key == "base_seed") {
        c.base_seed = value.get<uint64_t>();
      } else if (key == "budget") {
        c.budget = value.get<int64_t>();
      } else {
        BadConfig("unknown config key '" + key + "'");
      }
    }
  } catch (const json::exception& e) {
    BadConfig(std::string("config has a value of the wrong type: ") + e.what());
  }
  if (alpha_text) ApplyAxisValue(c, "alpha", *alpha_text);
  return c;
}

std::string ExperimentConfigToJson(const ExperimentConfig& c) {
  json doc = {{"algorithm", BenchAlgorithmName(c.algorithm)},
              {"oracle", OracleId(c)},
              {"n", c.n},
              {"k", c.k},
              {"l", c.l},
              {"eps", c.eps},
              {"delta", c.delta},
              {"C", c.rbc_constant},
              {"trials", c.trials},
              {"seed", c.base_seed},
              {"budget", c.budget}};
  if (c.alpha) {
    doc["alpha"] = *c.alpha;
  } else {
    doc["alpha"] = "default";
  }
  return doc.dump();
}

void ApplyAxisValue(ExperimentConfig& c, std::string_view axis,
                    std::string_view value) {
  if (axis == "n") {
    c.n = static_cast<int>(ParseInteger(value, axis));
  } else if (axis == "k") {
    c.k = static_cast<int>(ParseInteger(value, axis));
  } else if (axis == "l") {
    c.l = static_cast<int>(ParseInteger(value, axis));
  } else if (axis == "eps") {
    c.eps = ParseDouble(value, axis);
  } else if (axis == "delta") {
    c.delta = ParseDouble(value, axis);
  } else if (axis == "C") {
    c.rbc_constant = ParseDouble(value, axis);
  } else if (axis == "budget") {
    c.budget = ParseInteger(value, axis);
  } else if (axis == "trials") {
    c.trials = static_cast<int>(ParseInteger(value, axis));
  } else if (axis == "seed") {
    c.base_seed = static_cast<uint64_t>(ParseInteger(value, axis));
  } else if (axis == "algorithm") {
    c.algorithm = ParseBenchAlgorithm(value);
  } else if (axis == "alpha") {
    constexpr std::string_view kSuffix = "xdefault";
    if (value == "default") {
      c.alpha.reset();
    } else if (value.ends_with(kSuffix)) {
      const double factor =
          ParseDouble(value.substr(0, value.size() - kSuffix.size()), axis);
      c.alpha = factor * DefaultAlpha(c.l, c.rbc_constant);
    } else {
      c.alpha = ParseDouble(value, axis);
    }
  } else {
    BadConfig("unknown sweep axis '" + std::string(axis) + "'");
  }
}

std::string_view TrialCsvHeader() {
  return "trial,seed,algorithm,n,k,l,eps,delta,C,alpha,queries,correct,"
         "wall_time_s";
}

std::string TrialCsvRow(const TrialReport& r) {
  std::ostringstream out;
  out << r.trial << ',' << r.seed << ',' << r.algorithm << ',' << r.n << ','
      << r.k << ',' << r.l << ',' << FormatDouble(r.eps) << ','
      << FormatDouble(r.delta) << ',' << FormatDouble(r.rbc_constant) << ','
      << FormatDouble(r.alpha) << ',' << r.queries << ','
      << (r.correct ? 1 : 0) << ',' << FormatDouble(r.wall_time_s);
  return out.str();
}

std::string CanonicalTrialRecord(const TrialReport& r) {
  std::ostringstream out;
  out << r.trial << ',' << r.seed << ',' << r.algorithm << ',' << r.n << ','
      << r.k << ',' << r.l << ',' << FormatDouble(r.eps) << ','
      << FormatDouble(r.delta) << ',' << FormatDouble(r.rbc_constant) << ','
      << FormatDouble(r.alpha) << ',' << r.queries << ','
      << r.internal_samples << ',' << (r.correct ? 1 : 0) << ',' << r.rounds
      << ',' << r.error << ",[";
  for (std::size_t i = 0; i < r.answer.size(); ++i) {
    out << (i ? " " : "") << r.answer[i];
  }
  out << ']';
  return out.str();
}

Experiment::Experiment(ExperimentConfig config) : config_(std::move(config)) {
  config_.Validate();
  if (config_.oracle != OracleKind::kEmpirical) return;
  PreferenceProfile full = ReadPreflibFile(config_.empirical_path);
  if (full.universe_size() < config_.n) {
    BadConfig("data set has " + std::to_string(full.universe_size()) +
              " items, fewer than n");
  }
  auto profile = std::make_shared<PreferenceProfile>(
      RestrictToFirstItems(full, config_.n));
  marginals_ = std::make_shared<EmpiricalMarginals>(
      ComputeEmpiricalMarginals(*profile, config_.l));
  empirical_truth_ = MmFit(ComputePairwiseCounts(*profile)).scores;
  profile_ = std::move(profile);
}

ScoreVector Experiment::GroundTruth(int trial) const {
  if (empirical_truth_) return *empirical_truth_;
  const uint64_t seed = config_.base_seed ^ static_cast<uint64_t>(trial);
  Pcg32 rng(seed, kInstanceStream);
  return BuildSyntheticInstance(config_.n, config_.rbc_constant, rng);
}

TrialReport Experiment::RunTrial(int trial, std::optional<int64_t> budget) const {
  const ExperimentConfig& c = config_;
  TrialReport report;
  report.trial = trial;
  report.seed = c.base_seed ^ static_cast<uint64_t>(trial);
  report.algorithm = std::string(BenchAlgorithmName(c.algorithm));
  report.n = c.n;
  report.k = IsTopK(c.algorithm) ? c.k : 0;
  report.l = c.l;
  report.eps = c.eps;
  report.delta = c.delta;
  report.rbc_constant = c.rbc_constant;
  report.alpha = c.ResolvedAlpha();
  const int64_t limit = budget.value_or(c.budget);

  const auto start = std::chrono::steady_clock::now();
  std::unique_ptr<ChoiceOracle> oracle;
  try {
    const ScoreVector truth = GroundTruth(trial);
    switch (c.oracle) {
      case OracleKind::kSynthetic:
        oracle = std::make_unique<SyntheticOracle>(truth);
        break;
      case OracleKind::kBanditReduction:
        oracle = std::make_unique<BanditReductionOracle>(
            std::vector<double>(truth.thetas().begin(), truth.thetas().end()));
        break;
      case OracleKind::kEmpirical:
        oracle = std::make_unique<EmpiricalOracle>(*marginals_);
        break;
    }
    Pcg32 oracle_rng(report.seed, kOracleStream);

    if (c.algorithm == BenchAlgorithm::kBordaRanking) {
      Pcg32 rng(report.seed, kAlgorithmStream);
      const Ranking ranking =
          BordaRanking(c.n, c.l, limit, *oracle, rng, oracle_rng);
      report.answer = ranking.Order();
      report.correct = IsEpsRanking(truth, c.eps, ranking);
    } else if (c.algorithm == BenchAlgorithm::kBordaTopK) {
      Pcg32 rng(report.seed, kAlgorithmStream);
      const TopKSet top =
          BordaTopK(c.n, c.k, c.l, limit, *oracle, rng, oracle_rng);
      report.answer.assign(top.items().begin(), top.items().end());
      report.correct = IsEpsTopK(truth, c.k, c.eps, top);
    } else {
      auto machine = BuildMachine(c, report.seed);
      RunToCompletion(*machine, *oracle, oracle_rng, limit);
      report.answer = machine->ResultItems();
      if (machine->produces_ranking()) {
        report.correct =
            IsEpsRanking(truth, c.eps, Ranking::FromOrder(report.answer));
      } else {
        report.correct = IsEpsTopK(truth, c.k, c.eps, TopKSet(report.answer));
      }
      if (const auto* t = dynamic_cast<const TournamentMachine*>(machine.get())) {
        report.rounds = t->round();
      }
    }
  } catch (const Error& e) {
    report.error = std::string(ErrorCodeName(e.code()));
    report.correct = false;
    report.answer.clear();
  } catch (const std::exception& e) {
    report.error = "internal_invariant_broken";
    report.correct = false;
    report.answer.clear();
  }
  if (oracle) {
    report.queries = oracle->stats().query_count;
    report.internal_samples = oracle->stats().internal_samples;
  }
  report.wall_time_s = std::chrono::duration<double>(
                           std::chrono::steady_clock::now() - start)
                           .count();
  return report;
}

int ResolveThreadCount(int requested, int jobs) {
  int threads = requested > 0
                    ? requested
                    : static_cast<int>(std::thread::hardware_concurrency());
  if (const char* env = std::getenv("MNLRANK_THREADS")) {
    const int cap = std::atoi(env);
    if (cap > 0) threads = std::min(threads, cap);
  }
  return std::clamp(threads, 1, std::max(jobs, 1));
}

std::vector<TrialReport> Experiment::RunAll(int threads) const {
  const int trials = config_.trials;
  std::vector<TrialReport> reports(trials);
  const int workers = ResolveThreadCount(threads, trials);
  std::atomic<int> next{0};
  auto work = [&] {
    for (int t = next++; t < trials; t = next++) reports[t] = RunTrial(t);
  };
  if (workers == 1) {
    work();
    return reports;
  }
  std::vector<std::jthread> pool;
  for (int w = 0; w < workers; ++w) pool.emplace_back(work);
  pool.clear();
  return reports;
}

AggregateRow Aggregate(std::string axis_value,
                       std::span<const TrialReport> reports) {
  AggregateRow row;
  row.axis_value = std::move(axis_value);
  row.trials = static_cast<int>(reports.size());
  if (reports.empty()) return row;
  double successes = 0.0;
  double sum = 0.0;
  for (const TrialReport& r : reports) {
    successes += r.correct ? 1.0 : 0.0;
    sum += static_cast<double>(r.queries);
  }
  const double count = static_cast<double>(reports.size());
  row.success_rate = successes / count;
  row.mean_queries = sum / count;
  if (reports.size() > 1) {
    double ss = 0.0;
    for (const TrialReport& r : reports) {
      const double d = static_cast<double>(r.queries) - row.mean_queries;
      ss += d * d;
    }
    row.std_queries = std::sqrt(ss / (count - 1.0));
  }
  return row;
}

std::string_view AggregateCsvHeader() {
  return "axis_value,trials,success_rate,mean_queries,std_queries";
}

std::string AggregateCsvRow(const AggregateRow& row) {
  return row.axis_value + ',' + std::to_string(row.trials) + ',' +
         FormatDouble(row.success_rate) + ',' + FormatDouble(row.mean_queries) +
         ',' + FormatDouble(row.std_queries);
}

SweepResult RunSweep(const ExperimentConfig& config, std::string_view axis,
                     std::span<const std::string> values, int threads) {
  SweepResult result;
  for (const std::string& value : values) {
    ExperimentConfig c = config;
    ApplyAxisValue(c, axis, value);
    const Experiment experiment(std::move(c));
    auto reports = experiment.RunAll(threads);
    result.rows.push_back(Aggregate(value, reports));
    result.trials.push_back(std::move(reports));
  }
  return result;
}

}  // namespace mnlrank
