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

// Seeded experiment runner: one trial = one instance + oracle + algorithm
// run, judged against the instance's ground-truth scores.
//
// Trial t of a config uses seed base_seed ^ t. The instance, the algorithm's
// query randomness and the oracle each draw from their own PCG stream of that
// seed, so all algorithms of one config see the same instances and trials are
// independent of execution order.

#ifndef MNLRANK_EXPERIMENT_H_
#define MNLRANK_EXPERIMENT_H_

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "mnlrank/machine.h"
#include "mnlrank/model.h"
#include "mnlrank/oracle.h"
#include "mnlrank/preflib.h"

namespace mnlrank {

enum class BenchAlgorithm { kPdtr, kPdks, kTnks, kBordaTopK, kBordaRanking };
enum class OracleKind { kSynthetic, kEmpirical, kBanditReduction };

std::string_view BenchAlgorithmName(BenchAlgorithm algorithm);
// "pdtr", "pdks", "tnks", "borda-topk", "borda-rank".
BenchAlgorithm ParseBenchAlgorithm(std::string_view name);
bool IsTopK(BenchAlgorithm algorithm);

struct ExperimentConfig {
  BenchAlgorithm algorithm = BenchAlgorithm::kPdtr;
  OracleKind oracle = OracleKind::kSynthetic;
  std::string empirical_path;  // PrefLib file, for OracleKind::kEmpirical
  int n = 10;
  int k = 2;
  int l = 2;
  double eps = 0.05;
  double delta = 0.05;
  double rbc_constant = 10.0;
  std::optional<double> alpha;  // unset: DefaultAlpha(l, C)
  int trials = 100;
  uint64_t base_seed = 1;
  int64_t budget = kDefaultQueryBudget;

  double ResolvedAlpha() const;
  // Throws kInvalidConfig.
  void Validate() const;
  // Non-fatal notes, e.g. alpha above the guaranteed bound.
  std::vector<std::string> Warnings() const;
};

// Reads the JSON object form. Keys: algorithm, oracle ("synthetic",
// "bandit-reduction" or "empirical:<path>"), n, k, l, eps, delta, C, alpha
// (number or "default"), trials, seed, budget. Missing keys keep the values
// of `base`. Throws kInvalidConfig.
ExperimentConfig ParseExperimentConfig(std::string_view json_text,
                                       ExperimentConfig base = {});
std::string ExperimentConfigToJson(const ExperimentConfig& config);

// Sets one named parameter from text. `alpha` also accepts "default" and
// "<factor>xdefault". Throws kInvalidConfig for unknown axes or values.
void ApplyAxisValue(ExperimentConfig& config, std::string_view axis,
                    std::string_view value);

struct TrialReport {
  int trial = 0;
  uint64_t seed = 0;
  std::string algorithm;
  int n = 0;
  int k = 0;
  int l = 0;
  double eps = 0.0;
  double delta = 0.0;
  double rbc_constant = 0.0;
  double alpha = 0.0;
  int64_t queries = 0;
  int64_t internal_samples = 0;
  bool correct = false;
  double wall_time_s = 0.0;
  std::vector<int> answer;  // best-first order, or the selected set ascending
  int rounds = 0;           // tournament rounds (TNKS), else 0
  std::string error;        // error code name when the run failed
};

// Fixed CSV header: trial,seed,algorithm,n,k,l,eps,delta,C,alpha,queries,
// correct,wall_time_s
std::string_view TrialCsvHeader();
std::string TrialCsvRow(const TrialReport& report);
// Everything except wall time; equal for reruns of the same trial.
std::string CanonicalTrialRecord(const TrialReport& report);

class Experiment {
 public:
  // Validates the config and loads empirical data once.
  explicit Experiment(ExperimentConfig config);

  const ExperimentConfig& config() const { return config_; }

  // Ground-truth scores of trial `trial`.
  ScoreVector GroundTruth(int trial) const;

  // Never throws for algorithm/oracle failures; they land in report.error.
  // `budget` overrides config().budget for this trial.
  TrialReport RunTrial(int trial, std::optional<int64_t> budget = {}) const;

  // All trials, in trial order, on up to `threads` workers (0: default pool).
  std::vector<TrialReport> RunAll(int threads = 0) const;

 private:
  ExperimentConfig config_;
  std::shared_ptr<const PreferenceProfile> profile_;
  std::shared_ptr<const EmpiricalMarginals> marginals_;
  std::optional<ScoreVector> empirical_truth_;
};

// Worker count: MNLRANK_THREADS if set (and positive), capped by the hardware
// concurrency and by `jobs`.
int ResolveThreadCount(int requested, int jobs);

struct AggregateRow {
  std::string axis_value;
  int trials = 0;
  double success_rate = 0.0;
  double mean_queries = 0.0;
  double std_queries = 0.0;  // sample standard deviation
};

AggregateRow Aggregate(std::string axis_value,
                       std::span<const TrialReport> reports);
std::string_view AggregateCsvHeader();
std::string AggregateCsvRow(const AggregateRow& row);

struct SweepResult {
  std::vector<AggregateRow> rows;
  std::vector<std::vector<TrialReport>> trials;  // per axis value
};

SweepResult RunSweep(const ExperimentConfig& config, std::string_view axis,
                     std::span<const std::string> values, int threads = 0);

}  // namespace mnlrank

#endif  // MNLRANK_EXPERIMENT_H_
