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

// Choice oracles: one l-wise query in, one winner out.

#ifndef MNLRANK_ORACLE_H_
#define MNLRANK_ORACLE_H_

#include <cstdint>
#include <map>
#include <span>
#include <vector>

#include "mnlrank/model.h"
#include "mnlrank/random.h"

namespace mnlrank {

struct OracleStats {
  int64_t query_count = 0;
  // Underlying samples drawn; arm pulls for the bandit reduction, otherwise
  // equal to query_count.
  int64_t internal_samples = 0;
};

class ChoiceOracle {
 public:
  virtual ~ChoiceOracle() = default;

  // Returns the winner of one query over `subset` (a multiset of items).
  // Throws kInvalidArgument on an empty subset; implementations reject
  // subsets they cannot serve (size 1 included).
  int Query(std::span<const int> subset, Pcg32& rng);

  const OracleStats& stats() const { return stats_; }

 protected:
  // Draws a winner; adds the number of underlying samples used to `samples`.
  virtual int Choose(std::span<const int> subset, Pcg32& rng,
                     int64_t& samples) = 0;

 private:
  OracleStats stats_;
};

// Winner drawn from the MNL law over the ground-truth scores.
class SyntheticOracle : public ChoiceOracle {
 public:
  explicit SyntheticOracle(ScoreVector scores) : scores_(std::move(scores)) {}

  const ScoreVector& scores() const { return scores_; }

 protected:
  int Choose(std::span<const int> subset, Pcg32& rng, int64_t& samples) override;

 private:
  ScoreVector scores_;
};

// Exact per-subset win counts over a ground set of `universe_size` items.
// Subsets are keyed by bitmask (bit i set <=> item i is a member); each count
// vector lists members in increasing item order and sums to total_count.
struct EmpiricalMarginals {
  int universe_size = 0;
  int max_subset_size = 0;
  int64_t total_count = 0;
  std::map<uint64_t, std::vector<int64_t>> win_counts;

  // P(.|S) in increasing member order. Throws kUnknownSubset.
  std::vector<double> Probabilities(uint64_t mask) const;
};

// Serves queries from empirical marginals. The multiset is de-duplicated
// before lookup.
class EmpiricalOracle : public ChoiceOracle {
 public:
  explicit EmpiricalOracle(const EmpiricalMarginals& marginals);

 protected:
  int Choose(std::span<const int> subset, Pcg32& rng, int64_t& samples) override;

 private:
  int universe_size_;
  int max_subset_size_;
  std::map<uint64_t, std::vector<double>> cumulative_;
};

// Pull cap that turns almost-sure termination into a bounded contract.
inline constexpr int64_t kMaxReductionPulls = 1'000'000'000;

struct ReductionDraw {
  int winner;
  int64_t pulls;
};

// Bernoulli-bandit reduction: repeatedly picks a uniformly random arm of the
// multiset and pulls it until some pull returns 1. The returned arm follows
// mu_i / sum_{j in S} mu_j. Throws kNonTermination after kMaxReductionPulls.
ReductionDraw BanditReductionQuery(std::span<const double> arm_means,
                                   std::span<const int> subset, Pcg32& rng);

class BanditReductionOracle : public ChoiceOracle {
 public:
  // Throws kInvalidArgument unless every mean lies in (0, 1].
  explicit BanditReductionOracle(std::vector<double> arm_means);

 protected:
  int Choose(std::span<const int> subset, Pcg32& rng, int64_t& samples) override;

 private:
  std::vector<double> arm_means_;
};

// n scores drawn i.i.d. uniform on [1/C, 1] and rescaled so the maximum is 1.
ScoreVector BuildSyntheticInstance(int n, double rbc_constant, Pcg32& rng);

}  // namespace mnlrank

#endif  // MNLRANK_ORACLE_H_
