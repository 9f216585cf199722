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

#include "mnlrank/oracle.h"

#include <algorithm>
#include <bit>
#include <string>

#include "mnlrank/error.h"

namespace mnlrank {

int ChoiceOracle::Query(std::span<const int> subset, Pcg32& rng) {
  if (subset.empty()) {
    throw Error(ErrorCode::kInvalidArgument, "empty query");
  }
  int64_t samples = 0;
  const int winner = Choose(subset, rng, samples);
  if (std::find(subset.begin(), subset.end(), winner) == subset.end()) {
    throw Error(ErrorCode::kInternalInvariantBroken,
                "oracle returned an item outside the query");
  }
  ++stats_.query_count;
  stats_.internal_samples += samples;
  return winner;
}

int SyntheticOracle::Choose(std::span<const int> subset, Pcg32& rng,
                            int64_t& samples) {
  if (subset.size() < 2) {
    throw Error(ErrorCode::kInvalidArgument, "a query needs at least two items");
  }
  samples = 1;
  double total = 0.0;
  for (int item : subset) total += scores_.theta(item);
  double u = rng.Uniform() * total;
  for (int item : subset) {
    u -= scores_.theta(item);
    if (u < 0.0) return item;
  }
  return subset.back();
}

std::vector<double> EmpiricalMarginals::Probabilities(uint64_t mask) const {
  const auto it = win_counts.find(mask);
  if (it == win_counts.end()) {
    throw Error(ErrorCode::kUnknownSubset,
                "subset mask " + std::to_string(mask) + " has no marginals");
  }
  std::vector<double> probs;
  probs.reserve(it->second.size());
  for (int64_t c : it->second) {
    probs.push_back(static_cast<double>(c) / static_cast<double>(total_count));
  }
  return probs;
}

EmpiricalOracle::EmpiricalOracle(const EmpiricalMarginals& marginals)
    : universe_size_(marginals.universe_size),
      max_subset_size_(marginals.max_subset_size) {
  for (const auto& [mask, counts] : marginals.win_counts) {
    std::vector<double> cumulative;
    int64_t running = 0;
    for (int64_t c : counts) {
      running += c;
      cumulative.push_back(static_cast<double>(running) /
                           static_cast<double>(marginals.total_count));
    }
    cumulative_.emplace(mask, std::move(cumulative));
  }
}

int EmpiricalOracle::Choose(std::span<const int> subset, Pcg32& rng,
                            int64_t& samples) {
  samples = 1;
  uint64_t mask = 0;
  for (int item : subset) {
    if (item < 0 || item >= universe_size_) {
      throw Error(ErrorCode::kUnknownSubset,
                  "item " + std::to_string(item) + " outside the profile");
    }
    mask |= uint64_t{1} << item;
  }
  const auto it = cumulative_.find(mask);
  if (it == cumulative_.end()) {
    throw Error(ErrorCode::kUnknownSubset,
                "no marginals for a subset of size " +
                    std::to_string(std::popcount(mask)) + " (max " +
                    std::to_string(max_subset_size_) + ")");
  }
  const double u = rng.Uniform();
  const std::vector<double>& cumulative = it->second;
  uint64_t rest = mask;
  for (std::size_t m = 0; m < cumulative.size(); ++m) {
    const int item = std::countr_zero(rest);
    rest &= rest - 1;
    if (u < cumulative[m] || rest == 0) return item;
  }
  return std::countr_zero(mask);
}

ReductionDraw BanditReductionQuery(std::span<const double> arm_means,
                                   std::span<const int> subset, Pcg32& rng) {
  const auto size = static_cast<uint32_t>(subset.size());
  for (int64_t pulls = 1; pulls <= kMaxReductionPulls; ++pulls) {
    const int arm = subset[rng.Bounded(size)];
    if (rng.Uniform() < arm_means[arm]) return {arm, pulls};
  }
  throw Error(ErrorCode::kNonTermination, "bandit reduction exceeded pull cap");
}

BanditReductionOracle::BanditReductionOracle(std::vector<double> arm_means)
    : arm_means_(std::move(arm_means)) {
  for (double mu : arm_means_) {
    if (!(mu > 0.0 && mu <= 1.0)) {
      throw Error(ErrorCode::kInvalidArgument, "arm means must lie in (0, 1]");
    }
  }
}

int BanditReductionOracle::Choose(std::span<const int> subset, Pcg32& rng,
                                  int64_t& samples) {
  if (subset.size() < 2) {
    throw Error(ErrorCode::kInvalidArgument, "a query needs at least two items");
  }
  const ReductionDraw draw = BanditReductionQuery(arm_means_, subset, rng);
  samples = draw.pulls;
  return draw.winner;
}

ScoreVector BuildSyntheticInstance(int n, double rbc_constant, Pcg32& rng) {
  if (n < 2 || !(rbc_constant > 1.0)) {
    throw Error(ErrorCode::kInvalidArgument, "need n >= 2 and C > 1");
  }
  const double low = 1.0 / rbc_constant;
  std::vector<double> raw(n);
  for (double& x : raw) x = low + (1.0 - low) * rng.Uniform();
  return NormalizeScores(raw, rbc_constant);
}

}  // namespace mnlrank
