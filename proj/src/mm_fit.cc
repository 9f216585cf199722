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

#include "mnlrank/mm_fit.h"

#include <algorithm>
#include <cmath>

#include "json.hpp"
#include "mnlrank/error.h"

namespace mnlrank {
namespace {

// Every item reachable from item 0 along "i beat j" edges and along the
// reversed edges.
bool StronglyConnected(const PairwiseCounts& counts) {
  const int n = counts.size();
  for (bool reversed : {false, true}) {
    std::vector<char> seen(n, 0);
    std::vector<int> stack = {0};
    seen[0] = 1;
    while (!stack.empty()) {
      const int a = stack.back();
      stack.pop_back();
      for (int b = 0; b < n; ++b) {
        const int64_t w = reversed ? counts.wins(b, a) : counts.wins(a, b);
        if (w > 0 && !seen[b]) {
          seen[b] = 1;
          stack.push_back(b);
        }
      }
    }
    if (std::count(seen.begin(), seen.end(), 1) != n) return false;
  }
  return true;
}

}  // namespace

double BtlLogLikelihood(const PairwiseCounts& counts,
                        std::span<const double> thetas) {
  double ll = 0.0;
  for (int i = 0; i < counts.size(); ++i) {
    for (int j = 0; j < counts.size(); ++j) {
      const int64_t w = counts.wins(i, j);
      if (i == j || w == 0) continue;
      ll += static_cast<double>(w) *
            (std::log(thetas[i]) - std::log(thetas[i] + thetas[j]));
    }
  }
  return ll;
}

MmFitResult MmFit(const PairwiseCounts& counts, const MmFitOptions& options) {
  const int n = counts.size();
  if (n < 2) throw Error(ErrorCode::kInvalidArgument, "need at least two items");
  if (!StronglyConnected(counts)) {
    throw Error(ErrorCode::kDisconnected,
                "comparison graph is not strongly connected; the MLE diverges");
  }
  std::vector<double> total_wins(n, 0.0);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (i != j) total_wins[i] += static_cast<double>(counts.wins(i, j));
    }
  }

  std::vector<double> theta(n, 1.0);
  std::vector<double> next(n);
  std::vector<double> trace = {BtlLogLikelihood(counts, theta)};
  bool converged = false;
  int iter = 0;
  while (iter < options.max_iter && !converged) {
    ++iter;
    for (int i = 0; i < n; ++i) {
      double denom = 0.0;
      for (int j = 0; j < n; ++j) {
        if (i == j) continue;
        const auto games = static_cast<double>(counts.wins(i, j) + counts.wins(j, i));
        if (games > 0.0) denom += games / (theta[i] + theta[j]);
      }
      next[i] = total_wins[i] / denom;
    }
    const double max = *std::max_element(next.begin(), next.end());
    double change = 0.0;
    for (int i = 0; i < n; ++i) {
      next[i] /= max;
      change = std::max(change, std::abs(next[i] - theta[i]) / theta[i]);
    }
    theta.swap(next);
    trace.push_back(BtlLogLikelihood(counts, theta));
    converged = change < options.tol;
  }
  const double min = *std::min_element(theta.begin(), theta.end());
  return {ScoreVector::FromNormalized(theta, 1.0 / min), converged, iter,
          std::move(trace)};
}

std::string FittedScoresJson(const PreferenceProfile& profile,
                             const ScoreVector& scores) {
  nlohmann::json out;
  out["labels"] = nlohmann::json::array();
  for (int i = 0; i < static_cast<int>(scores.size()); ++i) {
    out["labels"].push_back(profile.DisplayName(i));
  }
  out["thetas"] = std::vector<double>(scores.thetas().begin(), scores.thetas().end());
  const auto thetas = scores.thetas();
  out["C"] = 1.0 / *std::min_element(thetas.begin(), thetas.end());
  return out.dump();
}

}  // namespace mnlrank
