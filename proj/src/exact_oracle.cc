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

#include "mnlrank/exact_oracle.h"

#include <algorithm>
#include <string>

#include "mnlrank/error.h"

namespace mnlrank {
namespace {

class KahanSum {
 public:
  void Add(long double x) {
    const long double y = x - carry_;
    const long double t = sum_ + y;
    carry_ = (t - sum_) - y;
    sum_ = t;
  }
  long double value() const { return sum_; }

 private:
  long double sum_ = 0.0L;
  long double carry_ = 0.0L;
};

}  // namespace

double ExactConditionalWinProb(const ScoreVector& scores,
                               std::span<const int> pool, int l, int i, int j) {
  if (pool.size() < 2) {
    throw Error(ErrorCode::kPoolTooSmall, "pool needs at least two items");
  }
  const int n = static_cast<int>(pool.size());
  const auto pos_i = std::find(pool.begin(), pool.end(), i);
  const auto pos_j = std::find(pool.begin(), pool.end(), j);
  if (i == j || pos_i == pool.end() || pos_j == pool.end()) {
    throw Error(ErrorCode::kInvalidArgument,
                "i and j must be distinct members of the pool");
  }
  const long double theta_i = scores.theta(i);
  const long double theta_j = scores.theta(j);
  if (n < l) return static_cast<double>(theta_i / (theta_i + theta_j));

  // Every l-subset has the same probability, so summing unnormalized win
  // probabilities over all subsets gives the conditional ratio directly.
  KahanSum win_i;
  KahanSum win_j;
  std::vector<char> mask(n, 0);
  std::fill(mask.begin(), mask.begin() + l, 1);
  do {
    long double total = 0.0L;
    bool has_i = false;
    bool has_j = false;
    for (int p = 0; p < n; ++p) {
      if (!mask[p]) continue;
      total += scores.theta(pool[p]);
      has_i |= pool[p] == i;
      has_j |= pool[p] == j;
    }
    if (has_i) win_i.Add(theta_i / total);
    if (has_j) win_j.Add(theta_j / total);
  } while (std::prev_permutation(mask.begin(), mask.end()));
  return static_cast<double>(win_i.value() / (win_i.value() + win_j.value()));
}

std::vector<WinBoundViolation> WinBoundViolations(const ScoreVector& scores,
                                              std::span<const int> pool, int l,
                                              double alpha, double tolerance) {
  const double c = scores.rbc_constant();
  const double max_alpha = (l - 1) / (4.0 * (l + c - 1));
  if (alpha > max_alpha * (1.0 + 1e-12)) {
    throw Error(ErrorCode::kAlphaTooLarge,
                "alpha " + std::to_string(alpha) + " exceeds (l-1)/(4(l+C-1)) = " +
                    std::to_string(max_alpha));
  }
  std::vector<WinBoundViolation> violations;
  for (int a : pool) {
    for (int b : pool) {
      if (!(scores.theta(a) > scores.theta(b))) continue;
      const double p = ExactConditionalWinProb(scores, pool, l, a, b);
      const double bound = 0.5 + alpha * (scores.theta(a) - scores.theta(b));
      if (p < bound - tolerance) violations.push_back({a, b, p, bound});
    }
  }
  return violations;
}

}  // namespace mnlrank
