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

// Confidence-bound arithmetic shared by the pairwise-defeating algorithms and
// the tournament schedule.

#ifndef MNLRANK_CONFIDENCE_H_
#define MNLRANK_CONFIDENCE_H_

#include <cstdint>
#include <numbers>

namespace mnlrank {

struct ConfidenceParams {
  double alpha = 0.0;       // (0, 1/2)
  double eps = 0.0;         // (0, 1)
  double delta_star = 0.0;  // per-pair error budget, (0, 1)
};

// Throws kInvalidArgument for parameters outside their ranges.
void ValidateConfidenceParams(const ConfidenceParams& params);

// b_t = 1/2 - alpha*eps + sqrt(log(pi^2 t^2 / (6 delta*)) / (2t)), t >= 1.
double ConfidenceBound(int64_t t, const ConfidenceParams& params);

// ceil(log(1/delta*) / (4 alpha^2 eps^2)), at least 1. Throws kCapTooLarge
// when the value does not fit in int64_t.
int64_t WinCap(const ConfidenceParams& params);

// Largest alpha for which the pairwise win bound is guaranteed:
// (l-1) / (4(l+C-1)).
double DefaultAlpha(int l, double rbc_constant);

// Per-pair error budgets of total ranking and k-selection over n items.
inline double RankingDeltaStar(double delta, int n) {
  return delta / (static_cast<double>(n) * (n - 1) + 1.0);
}
inline double SelectionDeltaStar(double delta, int n, int k) {
  return delta / (2.0 * k * (n - 1) + 1.0);
}

struct RoundSchedule {
  double delta;
  double eps;
};

// Round r >= 1 of the tournament: delta_r = 6 delta / (r^2 pi^2) and
// eps_r = (eps / 4) (4/5)^r. Both sum to their totals over r = 1, 2, ...
RoundSchedule TournamentSchedule(int round, double delta, double eps);

// Tournament group size m = min{n, max{2k, k + l - 1}}.
int TournamentGroupSize(int n, int k, int l);

inline constexpr double kPiSquared = std::numbers::pi * std::numbers::pi;

}  // namespace mnlrank

#endif  // MNLRANK_CONFIDENCE_H_
