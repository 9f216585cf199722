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

#include "mnlrank/verification.h"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <iomanip>
#include <numeric>
#include <sstream>

#include "mnlrank/confidence.h"
#include "mnlrank/exact_oracle.h"
#include "mnlrank/model.h"
#include "mnlrank/oracle.h"
#include "mnlrank/random.h"

namespace mnlrank {
namespace {

class Timer {
 public:
  double Seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                         start_)
        .count();
  }

 private:
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

ScoreVector RandomInstance(int n, double c, Pcg32& rng) {
  return BuildSyntheticInstance(n, c, rng);
}

std::string Sci(double x) {
  std::ostringstream out;
  out << std::scientific << std::setprecision(3) << x;
  return out.str();
}

std::vector<int> AllItems(int n) {
  std::vector<int> items(n);
  std::iota(items.begin(), items.end(), 0);
  return items;
}

CheckResult CheckChoiceSumsToOne(uint64_t seed) {
  Timer timer;
  Pcg32 rng(seed, kInstanceStream);
  double worst = 0.0;
  for (int trial = 0; trial < 500; ++trial) {
    const int n = 2 + static_cast<int>(rng.Bounded(9));
    const ScoreVector scores = RandomInstance(n, 10.0, rng);
    // Multisets of size 1..2n.
    std::vector<int> subset(1 + rng.Bounded(2 * n));
    for (int& item : subset) item = static_cast<int>(rng.Bounded(n));
    std::vector<int> members = subset;
    std::sort(members.begin(), members.end());
    members.erase(std::unique(members.begin(), members.end()), members.end());
    double total = 0.0;
    for (int item : members) {
      total += MnlChoiceProb(scores, subset, item);
    }
    worst = std::max(worst, std::abs(total - 1.0));
  }
  return {"choice_probabilities_sum_to_one", worst <= 1e-12,
          "max |sum - 1| = " + Sci(worst), timer.Seconds()};
}

CheckResult CheckConditionalComplement(uint64_t seed) {
  Timer timer;
  Pcg32 rng(seed, kInstanceStream);
  double worst = 0.0;
  for (int trial = 0; trial < 100; ++trial) {
    const int n = 3 + static_cast<int>(rng.Bounded(5));
    const int l = 2 + static_cast<int>(rng.Bounded(n - 1));
    const ScoreVector scores = RandomInstance(n, 10.0, rng);
    const std::vector<int> pool = AllItems(n);
    const int i = static_cast<int>(rng.Bounded(n));
    const int j = (i + 1 + static_cast<int>(rng.Bounded(n - 1))) % n;
    const double sum = ExactConditionalWinProb(scores, pool, l, i, j) +
                       ExactConditionalWinProb(scores, pool, l, j, i);
    worst = std::max(worst, std::abs(sum - 1.0));
  }
  return {"conditional_win_complement", worst <= 1e-12,
          "max |p_ij + p_ji - 1| = " + Sci(worst), timer.Seconds()};
}

CheckResult CheckEpsOptimalMonotone(uint64_t seed) {
  Timer timer;
  Pcg32 rng(seed, kInstanceStream);
  int failures = 0;
  for (int trial = 0; trial < 200; ++trial) {
    const int n = 2 + static_cast<int>(rng.Bounded(15));
    const int k = 1 + static_cast<int>(rng.Bounded(n));
    const ScoreVector scores = RandomInstance(n, 10.0, rng);
    std::vector<int> previous = EpsOptimalSet(scores, k, 0.0);
    if (static_cast<int>(previous.size()) < k) ++failures;
    for (double eps : {0.01, 0.05, 0.1, 0.2, 0.5}) {
      std::vector<int> current = EpsOptimalSet(scores, k, eps);
      if (!std::includes(current.begin(), current.end(), previous.begin(),
                         previous.end())) {
        ++failures;
      }
      previous = std::move(current);
    }
  }
  return {"eps_optimal_set_monotone", failures == 0,
          std::to_string(failures) + " non-monotone cases", timer.Seconds()};
}

CheckResult CheckSortedRanking(uint64_t seed) {
  Timer timer;
  Pcg32 rng(seed, kInstanceStream);
  int failures = 0;
  for (int trial = 0; trial < 200; ++trial) {
    const int n = 2 + static_cast<int>(rng.Bounded(15));
    const ScoreVector scores = RandomInstance(n, 10.0, rng);
    std::vector<int> order = AllItems(n);
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
      return scores.theta(a) > scores.theta(b);
    });
    if (!IsEpsRanking(scores, 1e-9, Ranking::FromOrder(order))) ++failures;
    // Swapping the best and worst item is wrong whenever their gap exceeds
    // eps.
    std::swap(order.front(), order.back());
    const double gap = scores.theta(order.back()) - scores.theta(order.front());
    const double eps = gap / 2.0;
    if (gap > 0.0 && IsEpsRanking(scores, eps, Ranking::FromOrder(order))) {
      ++failures;
    }
  }
  return {"eps_ranking_sorted_order", failures == 0,
          std::to_string(failures) + " misjudged orders", timer.Seconds()};
}

CheckResult CheckGroupSize() {
  Timer timer;
  struct Case {
    int n, k, l, m;
  };
  int failures = 0;
  for (Case c : {Case{10, 2, 5, 6}, Case{10, 2, 2, 4}, Case{10, 5, 10, 10},
                 Case{10, 1, 2, 2}, Case{100, 3, 20, 22}}) {
    if (TournamentGroupSize(c.n, c.k, c.l) != c.m) ++failures;
  }
  return {"tournament_group_size", failures == 0,
          std::to_string(failures) + " mismatched spot values", timer.Seconds()};
}

}  // namespace

CheckResult CheckWinBound(int instances, uint64_t seed) {
  Timer timer;
  Pcg32 rng(seed, kInstanceStream);
  constexpr double kConstants[] = {2.0, 10.0, 20.0};
  int64_t pairs = 0;
  int64_t violations = 0;
  double worst_margin = 1.0;
  for (int t = 0; t < instances; ++t) {
    const int n = 4 + static_cast<int>(rng.Bounded(5));
    const int l = 2 + static_cast<int>(rng.Bounded(n - 1));
    const double c = kConstants[rng.Bounded(3)];
    ScoreVector scores = RandomInstance(n, c, rng);
    if (t % 2 == 1) {
      std::vector<double> thetas(scores.thetas().begin(), scores.thetas().end());
      *std::min_element(thetas.begin(), thetas.end()) = 1.0 / c;
      scores = ScoreVector::FromNormalized(std::move(thetas), c);
    }
    const double alpha = DefaultAlpha(l, c);
    const std::vector<int> pool = AllItems(n);
    violations += static_cast<int64_t>(
        WinBoundViolations(scores, pool, l, alpha, 1e-10).size());
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        if (scores.theta(i) <= scores.theta(j)) continue;
        ++pairs;
        const double p = ExactConditionalWinProb(scores, pool, l, i, j);
        const double bound = 0.5 + alpha * (scores.theta(i) - scores.theta(j));
        worst_margin = std::min(worst_margin, p - bound);
      }
    }
  }
  std::ostringstream detail;
  detail << violations << " violations over " << pairs << " ordered pairs in "
         << instances << " instances; smallest margin " << worst_margin;
  return {"conditional_win_bound", violations == 0, detail.str(), timer.Seconds()};
}

CheckResult CheckDeltaSchedule(double delta) {
  Timer timer;
  constexpr int kTerms = 1'000'000;
  double sum = 0.0;
  for (int r = kTerms; r >= 1; --r) sum += TournamentSchedule(r, delta, 0.5).delta;
  // sum_{r > N} 1/r^2 = 1/N - 1/(2N^2) + 1/(6N^3) - ...
  const double n = kTerms;
  const double tail = 6.0 * delta / kPiSquared *
                      (1.0 / n - 1.0 / (2.0 * n * n) + 1.0 / (6.0 * n * n * n));
  const double error = std::abs(sum + tail - delta);
  return {"delta_schedule_sum", error <= 1e-9,
          "|sum - delta| = " + Sci(error), timer.Seconds()};
}

CheckResult CheckEpsSchedule(double eps) {
  Timer timer;
  double sum = 0.0;
  for (int r = 1;; ++r) {
    const double term = TournamentSchedule(r, 0.5, eps).eps;
    if (term < eps * 1e-18) break;
    sum += term;
  }
  const double error = std::abs(sum - eps) / eps;
  return {"eps_schedule_sum", error <= 1e-12,
          "relative |sum - eps| = " + Sci(error), timer.Seconds()};
}

std::vector<CheckResult> RunModelChecks(const VerifyOptions& options) {
  return {CheckWinBound(options.bound_instances, options.seed),
          CheckChoiceSumsToOne(options.seed + 1),
          CheckConditionalComplement(options.seed + 2),
          CheckEpsOptimalMonotone(options.seed + 3),
          CheckSortedRanking(options.seed + 4),
          CheckDeltaSchedule(0.05),
          CheckEpsSchedule(0.05),
          CheckGroupSize()};
}

}  // namespace mnlrank
