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

// Brute-force probability oracles. These enumerate every query set the
// algorithms could form and are meant for verification at small n, not for
// use inside the algorithms.

#ifndef MNLRANK_EXACT_ORACLE_H_
#define MNLRANK_EXACT_ORACLE_H_

#include <span>
#include <vector>

#include "mnlrank/model.h"

namespace mnlrank {

// Pr{winner = i | winner in {i, j}} for one query formed the way the
// defeating algorithms form it from the remaining pool: a uniformly random
// l-subset when |pool| >= l, otherwise the whole pool plus padding (the
// padding cancels out of the conditional probability).
//
// Throws kPoolTooSmall if |pool| < 2 and kInvalidArgument unless i != j are
// both in the pool.
double ExactConditionalWinProb(const ScoreVector& scores,
                               std::span<const int> pool, int l, int i, int j);

struct WinBoundViolation {
  int better;
  int worse;
  double probability;
  double bound;
};

// Checks Pr{better wins | better or worse wins} >= 1/2 + alpha*(theta gap) for
// every ordered pair of the pool with a strictly larger first score. A
// violation is reported when the exact value is below the bound by more than
// `tolerance`. Throws kAlphaTooLarge if alpha exceeds (l-1)/(4(l+C-1)).
std::vector<WinBoundViolation> WinBoundViolations(const ScoreVector& scores,
                                              std::span<const int> pool, int l,
                                              double alpha,
                                              double tolerance = 1e-10);

}  // namespace mnlrank

#endif  // MNLRANK_EXACT_ORACLE_H_
