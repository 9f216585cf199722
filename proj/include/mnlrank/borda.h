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

// Non-adaptive win-counting baseline for the benchmark harness.

#ifndef MNLRANK_BORDA_H_
#define MNLRANK_BORDA_H_

#include <cstdint>
#include <vector>

#include "mnlrank/model.h"
#include "mnlrank/oracle.h"
#include "mnlrank/random.h"

namespace mnlrank {

// Issues `budget` queries over uniformly random l-subsets of items 0..n-1 and
// returns the items by decreasing win count, ties broken by lower index.
// Throws kInvalidArgument for budget < 1 or l outside [2, n].
std::vector<int> BordaOrder(int n, int l, int64_t budget, ChoiceOracle& oracle,
                            Pcg32& rng, Pcg32& oracle_rng);

Ranking BordaRanking(int n, int l, int64_t budget, ChoiceOracle& oracle,
                     Pcg32& rng, Pcg32& oracle_rng);

TopKSet BordaTopK(int n, int k, int l, int64_t budget, ChoiceOracle& oracle,
                  Pcg32& rng, Pcg32& oracle_rng);

}  // namespace mnlrank

#endif  // MNLRANK_BORDA_H_
