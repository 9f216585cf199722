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

#include "mnlrank/borda.h"

#include <algorithm>
#include <numeric>

#include "mnlrank/error.h"

namespace mnlrank {

std::vector<int> BordaOrder(int n, int l, int64_t budget, ChoiceOracle& oracle,
                            Pcg32& rng, Pcg32& oracle_rng) {
  if (budget < 1) throw Error(ErrorCode::kInvalidArgument, "budget must be >= 1");
  if (l < 2 || l > n) {
    throw Error(ErrorCode::kInvalidArgument, "query size l outside [2, n]");
  }
  std::vector<int> pool(n);
  std::iota(pool.begin(), pool.end(), 0);
  std::vector<int64_t> wins(n, 0);
  for (int64_t t = 0; t < budget; ++t) {
    for (int i = 0; i < l; ++i) {
      const int j = i + static_cast<int>(rng.Bounded(static_cast<uint32_t>(n - i)));
      std::swap(pool[i], pool[j]);
    }
    ++wins[oracle.Query(std::span<const int>(pool.data(), l), oracle_rng)];
  }
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&wins](int a, int b) { return wins[a] > wins[b]; });
  return order;
}

Ranking BordaRanking(int n, int l, int64_t budget, ChoiceOracle& oracle,
                     Pcg32& rng, Pcg32& oracle_rng) {
  return Ranking::FromOrder(BordaOrder(n, l, budget, oracle, rng, oracle_rng));
}

TopKSet BordaTopK(int n, int k, int l, int64_t budget, ChoiceOracle& oracle,
                  Pcg32& rng, Pcg32& oracle_rng) {
  if (k < 1 || k > n) throw Error(ErrorCode::kInvalidArgument, "k outside [1, n]");
  std::vector<int> order = BordaOrder(n, l, budget, oracle, rng, oracle_rng);
  order.resize(k);
  return TopKSet(std::move(order));
}

}  // namespace mnlrank
