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

#ifndef MNLRANK_TOURNAMENT_MACHINE_H_
#define MNLRANK_TOURNAMENT_MACHINE_H_

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "mnlrank/defeating_machine.h"
#include "mnlrank/machine.h"
#include "mnlrank/random.h"

namespace mnlrank {

// Tournament k-selection (TNKS). Each round splits the survivors into groups
// of m = min{n, max{2k, k+l-1}} items, runs PDKS with the round's
// (delta_r, eps_r) inside every group, and keeps the union of the selected
// items. Stops once a round leaves exactly k survivors.
//
// A short final group is padded with random items already grouped this
// round, then with random items outside the round's survivors.
class TournamentMachine final : public QueryMachine {
 public:
  // Throws kInvalidArgument unless 1 <= k <= n/2 and 2 <= l <= n.
  TournamentMachine(std::vector<int> items, int k, int l, double delta,
                    double eps, double alpha, Pcg32 rng);

  std::span<const int> NextQuery() override;
  void SubmitResult(int winner) override;
  bool finished() const override { return finished_; }
  int64_t queries() const override { return queries_; }
  MachineProgress progress() const override;
  bool produces_ranking() const override { return false; }
  std::vector<int> ResultItems() const override;

  int group_size() const { return group_size_; }
  int round() const { return round_; }
  // |T_0| = n followed by |T_r| for every completed round r.
  std::span<const int> survivor_counts() const { return survivor_counts_; }
  // The PDKS run of the current group; empty once finished.
  const DefeatingMachine* current_group() const {
    return group_ ? &*group_ : nullptr;
  }

 private:
  void StartRound();
  void StartGroup();
  void FinishGroup();

  std::vector<int> items_;
  int k_;
  int l_;
  double delta_;
  double eps_;
  double alpha_;
  int group_size_;
  Pcg32 rng_;

  int round_ = 0;
  std::vector<int> previous_;    // T_{r-1}, ascending
  std::vector<int> ungrouped_;   // R of the current round, ascending
  std::vector<int> survivors_;   // T_r under construction, ascending
  std::vector<int> survivor_counts_;
  std::optional<DefeatingMachine> group_;

  bool finished_ = false;
  int64_t queries_ = 0;
};

}  // namespace mnlrank

#endif  // MNLRANK_TOURNAMENT_MACHINE_H_
