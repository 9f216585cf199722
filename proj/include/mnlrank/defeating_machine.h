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

// Pairwise-defeating total ranking (PDTR) and k-selection (PDKS).
//
// Both algorithms repeatedly query l items of the remaining set R, count wins,
// and mark "q defeats j" once the winner q either reaches the win cap or its
// share of the q-vs-j wins clears the confidence bound b_{w_q + w_j}. An item
// that defeats every other member of R leaves at the top (next rank, or into
// the answer set); an item defeated by every other member leaves at the
// bottom (last free rank, or discarded).

#ifndef MNLRANK_DEFEATING_MACHINE_H_
#define MNLRANK_DEFEATING_MACHINE_H_

#include <cstdint>
#include <span>
#include <vector>

#include "mnlrank/confidence.h"
#include "mnlrank/machine.h"
#include "mnlrank/model.h"
#include "mnlrank/random.h"

namespace mnlrank {

// One "winner defeats loser" mark, with the win counts at marking time.
struct DefeatMark {
  int winner;
  int loser;
  int64_t winner_wins;
  int64_t loser_wins;
  bool by_cap;
};

class DefeatingMachine final : public QueryMachine {
 public:
  enum class Mode { kTotalRanking, kTopK };

  // PDTR over `items` (delta* = delta / (n(n-1)+1)).
  static DefeatingMachine TotalRanking(std::vector<int> items, int l,
                                       double delta, double eps, double alpha,
                                       Pcg32 rng);
  // PDKS over `items` (delta* = delta / (2k(n-1)+1)).
  static DefeatingMachine TopK(std::vector<int> items, int k, int l,
                               double delta, double eps, double alpha,
                               Pcg32 rng);

  std::span<const int> NextQuery() override;
  void SubmitResult(int winner) override;
  bool finished() const override { return finished_; }
  int64_t queries() const override { return queries_; }
  MachineProgress progress() const override;
  bool produces_ranking() const override { return mode_ == Mode::kTotalRanking; }
  std::vector<int> ResultItems() const override;

  // Ranking over local indices (position of items()[i] is position(i)).
  // Total-ranking mode only; throws kInvalidArgument before finishing.
  Ranking LocalRanking() const;

  // State inspection. Local indices address items() positions.
  Mode mode() const { return mode_; }
  int size() const { return static_cast<int>(items_.size()); }
  std::span<const int> items() const { return items_; }
  std::span<const int> remaining() const { return remaining_; }
  std::span<const int> removal_log() const { return removal_log_; }
  std::span<const int> selected() const { return selected_; }
  int64_t wins(int local) const { return wins_[local]; }
  bool Defeats(int a, int b) const { return defeats_[a * size() + b] != 0; }
  int lo() const { return lo_; }
  int hi() const { return hi_; }
  int k() const { return k_; }
  const ConfidenceParams& params() const { return params_; }
  int64_t win_cap() const { return win_cap_; }

  // When enabled, every defeat mark is appended to marks().
  void set_record_marks(bool record) { record_marks_ = record; }
  std::span<const DefeatMark> marks() const { return marks_; }

 private:
  DefeatingMachine(std::vector<int> items, Mode mode, int k, int l,
                   const ConfidenceParams& params, Pcg32 rng);

  void Ingest(int q);
  bool RatioRuleHolds(int64_t w_winner, int64_t w_other) const;
  void Mark(int winner, int loser, bool by_cap);
  void Resolve();
  void ExtractTop(int item);
  void ExtractBottom(int item);
  void Remove(int item);
  void UpdateFinished();

  std::vector<int> items_;  // local -> item id
  Mode mode_;
  int k_;
  int l_;
  ConfidenceParams params_;
  int64_t win_cap_;
  double ratio_base_;  // 1/2 - alpha*eps
  double log_offset_;  // log(pi^2 / (6 delta*))
  Pcg32 rng_;

  std::vector<int> remaining_;  // ascending local indices
  std::vector<char> in_remaining_;
  std::vector<int> removal_log_;
  std::vector<int64_t> wins_;
  std::vector<char> defeats_;  // row-major: defeats_[a*n+b] <=> a defeats b
  std::vector<int> beats_in_r_;   // #{j in R : a defeats j}, for a in R
  std::vector<int> beaten_in_r_;  // #{j in R : j defeats a}, for a in R
  std::vector<int> rank_;         // local -> 0-based rank, -1 if unassigned
  std::vector<int> selected_;     // local, in selection order
  int lo_ = 0;
  int hi_ = 0;

  bool pending_ = false;
  std::vector<int> pending_local_;
  std::vector<int> pending_items_;
  std::vector<int> scratch_;  // some permutation of R; stale after a removal
  bool scratch_stale_ = true;

  bool finished_ = false;
  int64_t queries_ = 0;

  bool record_marks_ = false;
  std::vector<DefeatMark> marks_;
};

}  // namespace mnlrank

#endif  // MNLRANK_DEFEATING_MACHINE_H_
