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

#include "mnlrank/tournament_machine.h"

#include <algorithm>
#include <iterator>
#include <string>

#include "mnlrank/confidence.h"
#include "mnlrank/error.h"

namespace mnlrank {
namespace {

// Moves `count` uniformly chosen elements of `pool` to the back of `out`
// (partial Fisher-Yates on a copy; `pool` keeps its order).
void SampleWithoutReplacement(const std::vector<int>& pool, int count,
                              Pcg32& rng, std::vector<int>& out) {
  std::vector<int> scratch = pool;
  const int size = static_cast<int>(scratch.size());
  for (int i = 0; i < count; ++i) {
    const int j = i + static_cast<int>(rng.Bounded(static_cast<uint32_t>(size - i)));
    std::swap(scratch[i], scratch[j]);
    out.push_back(scratch[i]);
  }
}

std::vector<int> SortedDifference(const std::vector<int>& a,
                                  const std::vector<int>& b) {
  std::vector<int> out;
  std::set_difference(a.begin(), a.end(), b.begin(), b.end(),
                      std::back_inserter(out));
  return out;
}

}  // namespace

TournamentMachine::TournamentMachine(std::vector<int> items, int k, int l,
                                     double delta, double eps, double alpha,
                                     Pcg32 rng)
    : items_(std::move(items)),
      k_(k),
      l_(l),
      delta_(delta),
      eps_(eps),
      alpha_(alpha),
      rng_(rng) {
  std::sort(items_.begin(), items_.end());
  const int n = static_cast<int>(items_.size());
  if (n < 2 || k < 1 || k > n / 2) {
    throw Error(ErrorCode::kInvalidArgument,
                "tournament needs 1 <= k <= n/2 (n=" + std::to_string(n) +
                    ", k=" + std::to_string(k) + ")");
  }
  if (l < 2 || l > n) {
    throw Error(ErrorCode::kInvalidArgument, "query size l outside [2, n]");
  }
  if (std::adjacent_find(items_.begin(), items_.end()) != items_.end()) {
    throw Error(ErrorCode::kInvalidArgument, "duplicate item id");
  }
  group_size_ = TournamentGroupSize(n, k, l);
  previous_ = items_;
  survivor_counts_.push_back(n);
  StartRound();
}

void TournamentMachine::StartRound() {
  ++round_;
  ungrouped_ = previous_;
  survivors_.clear();
  StartGroup();
}

void TournamentMachine::StartGroup() {
  std::vector<int> group;
  group.reserve(group_size_);
  if (static_cast<int>(ungrouped_.size()) >= group_size_) {
    SampleWithoutReplacement(ungrouped_, group_size_, rng_, group);
  } else {
    group = ungrouped_;
    int missing = group_size_ - static_cast<int>(group.size());
    const std::vector<int> grouped = SortedDifference(previous_, ungrouped_);
    const int from_round = std::min<int>(missing, static_cast<int>(grouped.size()));
    SampleWithoutReplacement(grouped, from_round, rng_, group);
    missing -= from_round;
    if (missing > 0) {
      const std::vector<int> outside = SortedDifference(items_, previous_);
      if (static_cast<int>(outside.size()) < missing) {
        throw Error(ErrorCode::kInternalInvariantBroken,
                    "not enough items to pad a tournament group");
      }
      SampleWithoutReplacement(outside, missing, rng_, group);
    }
  }
  std::vector<int> taken = group;
  std::sort(taken.begin(), taken.end());
  ungrouped_ = SortedDifference(ungrouped_, taken);

  const RoundSchedule schedule = TournamentSchedule(round_, delta_, eps_);
  const Pcg32 group_rng(rng_.Next64(), kAlgorithmStream);
  group_.emplace(DefeatingMachine::TopK(std::move(group), k_, l_, schedule.delta,
                                        schedule.eps, alpha_, group_rng));
}

std::span<const int> TournamentMachine::NextQuery() {
  if (finished_) throw Error(ErrorCode::kNoPendingQuery, "machine finished");
  return group_->NextQuery();
}

void TournamentMachine::SubmitResult(int winner) {
  if (finished_) {
    throw Error(ErrorCode::kOutOfOrderSubmission, "no query is pending");
  }
  group_->SubmitResult(winner);
  ++queries_;
  if (group_->finished()) FinishGroup();
}

void TournamentMachine::FinishGroup() {
  std::vector<int> merged;
  const std::vector<int> chosen = group_->ResultItems();
  std::set_union(survivors_.begin(), survivors_.end(), chosen.begin(),
                 chosen.end(), std::back_inserter(merged));
  survivors_ = std::move(merged);
  group_.reset();
  if (!ungrouped_.empty()) {
    StartGroup();
    return;
  }
  survivor_counts_.push_back(static_cast<int>(survivors_.size()));
  previous_ = survivors_;
  if (static_cast<int>(survivors_.size()) == k_) {
    finished_ = true;
    return;
  }
  StartRound();
}

MachineProgress TournamentMachine::progress() const {
  MachineProgress p;
  p.queries = queries_;
  p.round = round_;
  if (group_) {
    p.remaining = static_cast<int>(group_->remaining().size());
    p.selected = static_cast<int>(group_->selected().size());
  } else {
    p.selected = static_cast<int>(survivors_.size());
  }
  return p;
}

std::vector<int> TournamentMachine::ResultItems() const {
  if (!finished_) throw Error(ErrorCode::kInvalidArgument, "machine not finished");
  return survivors_;
}

}  // namespace mnlrank
