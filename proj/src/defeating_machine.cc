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

#include "mnlrank/defeating_machine.h"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numbers>
#include <string>

#include "mnlrank/error.h"

namespace mnlrank {
namespace {

void ValidateItems(const std::vector<int>& items, int l) {
  const int n = static_cast<int>(items.size());
  if (n < 2) throw Error(ErrorCode::kInvalidArgument, "need at least two items");
  if (l < 2 || l > n) {
    throw Error(ErrorCode::kInvalidArgument,
                "query size l=" + std::to_string(l) + " outside [2, n]");
  }
  std::vector<int> sorted = items;
  std::sort(sorted.begin(), sorted.end());
  if (sorted.front() < 0 ||
      std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
    throw Error(ErrorCode::kInvalidArgument, "items must be distinct ids >= 0");
  }
}

}  // namespace

DefeatingMachine DefeatingMachine::TotalRanking(std::vector<int> items, int l,
                                                double delta, double eps,
                                                double alpha, Pcg32 rng) {
  ValidateItems(items, l);
  const int n = static_cast<int>(items.size());
  const ConfidenceParams params{alpha, eps, RankingDeltaStar(delta, n)};
  return DefeatingMachine(std::move(items), Mode::kTotalRanking, n, l, params,
                          rng);
}

DefeatingMachine DefeatingMachine::TopK(std::vector<int> items, int k, int l,
                                        double delta, double eps, double alpha,
                                        Pcg32 rng) {
  ValidateItems(items, l);
  const int n = static_cast<int>(items.size());
  if (k < 1 || k > n) {
    throw Error(ErrorCode::kInvalidArgument, "k outside [1, n]");
  }
  const ConfidenceParams params{alpha, eps, SelectionDeltaStar(delta, n, k)};
  return DefeatingMachine(std::move(items), Mode::kTopK, k, l, params, rng);
}

DefeatingMachine::DefeatingMachine(std::vector<int> items, Mode mode, int k,
                                   int l, const ConfidenceParams& params,
                                   Pcg32 rng)
    : items_(std::move(items)),
      mode_(mode),
      k_(k),
      l_(l),
      params_(params),
      rng_(rng) {
  ValidateConfidenceParams(params_);
  win_cap_ = WinCap(params_);
  ratio_base_ = 0.5 - params_.alpha * params_.eps;
  log_offset_ = std::log(kPiSquared / (6.0 * params_.delta_star));

  const int n = size();
  remaining_.resize(n);
  for (int i = 0; i < n; ++i) remaining_[i] = i;
  in_remaining_.assign(n, 1);
  wins_.assign(n, 0);
  defeats_.assign(static_cast<std::size_t>(n) * n, 0);
  beats_in_r_.assign(n, 0);
  beaten_in_r_.assign(n, 0);
  rank_.assign(n, -1);
  lo_ = 0;
  hi_ = n - 1;
  removal_log_.reserve(n);
  pending_local_.reserve(l_);
  pending_items_.reserve(l_);
}

std::span<const int> DefeatingMachine::NextQuery() {
  if (finished_) throw Error(ErrorCode::kNoPendingQuery, "machine finished");
  if (pending_) return pending_items_;

  pending_local_.clear();
  const int r = static_cast<int>(remaining_.size());
  if (r >= l_) {
    // Partial Fisher-Yates; any arrangement of R gives a uniform sample.
    if (scratch_stale_) {
      scratch_.assign(remaining_.begin(), remaining_.end());
      scratch_stale_ = false;
    }
    for (int i = 0; i < l_; ++i) {
      const int j = i + static_cast<int>(rng_.Bounded(static_cast<uint32_t>(r - i)));
      std::swap(scratch_[i], scratch_[j]);
      pending_local_.push_back(scratch_[i]);
    }
  } else {
    // Pad with the most recently removed items.
    pending_local_.assign(remaining_.begin(), remaining_.end());
    for (int t = 0; t < l_ - r; ++t) {
      pending_local_.push_back(removal_log_[removal_log_.size() - 1 - t]);
    }
  }
  pending_items_.clear();
  for (int local : pending_local_) pending_items_.push_back(items_[local]);
  pending_ = true;
  return pending_items_;
}

void DefeatingMachine::SubmitResult(int winner) {
  if (!pending_) {
    throw Error(ErrorCode::kOutOfOrderSubmission, "no query is pending");
  }
  const auto it = std::find(pending_items_.begin(), pending_items_.end(), winner);
  if (it == pending_items_.end()) {
    throw Error(ErrorCode::kWinnerNotInQuery,
                "item " + std::to_string(winner) + " is not in the pending query");
  }
  const int q = pending_local_[it - pending_items_.begin()];
  pending_ = false;
  Ingest(q);
}

void DefeatingMachine::Ingest(int q) {
  ++queries_;
  const int64_t w_q = ++wins_[q];
  // A padded (already removed) winner changes no relation over R.
  if (!in_remaining_[q]) return;

  bool marked = false;
  if (w_q >= win_cap_) {
    for (int j : remaining_) {
      if (j != q && !Defeats(q, j)) {
        Mark(q, j, /*by_cap=*/true);
        marked = true;
      }
    }
  } else {
    for (int j : remaining_) {
      if (j == q || Defeats(j, q) || Defeats(q, j)) continue;
      if (RatioRuleHolds(w_q, wins_[j])) {
        Mark(q, j, /*by_cap=*/false);
        marked = true;
      }
    }
  }
  if (marked) Resolve();
}

bool DefeatingMachine::RatioRuleHolds(int64_t w_winner, int64_t w_other) const {
  const int64_t t = w_winner + w_other;
  const double ratio = static_cast<double>(w_winner) / static_cast<double>(t);
  const double excess = ratio - ratio_base_;
  if (excess <= 0.0) return false;
  // ratio >= b_t  <=>  2t * excess^2 >= log(pi^2 t^2 / (6 delta*)), and the
  // log is at least log_offset_ + 2 ln2 * floor(log2 t). Reject cheaply when
  // clearly below; otherwise evaluate b_t itself.
  const int floor_log2 = std::bit_width(static_cast<uint64_t>(t)) - 1;
  const double lower = log_offset_ + 2.0 * std::numbers::ln2 * floor_log2;
  if (2.0 * static_cast<double>(t) * excess * excess < lower * (1.0 - 1e-9)) {
    return false;
  }
  return ratio >= ConfidenceBound(t, params_);
}

void DefeatingMachine::Mark(int winner, int loser, bool by_cap) {
  defeats_[winner * size() + loser] = 1;
  // Both ends are in R whenever a mark is made.
  ++beats_in_r_[winner];
  ++beaten_in_r_[loser];
  if (record_marks_) {
    marks_.push_back({items_[winner], items_[loser], wins_[winner],
                      wins_[loser], by_cap});
  }
}

void DefeatingMachine::Resolve() {
  while (!finished_) {
    const int r = static_cast<int>(remaining_.size());
    int pick = -1;
    for (int a : remaining_) {
      if (beats_in_r_[a] == r - 1) {
        pick = a;
        break;
      }
    }
    if (pick >= 0) {
      ExtractTop(pick);
      continue;
    }
    const bool may_drop =
        r >= 2 && (mode_ == Mode::kTotalRanking ||
                   r + static_cast<int>(selected_.size()) > k_);
    if (may_drop) {
      for (int a : remaining_) {
        if (beaten_in_r_[a] == r - 1) {
          pick = a;
          break;
        }
      }
    }
    if (pick < 0) return;
    ExtractBottom(pick);
  }
}

void DefeatingMachine::ExtractTop(int item) {
  if (mode_ == Mode::kTotalRanking) {
    rank_[item] = lo_++;
  } else {
    selected_.push_back(item);
  }
  Remove(item);
  UpdateFinished();
}

void DefeatingMachine::ExtractBottom(int item) {
  if (mode_ == Mode::kTotalRanking) rank_[item] = hi_--;
  Remove(item);
  UpdateFinished();
}

void DefeatingMachine::Remove(int item) {
  in_remaining_[item] = 0;
  scratch_stale_ = true;
  remaining_.erase(std::lower_bound(remaining_.begin(), remaining_.end(), item));
  for (int a : remaining_) {
    if (Defeats(a, item)) --beats_in_r_[a];
    if (Defeats(item, a)) --beaten_in_r_[a];
  }
  removal_log_.push_back(item);
}

void DefeatingMachine::UpdateFinished() {
  if (mode_ == Mode::kTotalRanking) {
    if (lo_ < hi_) return;
    // lo == hi leaves exactly one unranked item; it takes rank lo.
    if (remaining_.size() == 1) {
      const int last = remaining_.front();
      rank_[last] = lo_++;
      Remove(last);
    }
    finished_ = true;
    return;
  }
  if (static_cast<int>(selected_.size()) == k_) {
    finished_ = true;
    return;
  }
  if (static_cast<int>(remaining_.size() + selected_.size()) < k_) {
    throw Error(ErrorCode::kInternalInvariantBroken,
                "selection can no longer reach k items");
  }
}

MachineProgress DefeatingMachine::progress() const {
  MachineProgress p;
  p.queries = queries_;
  p.remaining = static_cast<int>(remaining_.size());
  p.selected = static_cast<int>(selected_.size());
  if (mode_ == Mode::kTotalRanking) {
    p.lo = lo_;
    p.hi = hi_;
  }
  return p;
}

Ranking DefeatingMachine::LocalRanking() const {
  if (!finished_ || mode_ != Mode::kTotalRanking) {
    throw Error(ErrorCode::kInvalidArgument, "no finished ranking available");
  }
  return Ranking(rank_);
}

std::vector<int> DefeatingMachine::ResultItems() const {
  if (!finished_) throw Error(ErrorCode::kInvalidArgument, "machine not finished");
  std::vector<int> out;
  if (mode_ == Mode::kTotalRanking) {
    for (int local : LocalRanking().Order()) out.push_back(items_[local]);
  } else {
    for (int local : selected_) out.push_back(items_[local]);
    std::sort(out.begin(), out.end());
  }
  return out;
}

}  // namespace mnlrank
