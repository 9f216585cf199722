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

#include "mnlrank/model.h"

#include <algorithm>
#include <functional>
#include <string>

#include "mnlrank/error.h"

namespace mnlrank {

ScoreVector ScoreVector::FromNormalized(std::vector<double> thetas,
                                        double rbc_constant) {
  if (thetas.size() < 2) {
    throw Error(ErrorCode::kInvalidArgument, "score vector needs n >= 2");
  }
  if (!(rbc_constant > 0.0)) {
    throw Error(ErrorCode::kInvalidArgument, "RBC constant must be positive");
  }
  const auto [min_it, max_it] = std::minmax_element(thetas.begin(), thetas.end());
  if (*max_it != 1.0) {
    throw Error(ErrorCode::kInvalidArgument, "scores must have max exactly 1");
  }
  if (*min_it * rbc_constant * (1.0 + kRbcSlack) < 1.0) {
    throw Error(ErrorCode::kRbcViolation,
                "score " + std::to_string(*min_it) + " below 1/C for C=" +
                    std::to_string(rbc_constant));
  }
  return ScoreVector(std::move(thetas), rbc_constant);
}

double ScoreVector::KthLargest(int k) const {
  std::vector<double> sorted = thetas_;
  std::nth_element(sorted.begin(), sorted.begin() + (k - 1), sorted.end(),
                   std::greater<>());
  return sorted[k - 1];
}

Ranking::Ranking(std::vector<int> positions) : positions_(std::move(positions)) {
  std::vector<char> seen(positions_.size(), 0);
  for (int p : positions_) {
    if (p < 0 || p >= static_cast<int>(positions_.size()) || seen[p]) {
      throw Error(ErrorCode::kInvalidRanking, "positions are not a bijection");
    }
    seen[p] = 1;
  }
}

Ranking Ranking::FromOrder(std::span<const int> order) {
  std::vector<int> positions(order.size(), -1);
  for (std::size_t r = 0; r < order.size(); ++r) {
    const int item = order[r];
    if (item < 0 || item >= static_cast<int>(order.size()) ||
        positions[item] != -1) {
      throw Error(ErrorCode::kInvalidRanking, "order is not a permutation");
    }
    positions[item] = static_cast<int>(r);
  }
  return Ranking(std::move(positions));
}

std::vector<int> Ranking::Order() const {
  std::vector<int> order(positions_.size());
  for (std::size_t i = 0; i < positions_.size(); ++i) {
    order[positions_[i]] = static_cast<int>(i);
  }
  return order;
}

TopKSet::TopKSet(std::vector<int> items) : items_(std::move(items)) {
  std::sort(items_.begin(), items_.end());
  if (std::adjacent_find(items_.begin(), items_.end()) != items_.end()) {
    throw Error(ErrorCode::kInvalidArgument, "duplicate item in top-k set");
  }
  if (!items_.empty() && items_.front() < 0) {
    throw Error(ErrorCode::kInvalidArgument, "negative item index");
  }
}

bool TopKSet::Contains(int item) const {
  return std::binary_search(items_.begin(), items_.end(), item);
}

ScoreVector NormalizeScores(std::span<const double> raw, double rbc_constant) {
  if (raw.empty()) throw Error(ErrorCode::kEmptyInput, "no scores given");
  for (double x : raw) {
    if (!(x > 0.0)) {
      throw Error(ErrorCode::kInvalidArgument, "scores must be positive");
    }
  }
  const double max = *std::max_element(raw.begin(), raw.end());
  std::vector<double> thetas(raw.size());
  std::transform(raw.begin(), raw.end(), thetas.begin(),
                 [max](double x) { return x / max; });
  return ScoreVector::FromNormalized(std::move(thetas), rbc_constant);
}

double MnlChoiceProb(const ScoreVector& scores, std::span<const int> subset,
                     int item) {
  double total = 0.0;
  double own = 0.0;
  for (int j : subset) {
    total += scores.theta(j);
    if (j == item) own += scores.theta(j);
  }
  if (own == 0.0) {
    throw Error(ErrorCode::kItemNotInSubset,
                "item " + std::to_string(item) + " not in queried subset");
  }
  return own / total;
}

std::vector<int> EpsOptimalSet(const ScoreVector& scores, int k, double eps) {
  if (k < 1 || k > static_cast<int>(scores.size())) {
    throw Error(ErrorCode::kInvalidArgument, "k out of range");
  }
  const double threshold = scores.KthLargest(k) - eps;
  std::vector<int> out;
  for (int i = 0; i < static_cast<int>(scores.size()); ++i) {
    if (scores.theta(i) >= threshold) out.push_back(i);
  }
  return out;
}

bool IsEpsTopK(const ScoreVector& scores, int k, double eps,
               const TopKSet& candidate) {
  if (static_cast<int>(candidate.size()) != k) return false;
  const double threshold = scores.KthLargest(k) - eps;
  for (int i : candidate.items()) {
    if (i >= static_cast<int>(scores.size())) return false;
    if (scores.theta(i) < threshold) return false;
  }
  return true;
}

bool IsEpsRanking(const ScoreVector& scores, double eps, const Ranking& perm) {
  if (perm.size() != scores.size()) return false;
  // Walking the order from the bottom, every item must be within eps of the
  // best score seen below it.
  const std::vector<int> order = perm.Order();
  double best_below = -1.0;
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    const double theta = scores.theta(*it);
    if (theta < best_below - eps) return false;
    best_below = std::max(best_below, theta);
  }
  return true;
}

}  // namespace mnlrank
