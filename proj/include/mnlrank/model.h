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

// Ground-truth types for the multinomial logit (MNL) choice model and the
// correctness predicates of PAC top-k selection and PAC total ranking.
//
// Items are 0-based indices throughout. Ranks are 0-based positions (rank 0
// is the most preferred).

#ifndef MNLRANK_MODEL_H_
#define MNLRANK_MODEL_H_

#include <cstddef>
#include <span>
#include <vector>

namespace mnlrank {

// Multiplicative slack applied to the ratio-bound (RBC) check.
inline constexpr double kRbcSlack = 1e-12;

// Preference scores normalized so that max(theta) == 1 and every score lies in
// [1/C, 1]. Construct through NormalizeScores() or FromNormalized().
class ScoreVector {
 public:
  // Validates an already-normalized vector. Throws kInvalidArgument unless
  // n >= 2, max == 1 and C > 0; kRbcViolation if some theta < 1/C.
  static ScoreVector FromNormalized(std::vector<double> thetas,
                                    double rbc_constant);

  std::size_t size() const { return thetas_.size(); }
  double theta(int item) const { return thetas_[item]; }
  std::span<const double> thetas() const { return thetas_; }
  double rbc_constant() const { return rbc_constant_; }

  // Score of the k-th largest item (k is 1-based, duplicates counted).
  double KthLargest(int k) const;

 private:
  ScoreVector(std::vector<double> thetas, double rbc_constant)
      : thetas_(std::move(thetas)), rbc_constant_(rbc_constant) {}

  std::vector<double> thetas_;
  double rbc_constant_;
};

// A total order: position(item) is the item's 0-based rank.
class Ranking {
 public:
  // Throws kInvalidRanking unless positions is a permutation of 0..n-1.
  explicit Ranking(std::vector<int> positions);
  // Builds the ranking that lists `order[0]` first, `order[1]` second, ...
  static Ranking FromOrder(std::span<const int> order);

  std::size_t size() const { return positions_.size(); }
  int position(int item) const { return positions_[item]; }
  std::span<const int> positions() const { return positions_; }
  // Items listed from rank 0 to rank n-1.
  std::vector<int> Order() const;

  bool operator==(const Ranking&) const = default;

 private:
  std::vector<int> positions_;
};

// A set of distinct item indices, stored sorted.
class TopKSet {
 public:
  // Throws kInvalidArgument on duplicates or negative indices.
  explicit TopKSet(std::vector<int> items);

  std::size_t size() const { return items_.size(); }
  std::span<const int> items() const { return items_; }
  bool Contains(int item) const;

  bool operator==(const TopKSet&) const = default;

 private:
  std::vector<int> items_;
};

// Rescales raw positive scores by their maximum. Throws kEmptyInput on an
// empty vector, kInvalidArgument on non-positive entries or n < 2, and
// kRbcViolation when the smallest rescaled score falls below 1/C.
ScoreVector NormalizeScores(std::span<const double> raw, double rbc_constant);

// theta_item / sum_{j in subset} theta_j, with repeated entries of `subset`
// counted with multiplicity. Throws kItemNotInSubset.
double MnlChoiceProb(const ScoreVector& scores, std::span<const int> subset,
                     int item);

// The (eps, k)-optimal items {i : theta_i >= theta_[k] - eps}, ascending.
std::vector<int> EpsOptimalSet(const ScoreVector& scores, int k, double eps);

bool IsEpsTopK(const ScoreVector& scores, int k, double eps,
               const TopKSet& candidate);

// True iff position(i) < position(j) implies theta_i >= theta_j - eps.
bool IsEpsRanking(const ScoreVector& scores, double eps, const Ranking& perm);

}  // namespace mnlrank

#endif  // MNLRANK_MODEL_H_
