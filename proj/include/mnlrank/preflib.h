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

// Strict-order preference data in PrefLib style.
//
// Accepted entry lines are "count,i1,i2,...,iu" (classic SOC) or
// "count: i1,i2,...,iu" (current PrefLib). Comment lines, candidate-name
// lines and the classic header block are skipped; "# ALTERNATIVE NAME i: x"
// comments and classic "i,name" header lines supply display names.

#ifndef MNLRANK_PREFLIB_H_
#define MNLRANK_PREFLIB_H_

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "mnlrank/oracle.h"

namespace mnlrank {

struct ProfileEntry {
  int64_t count = 0;
  std::vector<int> order;  // item indices, most preferred first

  bool operator==(const ProfileEntry&) const = default;
};

struct PreferenceProfile {
  std::vector<int> labels;         // dataset label of item i, ascending
  std::vector<std::string> names;  // display name of item i, may be empty
  std::vector<ProfileEntry> entries;

  int universe_size() const { return static_cast<int>(labels.size()); }
  int64_t total_count() const;
  // Display name if present, otherwise the dataset label.
  std::string DisplayName(int item) const;
};

// Throws kMalformedEntry for entries that are not strict orders over one
// common universe (repeats, ties, zero counts, mismatched item sets) and
// kEmptyProfile when no entry is found.
PreferenceProfile ParsePreflib(std::string_view text);
PreferenceProfile ReadPreflibFile(const std::string& path);

// Writes one "count,label,..." line per entry, preceded by name comments.
std::string SerializePreflib(const PreferenceProfile& profile);

// Keeps items 0..n-1, dropping the others from every order. Throws
// kInvalidArgument when the universe has fewer than n items.
PreferenceProfile RestrictToFirstItems(const PreferenceProfile& profile, int n);

// Exact win counts: for each subset S with 2 <= |S| <= min(max_subset_size, u),
// the count-weighted number of orders in which each member beats the rest of
// S. Throws kInvalidArgument for universes above 20 items.
EmpiricalMarginals ComputeEmpiricalMarginals(const PreferenceProfile& profile,
                                             int max_subset_size);

class PairwiseCounts {
 public:
  explicit PairwiseCounts(int n) : n_(n), wins_(static_cast<std::size_t>(n) * n, 0) {}

  int size() const { return n_; }
  // Count-weighted number of times i was preferred to j.
  int64_t wins(int i, int j) const { return wins_[i * n_ + j]; }
  void Add(int i, int j, int64_t count) { wins_[i * n_ + j] += count; }

 private:
  int n_;
  std::vector<int64_t> wins_;
};

PairwiseCounts ComputePairwiseCounts(const PreferenceProfile& profile);

}  // namespace mnlrank

#endif  // MNLRANK_PREFLIB_H_
