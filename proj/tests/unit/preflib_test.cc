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

#include "mnlrank/preflib.h"

#include <algorithm>
#include <numeric>
#include <vector>

#include "gmock/gmock.h"
#include "gtest/gtest.h"
#include "unit/test_util.h"

namespace mnlrank {
namespace {

using ::testing::ElementsAre;

constexpr char kFourEntries[] =
    "90,1,3,2,4\n"
    "45,1,2,3,4\n"
    "35,1,3,4,2\n"
    "29,2,3,4,1\n";

TEST(ParsePreflibTest, FourEntries) {
  const PreferenceProfile p = ParsePreflib(kFourEntries);
  EXPECT_EQ(p.universe_size(), 4);
  EXPECT_EQ(p.entries.size(), 4u);
  EXPECT_EQ(p.total_count(), 199);
  EXPECT_THAT(p.labels, ElementsAre(1, 2, 3, 4));
  EXPECT_THAT(p.entries[0].order, ElementsAre(0, 2, 1, 3));
}

TEST(ParsePreflibTest, SinglePair) {
  const PreferenceProfile p = ParsePreflib("1,1,2");
  EXPECT_EQ(p.universe_size(), 2);
  EXPECT_EQ(p.total_count(), 1);
}

TEST(ParsePreflibTest, MalformedEntries) {
  EXPECT_THROWS_CODE(ParsePreflib("5,1,1,2\n"), ErrorCode::kMalformedEntry);
  EXPECT_THROWS_CODE(ParsePreflib("5,1,{2,3}\n"), ErrorCode::kMalformedEntry);
  EXPECT_THROWS_CODE(ParsePreflib("0,1,2\n"), ErrorCode::kMalformedEntry);
  EXPECT_THROWS_CODE(ParsePreflib("5,1,2,3\n4,1,2\n"), ErrorCode::kMalformedEntry);
}

TEST(ParsePreflibTest, EmptyProfile) {
  EXPECT_THROWS_CODE(ParsePreflib("# nothing here\n\n"), ErrorCode::kEmptyProfile);
}

TEST(ParsePreflibTest, ClassicSocHeader) {
  const PreferenceProfile p = ParsePreflib(
      "4\n1,Alien\n2,Brazil\n3,Casablanca\n4,Dune\n199,199,4\n" +
      std::string(kFourEntries));
  EXPECT_EQ(p.total_count(), 199);
  EXPECT_EQ(p.DisplayName(2), "Casablanca");
}

TEST(ParsePreflibTest, ModernFormatWithMetadata) {
  const PreferenceProfile p = ParsePreflib(
      "# FILE NAME: x.soc\n# DATA TYPE: soc\n# ALTERNATIVE NAME 1: Alien\n"
      "# ALTERNATIVE NAME 2: Brazil\n90: 1,2\n10: 2,1\n");
  EXPECT_EQ(p.total_count(), 100);
  EXPECT_EQ(p.DisplayName(0), "Alien");
  EXPECT_THAT(p.entries[1].order, ElementsAre(1, 0));
}

TEST(ParsePreflibTest, SerializeRoundTrip) {
  const PreferenceProfile p = ParsePreflib(
      "# ALTERNATIVE NAME 2: Brazil\n" + std::string(kFourEntries));
  const PreferenceProfile q = ParsePreflib(SerializePreflib(p));
  EXPECT_EQ(q.entries, p.entries);
  EXPECT_EQ(q.labels, p.labels);
  EXPECT_EQ(q.names, p.names);
}

TEST(ParsePreflibTest, NonContiguousLabels) {
  const PreferenceProfile p = ParsePreflib("3,10,30,20\n");
  EXPECT_THAT(p.labels, ElementsAre(10, 20, 30));
  EXPECT_THAT(p.entries[0].order, ElementsAre(0, 2, 1));
}

TEST(RestrictToFirstItemsTest, DropsLaterItems) {
  const PreferenceProfile p = RestrictToFirstItems(ParsePreflib(kFourEntries), 2);
  EXPECT_EQ(p.universe_size(), 2);
  EXPECT_THAT(p.entries[3].order, ElementsAre(1, 0));
  EXPECT_THROWS_CODE(RestrictToFirstItems(p, 3), ErrorCode::kInvalidArgument);
}

TEST(EmpiricalMarginalsTest, ExactCounts) {
  const EmpiricalMarginals m =
      ComputeEmpiricalMarginals(ParsePreflib(kFourEntries), 4);
  EXPECT_EQ(m.total_count, 199);
  EXPECT_THAT(m.win_counts.at(0b0011), ElementsAre(170, 29));
  EXPECT_THAT(m.win_counts.at(0b1110), ElementsAre(74, 125, 0));
  EXPECT_THAT(m.win_counts.at(0b1100), ElementsAre(199, 0));
  // 6 pairs + 4 triples + 1 quadruple.
  EXPECT_EQ(m.win_counts.size(), 11u);
  for (const auto& [mask, counts] : m.win_counts) {
    EXPECT_EQ(std::accumulate(counts.begin(), counts.end(), int64_t{0}), 199);
  }
}

TEST(EmpiricalMarginalsTest, SingleOrderFullUniverse) {
  const EmpiricalMarginals m = ComputeEmpiricalMarginals(ParsePreflib("3,2,3,1\n"), 3);
  EXPECT_THAT(m.Probabilities(0b111), ElementsAre(0.0, 1.0, 0.0));
}

TEST(EmpiricalMarginalsTest, SizeLimit) {
  const EmpiricalMarginals m =
      ComputeEmpiricalMarginals(ParsePreflib(kFourEntries), 2);
  EXPECT_EQ(m.win_counts.size(), 6u);
  EXPECT_THROWS_CODE(m.Probabilities(0b0111), ErrorCode::kUnknownSubset);
}

TEST(PairwiseCountsTest, FourEntries) {
  const PairwiseCounts w = ComputePairwiseCounts(ParsePreflib(kFourEntries));
  const int64_t expected[4][4] = {{0, 170, 170, 170},
                                  {29, 0, 74, 164},
                                  {29, 125, 0, 199},
                                  {29, 35, 0, 0}};
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < 4; ++j) {
      EXPECT_EQ(w.wins(i, j), expected[i][j]) << i << "," << j;
      if (i != j) {
        EXPECT_EQ(w.wins(i, j) + w.wins(j, i), 199);
      }
    }
  }
}

TEST(PairwiseCountsTest, SingleOrder) {
  const PairwiseCounts w = ComputePairwiseCounts(ParsePreflib("1,1,2,3\n"));
  EXPECT_EQ(w.wins(0, 1), 1);
  EXPECT_EQ(w.wins(0, 2), 1);
  EXPECT_EQ(w.wins(1, 2), 1);
  EXPECT_EQ(w.wins(2, 0), 0);
}

TEST(PairwiseCountsTest, AgreesWithPairMarginals) {
  const PreferenceProfile p = ParsePreflib(kFourEntries);
  const PairwiseCounts w = ComputePairwiseCounts(p);
  const EmpiricalMarginals m = ComputeEmpiricalMarginals(p, 2);
  for (int i = 0; i < 4; ++i) {
    for (int j = i + 1; j < 4; ++j) {
      const auto probs = m.Probabilities((1u << i) | (1u << j));
      EXPECT_DOUBLE_EQ(probs[0], static_cast<double>(w.wins(i, j)) /
                                     (w.wins(i, j) + w.wins(j, i)));
    }
  }
}

}  // namespace
}  // namespace mnlrank
