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
#include <numeric>
#include <vector>

#include "boost/math/distributions/binomial.hpp"
#include "gmock/gmock.h"
#include "gtest/gtest.h"
#include "mnlrank/confidence.h"
#include "mnlrank/oracle.h"
#include "unit/test_util.h"

namespace mnlrank {
namespace {

using ::testing::ElementsAre;

std::vector<int> Iota(int n) {
  std::vector<int> v(n);
  std::iota(v.begin(), v.end(), 0);
  return v;
}

ScoreVector FourScores() {
  return ScoreVector::FromNormalized({1.0, 0.9, 0.89, 0.87}, 10.0);
}

// Structural invariants that must hold between any two steps.
void CheckInvariants(const DefeatingMachine& m) {
  const int n = m.size();
  std::vector<int> seen;
  for (int a : m.remaining()) seen.push_back(a);
  for (int a : m.removal_log()) seen.push_back(a);
  std::sort(seen.begin(), seen.end());
  ASSERT_EQ(seen, Iota(n)) << "remaining and removal log must partition items";
  for (int a = 0; a < n; ++a) ASSERT_FALSE(m.Defeats(a, a));
  if (m.mode() == DefeatingMachine::Mode::kTotalRanking) {
    if (!m.finished()) {
      ASSERT_EQ(m.lo() + (n - 1 - m.hi()),
                static_cast<int>(m.removal_log().size()));
    }
  } else {
    ASSERT_LE(static_cast<int>(m.selected().size()), m.k());
  }
  if (!m.finished()) {
    for (int a : m.remaining()) ASSERT_LE(m.wins(a), m.win_cap());
  }
}

TEST(DefeatingMachineTest, TwoItemsConstantWinner) {
  // alpha = 1/44, eps = delta = 0.05: the ratio rule fires at the 22nd
  // answer (tests/oracles/derive_expected.py), far below the cap.
  auto m = DefeatingMachine::TotalRanking({0, 1}, 2, 0.05, 0.05, 1.0 / 44.0,
                                          Pcg32(1, kAlgorithmStream));
  EXPECT_EQ(m.win_cap(), 792666);
  int answers = 0;
  while (!m.finished()) {
    EXPECT_THAT(testing::ToVector(m.NextQuery()), ::testing::UnorderedElementsAre(0, 1));
    m.SubmitResult(0);
    ++answers;
  }
  EXPECT_EQ(answers, 22);
  EXPECT_THAT(m.ResultItems(), ElementsAre(0, 1));
}

TEST(DefeatingMachineTest, LargeEpsAnyOutputIsValid) {
  for (uint64_t seed = 0; seed < 20; ++seed) {
    auto m = DefeatingMachine::TotalRanking(Iota(4), 2, 0.05, 0.5, 1.0 / 44.0,
                                            Pcg32(seed, kAlgorithmStream));
    SyntheticOracle oracle(FourScores());
    Pcg32 oracle_rng(seed, kOracleStream);
    RunToCompletion(m, oracle, oracle_rng);
    EXPECT_TRUE(IsEpsRanking(FourScores(), 0.5, m.LocalRanking()));
  }
}

TEST(DefeatingMachineTest, InvariantsHoldThroughoutRankingRun) {
  Pcg32 instance_rng(3, kInstanceStream);
  const ScoreVector scores = BuildSyntheticInstance(8, 10.0, instance_rng);
  for (int l : {2, 3, 8}) {
    auto m = DefeatingMachine::TotalRanking(Iota(8), l, 0.1, 0.2,
                                            DefaultAlpha(l, 10),
                                            Pcg32(l, kAlgorithmStream));
    SyntheticOracle oracle(scores);
    Pcg32 oracle_rng(l, kOracleStream);
    while (!m.finished()) {
      m.Step(oracle, oracle_rng);
      CheckInvariants(m);
      if (HasFatalFailure()) return;
    }
    const std::vector<int> order = m.ResultItems();
    std::vector<int> sorted = order;
    std::sort(sorted.begin(), sorted.end());
    EXPECT_EQ(sorted, Iota(8));
    const int64_t bound = 4 * (8 + l) * m.win_cap();
    EXPECT_LE(oracle.stats().query_count, bound);
  }
}

TEST(DefeatingMachineTest, InvariantsHoldThroughoutSelectionRun) {
  Pcg32 instance_rng(4, kInstanceStream);
  const ScoreVector scores = BuildSyntheticInstance(9, 10.0, instance_rng);
  for (int k : {1, 3, 4}) {
    auto m = DefeatingMachine::TopK(Iota(9), k, 3, 0.1, 0.2, DefaultAlpha(3, 10),
                                    Pcg32(k, kAlgorithmStream));
    SyntheticOracle oracle(scores);
    Pcg32 oracle_rng(k, kOracleStream);
    while (!m.finished()) {
      m.Step(oracle, oracle_rng);
      CheckInvariants(m);
      if (HasFatalFailure()) return;
    }
    EXPECT_EQ(static_cast<int>(m.ResultItems().size()), k);
  }
}

TEST(DefeatingMachineTest, SelectingEverything) {
  auto m = DefeatingMachine::TopK(Iota(4), 4, 2, 0.1, 0.2, 1.0 / 44.0,
                                  Pcg32(5, kAlgorithmStream));
  SyntheticOracle oracle(FourScores());
  Pcg32 oracle_rng(5, kOracleStream);
  RunToCompletion(m, oracle, oracle_rng);
  EXPECT_THAT(m.ResultItems(), ElementsAre(0, 1, 2, 3));
}

// Three remaining items with k = 3 must all be selected even though one of
// them may be beaten by the other two.
TEST(DefeatingMachineTest, NeverDiscardsBelowK) {
  const auto scores = ScoreVector::FromNormalized({1.0, 0.5, 0.1}, 10.0);
  for (uint64_t seed = 0; seed < 10; ++seed) {
    auto m = DefeatingMachine::TopK(Iota(3), 3, 2, 0.1, 0.3, DefaultAlpha(2, 10),
                                    Pcg32(seed, kAlgorithmStream));
    SyntheticOracle oracle(scores);
    Pcg32 oracle_rng(seed, kOracleStream);
    RunToCompletion(m, oracle, oracle_rng);
    EXPECT_THAT(m.ResultItems(), ElementsAre(0, 1, 2));
  }
}

TEST(DefeatingMachineTest, RatioMarksSatisfyBoundWhenMade) {
  Pcg32 instance_rng(6, kInstanceStream);
  int ratio_marks = 0;
  for (uint64_t seed = 0; seed < 10; ++seed) {
    const ScoreVector scores = BuildSyntheticInstance(6, 10.0, instance_rng);
    auto m = seed % 2 == 0
                 ? DefeatingMachine::TotalRanking(Iota(6), 2, 0.1, 0.2,
                                                  DefaultAlpha(2, 10),
                                                  Pcg32(seed, kAlgorithmStream))
                 : DefeatingMachine::TopK(Iota(6), 2, 3, 0.1, 0.2,
                                          DefaultAlpha(3, 10),
                                          Pcg32(seed, kAlgorithmStream));
    m.set_record_marks(true);
    SyntheticOracle oracle(scores);
    Pcg32 oracle_rng(seed, kOracleStream);
    RunToCompletion(m, oracle, oracle_rng);
    for (const DefeatMark& mark : m.marks()) {
      if (mark.by_cap) {
        EXPECT_GE(mark.winner_wins, m.win_cap());
        continue;
      }
      ++ratio_marks;
      const int64_t t = mark.winner_wins + mark.loser_wins;
      EXPECT_GE(static_cast<double>(mark.winner_wins) / t,
                ConfidenceBound(t, m.params()));
    }
  }
  EXPECT_GT(ratio_marks, 0);
}

TEST(DefeatingMachineTest, SplitAndFusedRunsAgree) {
  Pcg32 instance_rng(7, kInstanceStream);
  const ScoreVector scores = BuildSyntheticInstance(7, 10.0, instance_rng);
  const auto make = [] {
    return DefeatingMachine::TotalRanking(Iota(7), 3, 0.1, 0.2, DefaultAlpha(3, 10),
                                          Pcg32(7, kAlgorithmStream));
  };
  DefeatingMachine fused = make();
  SyntheticOracle fused_oracle(scores);
  Pcg32 fused_rng(7, kOracleStream);
  RunToCompletion(fused, fused_oracle, fused_rng);

  DefeatingMachine split = make();
  SyntheticOracle split_oracle(scores);
  Pcg32 split_rng(7, kOracleStream);
  while (!split.finished()) {
    const std::vector<int> query(split.NextQuery().begin(), split.NextQuery().end());
    // Asking again must not redraw.
    EXPECT_TRUE(std::equal(query.begin(), query.end(), split.NextQuery().begin()));
    split.SubmitResult(split_oracle.Query(query, split_rng));
  }
  EXPECT_EQ(split.queries(), fused.queries());
  EXPECT_EQ(split.ResultItems(), fused.ResultItems());
  EXPECT_TRUE(std::equal(split.removal_log().begin(), split.removal_log().end(),
                         fused.removal_log().begin()));
}

TEST(DefeatingMachineTest, ProtocolErrors) {
  auto m = DefeatingMachine::TotalRanking({4, 9, 2}, 2, 0.1, 0.5, 1.0 / 44.0,
                                          Pcg32(8, kAlgorithmStream));
  EXPECT_THROWS_CODE(m.SubmitResult(4), ErrorCode::kOutOfOrderSubmission);
  const std::vector<int> query(m.NextQuery().begin(), m.NextQuery().end());
  for (int item : query) EXPECT_THAT(item, ::testing::AnyOf(4, 9, 2));
  int outsider = 4 + 9 + 2;
  for (int item : query) outsider -= item;
  EXPECT_THROWS_CODE(m.SubmitResult(outsider), ErrorCode::kWinnerNotInQuery);
  EXPECT_THROWS_CODE(m.ResultItems(), ErrorCode::kInvalidArgument);
  while (!m.finished()) m.SubmitResult(m.NextQuery()[0]);
  EXPECT_THROWS_CODE(m.NextQuery(), ErrorCode::kNoPendingQuery);
  EXPECT_THROWS_CODE(m.SubmitResult(4), ErrorCode::kOutOfOrderSubmission);
  EXPECT_EQ(m.ResultItems().size(), 3u);
}

TEST(DefeatingMachineTest, ConstructionErrors) {
  const Pcg32 rng(1, 1);
  EXPECT_THROWS_CODE(DefeatingMachine::TotalRanking({0}, 2, 0.1, 0.1, 0.02, rng),
                     ErrorCode::kInvalidArgument);
  EXPECT_THROWS_CODE(DefeatingMachine::TotalRanking({0, 1}, 3, 0.1, 0.1, 0.02, rng),
                     ErrorCode::kInvalidArgument);
  EXPECT_THROWS_CODE(DefeatingMachine::TotalRanking({0, 0}, 2, 0.1, 0.1, 0.02, rng),
                     ErrorCode::kInvalidArgument);
  EXPECT_THROWS_CODE(DefeatingMachine::TopK({0, 1, 2}, 4, 2, 0.1, 0.1, 0.02, rng),
                     ErrorCode::kInvalidArgument);
  EXPECT_THROWS_CODE(DefeatingMachine::TotalRanking({0, 1}, 2, 0.1, 0.1, 0.5, rng),
                     ErrorCode::kInvalidArgument);
}

TEST(DefeatingMachineTest, BudgetGuard) {
  auto m = DefeatingMachine::TotalRanking(Iota(5), 2, 0.1, 0.05, 1.0 / 44.0,
                                          Pcg32(9, kAlgorithmStream));
  SyntheticOracle oracle(ScoreVector::FromNormalized({1, 1, 1, 1, 1}, 10.0));
  Pcg32 oracle_rng(9, kOracleStream);
  EXPECT_THROWS_CODE(RunToCompletion(m, oracle, oracle_rng, 1000),
                     ErrorCode::kBudgetExhausted);
  EXPECT_EQ(oracle.stats().query_count, 1000);
}

// Selection on the four scores with k = 2, eps = 0.02: the answer must avoid
// item 3 in at least 90 of 100 seeded runs.
TEST(DefeatingMachineTest, SelectionOnFourScores) {
  int good = 0;
  for (uint64_t seed = 0; seed < 100; ++seed) {
    auto m = DefeatingMachine::TopK(Iota(4), 2, 2, 0.05, 0.02, 1.0 / 44.0,
                                    Pcg32(seed, kAlgorithmStream));
    SyntheticOracle oracle(FourScores());
    Pcg32 oracle_rng(seed, kOracleStream);
    RunToCompletion(m, oracle, oracle_rng);
    good += IsEpsTopK(FourScores(), 2, 0.02, TopKSet(m.ResultItems()));
  }
  EXPECT_GE(good, 90);
}

// With kappa = 1 the selected set holds an eps-best item except with
// probability at most 2(n-1) delta / (2k(n-1)+1). One-sided binomial test at
// level 0.001 over 100 runs.
TEST(DefeatingMachineTest, SelectionKeepsAnEpsBestItem) {
  constexpr int kN = 6;
  constexpr int kK = 2;
  constexpr double kDelta = 0.1;
  constexpr double kEps = 0.2;
  Pcg32 instance_rng(10, kInstanceStream);
  int misses = 0;
  for (uint64_t seed = 0; seed < 100; ++seed) {
    const ScoreVector scores = BuildSyntheticInstance(kN, 10.0, instance_rng);
    auto m = DefeatingMachine::TopK(Iota(kN), kK, 2, kDelta, kEps,
                                    DefaultAlpha(2, 10), Pcg32(seed, kAlgorithmStream));
    SyntheticOracle oracle(scores);
    Pcg32 oracle_rng(seed, kOracleStream);
    RunToCompletion(m, oracle, oracle_rng);
    double best = 0.0;
    for (int item : m.ResultItems()) best = std::max(best, scores.theta(item));
    misses += best < 1.0 - kEps;
  }
  const double p0 = 2.0 * (kN - 1) * kDelta / (2.0 * kK * (kN - 1) + 1.0);
  const boost::math::binomial dist(100, p0);
  const double p_value =
      misses == 0 ? 1.0 : boost::math::cdf(boost::math::complement(dist, misses - 1));
  EXPECT_GT(p_value, 0.001) << misses << " misses";
}

}  // namespace
}  // namespace mnlrank
