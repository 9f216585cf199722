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

#include "mnlrank/confidence.h"

#include <cmath>

#include "gtest/gtest.h"
#include "unit/test_util.h"

namespace mnlrank {
namespace {

// alpha * eps = 0.01.
ConfidenceParams Params(double delta_star) { return {0.2, 0.05, delta_star}; }

// Reference values from tests/oracles/derive_expected.py (50-digit mpmath).
TEST(ConfidenceBoundTest, ReferenceValues) {
  EXPECT_NEAR(ConfidenceBound(1, Params(1e-3)), 2.4142473309651338, 1e-12);
  EXPECT_NEAR(ConfidenceBound(1'000'000, Params(1e-3)), 0.49418547946461223,
              1e-12);
}

TEST(ConfidenceBoundTest, DecreasesTowardHalfMinusAlphaEps) {
  const ConfidenceParams p = Params(1e-3);
  double previous = ConfidenceBound(2, p);
  for (int64_t t = 4; t < (int64_t{1} << 40); t *= 2) {
    const double b = ConfidenceBound(t, p);
    EXPECT_LT(b, previous) << t;
    EXPECT_GT(b, 0.49);
    previous = b;
  }
  EXPECT_NEAR(previous, 0.49, 1e-5);
}

TEST(WinCapTest, ReferenceValue) {
  // ceil(ln(1000) / (4 * 0.05^2 * 0.05^2)).
  EXPECT_EQ(WinCap({0.05, 0.05, 1e-3}), 276311);
}

TEST(WinCapTest, DeltaStarOneGivesMinimum) {
  EXPECT_EQ(WinCap({0.05, 0.05, 1.0}), 1);
}

TEST(WinCapTest, DoublingEpsQuartersCap) {
  const int64_t a = WinCap({1.0 / 44.0, 0.05, 1e-3});
  const int64_t b = WinCap({1.0 / 44.0, 0.1, 1e-3});
  EXPECT_NEAR(static_cast<double>(a) / b, 4.0, 4.0 / b);
}

TEST(WinCapTest, Overflow) {
  EXPECT_THROWS_CODE(WinCap({1e-9, 1e-6, 1e-3}), ErrorCode::kCapTooLarge);
}

TEST(ConfidenceParamsTest, RejectsOutOfRange) {
  EXPECT_THROWS_CODE(ValidateConfidenceParams({0.5, 0.05, 0.01}),
                     ErrorCode::kInvalidArgument);
  EXPECT_THROWS_CODE(ValidateConfidenceParams({0.1, 0.0, 0.01}),
                     ErrorCode::kInvalidArgument);
  EXPECT_THROWS_CODE(ValidateConfidenceParams({0.1, 0.05, 0.0}),
                     ErrorCode::kInvalidArgument);
}

TEST(DefaultAlphaTest, Values) {
  EXPECT_DOUBLE_EQ(DefaultAlpha(2, 10), 1.0 / 44.0);
  EXPECT_LT(DefaultAlpha(1'000'000, 10), 0.25);
  EXPECT_NEAR(DefaultAlpha(1'000'000, 10), 0.25, 1e-5);
  EXPECT_LT(DefaultAlpha(2, 10), DefaultAlpha(3, 10));
  EXPECT_GT(DefaultAlpha(3, 2), DefaultAlpha(3, 10));
}

TEST(DeltaStarTest, Values) {
  EXPECT_DOUBLE_EQ(RankingDeltaStar(0.05, 10), 0.05 / 91.0);
  EXPECT_DOUBLE_EQ(SelectionDeltaStar(0.05, 10, 2), 0.05 / 37.0);
}

TEST(TournamentScheduleTest, FirstRound) {
  const RoundSchedule s = TournamentSchedule(1, 0.05, 0.05);
  EXPECT_DOUBLE_EQ(s.delta, 6.0 * 0.05 / kPiSquared);
  EXPECT_DOUBLE_EQ(s.eps, 0.05 / 5.0);
}

TEST(TournamentGroupSizeTest, SpotValues) {
  EXPECT_EQ(TournamentGroupSize(10, 2, 5), 6);
  EXPECT_EQ(TournamentGroupSize(10, 2, 2), 4);
  EXPECT_EQ(TournamentGroupSize(10, 5, 10), 10);
}

}  // namespace
}  // namespace mnlrank
