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

#include "mnlrank/experiment.h"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include "gmock/gmock.h"
#include "gtest/gtest.h"
#include "mnlrank/confidence.h"
#include "unit/test_util.h"

namespace mnlrank {
namespace {

ExperimentConfig FastConfig(BenchAlgorithm algorithm) {
  ExperimentConfig c;
  c.algorithm = algorithm;
  c.n = 6;
  c.k = 2;
  c.l = 2;
  c.eps = 0.2;
  c.delta = 0.1;
  c.trials = 8;
  c.base_seed = 99;
  return c;
}

TEST(ExperimentConfigTest, ParsesJsonAndKeepsDefaults) {
  const ExperimentConfig c = ParseExperimentConfig(
      R"({"algorithm":"tnks","oracle":"bandit-reduction","n":12,"k":3,"l":4,)"
      R"("eps":0.1,"C":5,"alpha":"2xdefault","trials":7,"seed":5,"budget":1000})");
  EXPECT_EQ(c.algorithm, BenchAlgorithm::kTnks);
  EXPECT_EQ(c.oracle, OracleKind::kBanditReduction);
  EXPECT_EQ(c.n, 12);
  EXPECT_EQ(c.k, 3);
  EXPECT_EQ(c.l, 4);
  EXPECT_EQ(c.eps, 0.1);
  EXPECT_EQ(c.delta, 0.05);
  EXPECT_DOUBLE_EQ(c.ResolvedAlpha(), 2.0 * DefaultAlpha(4, 5));
  EXPECT_EQ(c.trials, 7);
  EXPECT_EQ(c.base_seed, 5u);
  EXPECT_EQ(c.budget, 1000);

  const ExperimentConfig round_trip = ParseExperimentConfig(ExperimentConfigToJson(c));
  EXPECT_EQ(ExperimentConfigToJson(round_trip), ExperimentConfigToJson(c));
}

TEST(ExperimentConfigTest, EmpiricalOracleId) {
  const ExperimentConfig c =
      ParseExperimentConfig(R"({"oracle":"empirical:/tmp/x.soc"})");
  EXPECT_EQ(c.oracle, OracleKind::kEmpirical);
  EXPECT_EQ(c.empirical_path, "/tmp/x.soc");
}

TEST(ExperimentConfigTest, Errors) {
  EXPECT_THROWS_CODE(ParseExperimentConfig("{"), ErrorCode::kInvalidConfig);
  EXPECT_THROWS_CODE(ParseExperimentConfig(R"({"bogus":1})"),
                     ErrorCode::kInvalidConfig);
  EXPECT_THROWS_CODE(ParseExperimentConfig(R"({"n":"ten"})"),
                     ErrorCode::kInvalidConfig);
  EXPECT_THROWS_CODE(ParseExperimentConfig(R"({"algorithm":"quicksort"})"),
                     ErrorCode::kInvalidConfig);
  EXPECT_THROWS_CODE(ParseExperimentConfig(R"({"oracle":"magic"})"),
                     ErrorCode::kInvalidConfig);

  ExperimentConfig c = FastConfig(BenchAlgorithm::kTnks);
  c.k = 4;
  EXPECT_THROWS_CODE(c.Validate(), ErrorCode::kInvalidConfig);
  c = FastConfig(BenchAlgorithm::kPdtr);
  c.l = 7;
  EXPECT_THROWS_CODE(c.Validate(), ErrorCode::kInvalidConfig);
  c = FastConfig(BenchAlgorithm::kPdtr);
  c.rbc_constant = 1.0;
  EXPECT_THROWS_CODE(c.Validate(), ErrorCode::kInvalidConfig);
  EXPECT_THROWS_CODE(ApplyAxisValue(c, "colour", "1"), ErrorCode::kInvalidConfig);
  EXPECT_THROWS_CODE(ApplyAxisValue(c, "n", "1.5"), ErrorCode::kInvalidConfig);
}

TEST(ExperimentConfigTest, WarnsOnlyAboveDefaultAlpha) {
  ExperimentConfig c = FastConfig(BenchAlgorithm::kPdtr);
  EXPECT_TRUE(c.Warnings().empty());
  ApplyAxisValue(c, "alpha", "4xdefault");
  EXPECT_THAT(c.Warnings(), ::testing::SizeIs(1));
  EXPECT_NO_THROW(c.Validate());
}

TEST(TrialCsvTest, HeaderIsExact) {
  EXPECT_EQ(TrialCsvHeader(),
            "trial,seed,algorithm,n,k,l,eps,delta,C,alpha,queries,correct,"
            "wall_time_s");
  EXPECT_EQ(AggregateCsvHeader(),
            "axis_value,trials,success_rate,mean_queries,std_queries");
}

TEST(TrialCsvTest, RowShape) {
  TrialReport r;
  r.trial = 3;
  r.seed = 96;
  r.algorithm = "pdtr";
  r.n = 10;
  r.l = 2;
  r.eps = 0.05;
  r.delta = 0.05;
  r.rbc_constant = 10;
  r.alpha = 0.25;
  r.queries = 1234;
  r.correct = true;
  r.wall_time_s = 0.5;
  EXPECT_EQ(TrialCsvRow(r), "3,96,pdtr,10,0,2,0.05,0.05,10,0.25,1234,1,0.5");
}

TEST(ExperimentTest, TrialSeedIsBaseXorIndex) {
  const Experiment e(FastConfig(BenchAlgorithm::kPdtr));
  EXPECT_EQ(e.RunTrial(5).seed, 99u ^ 5u);
}

TEST(ExperimentTest, RerunIsIdentical) {
  for (auto a : {BenchAlgorithm::kPdtr, BenchAlgorithm::kPdks, BenchAlgorithm::kTnks,
                 BenchAlgorithm::kBordaTopK, BenchAlgorithm::kBordaRanking}) {
    ExperimentConfig c = FastConfig(a);
    c.budget = 2'000'000;
    const Experiment e(c);
    const TrialReport first = e.RunTrial(3);
    const TrialReport second = e.RunTrial(3);
    EXPECT_EQ(CanonicalTrialRecord(first), CanonicalTrialRecord(second));
    EXPECT_FALSE(first.answer.empty()) << first.error;
  }
}

TEST(ExperimentTest, AlgorithmsShareInstances) {
  const Experiment a(FastConfig(BenchAlgorithm::kPdtr));
  const Experiment b(FastConfig(BenchAlgorithm::kTnks));
  const ScoreVector x = a.GroundTruth(4);
  const ScoreVector y = b.GroundTruth(4);
  EXPECT_TRUE(std::equal(x.thetas().begin(), x.thetas().end(), y.thetas().begin()));
}

TEST(ExperimentTest, BudgetOfOne) {
  ExperimentConfig c = FastConfig(BenchAlgorithm::kPdtr);
  c.budget = 1;
  const TrialReport r = Experiment(c).RunTrial(0);
  EXPECT_FALSE(r.correct);
  EXPECT_EQ(r.error, "budget_exhausted");
  EXPECT_LE(r.queries, 1);

  c.algorithm = BenchAlgorithm::kBordaRanking;
  const TrialReport b = Experiment(c).RunTrial(0);
  EXPECT_TRUE(b.error.empty());
  EXPECT_EQ(b.queries, 1);
}

TEST(ExperimentTest, ParallelMatchesSerial) {
  ExperimentConfig c = FastConfig(BenchAlgorithm::kTnks);
  c.trials = 12;
  const Experiment e(c);
  const auto serial = e.RunAll(1);
  const auto parallel = e.RunAll(4);
  ASSERT_EQ(serial.size(), parallel.size());
  for (std::size_t i = 0; i < serial.size(); ++i) {
    EXPECT_EQ(CanonicalTrialRecord(serial[i]), CanonicalTrialRecord(parallel[i]));
    EXPECT_EQ(serial[i].trial, static_cast<int>(i));
  }
}

TEST(ExperimentTest, BanditReductionCountsPulls) {
  ExperimentConfig c = FastConfig(BenchAlgorithm::kPdks);
  c.oracle = OracleKind::kBanditReduction;
  const TrialReport r = Experiment(c).RunTrial(1);
  EXPECT_TRUE(r.error.empty()) << r.error;
  EXPECT_GE(r.internal_samples, r.queries);
  EXPECT_LE(static_cast<double>(r.internal_samples) / r.queries, 10.0);
}

TEST(ExperimentTest, EmpiricalOracleUsesFittedTruth) {
  const auto path = std::filesystem::temp_directory_path() / "mnlrank_exp_test.soc";
  {
    std::ofstream out(path);
    out << "90,1,3,2,4\n45,1,2,3,4\n35,1,3,4,2\n29,2,3,4,1\n";
  }
  ExperimentConfig c = FastConfig(BenchAlgorithm::kPdtr);
  c.oracle = OracleKind::kEmpirical;
  c.empirical_path = path.string();
  c.n = 4;
  c.l = 3;
  const Experiment e(c);
  const ScoreVector truth = e.GroundTruth(0);
  EXPECT_EQ(truth.theta(0), 1.0);
  const TrialReport r = e.RunTrial(0);
  EXPECT_TRUE(r.error.empty() || r.error == "budget_exhausted") << r.error;
  if (r.error.empty()) {
    EXPECT_EQ(r.answer.size(), 4u);
  }

  c.n = 5;
  EXPECT_THROWS_CODE(Experiment{c}, ErrorCode::kInvalidConfig);
  std::filesystem::remove(path);
}

TEST(AggregateTest, MatchesHandComputation) {
  std::vector<TrialReport> reports(3);
  reports[0].queries = 10;
  reports[0].correct = true;
  reports[1].queries = 20;
  reports[1].correct = false;
  reports[2].queries = 30;
  reports[2].correct = true;
  const AggregateRow row = Aggregate("x", reports);
  EXPECT_EQ(row.trials, 3);
  EXPECT_DOUBLE_EQ(row.success_rate, 2.0 / 3.0);
  EXPECT_DOUBLE_EQ(row.mean_queries, 20.0);
  EXPECT_DOUBLE_EQ(row.std_queries, 10.0);
  EXPECT_EQ(AggregateCsvRow(row), "x,3,0.6666666666666666,20,10");
}

TEST(RunSweepTest, SingleValueEqualsTrialAggregation) {
  const ExperimentConfig c = FastConfig(BenchAlgorithm::kPdks);
  const std::vector<std::string> values = {"3"};
  const SweepResult sweep = RunSweep(c, "l", values);
  ExperimentConfig direct = c;
  direct.l = 3;
  const auto reports = Experiment(direct).RunAll();
  const AggregateRow row = Aggregate("3", reports);
  ASSERT_EQ(sweep.rows.size(), 1u);
  EXPECT_EQ(AggregateCsvRow(sweep.rows[0]), AggregateCsvRow(row));
}

// Smaller alpha: more queries and no loss of accuracy.
TEST(RunSweepTest, AlphaTradeOff) {
  ExperimentConfig c = FastConfig(BenchAlgorithm::kPdtr);
  c.trials = 100;
  const std::vector<std::string> values = {"4xdefault", "2xdefault", "default"};
  const SweepResult sweep = RunSweep(c, "alpha", values);
  ASSERT_EQ(sweep.rows.size(), 3u);
  for (int i = 1; i < 3; ++i) {
    EXPECT_GT(sweep.rows[i].mean_queries, sweep.rows[i - 1].mean_queries);
    EXPECT_GE(sweep.rows[i].success_rate, sweep.rows[i - 1].success_rate);
  }
}

TEST(ResolveThreadCountTest, EnvironmentCaps) {
  setenv("MNLRANK_THREADS", "2", 1);
  EXPECT_EQ(ResolveThreadCount(8, 100), 2);
  EXPECT_EQ(ResolveThreadCount(8, 1), 1);
  unsetenv("MNLRANK_THREADS");
  EXPECT_EQ(ResolveThreadCount(3, 100), 3);
}

}  // namespace
}  // namespace mnlrank
