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

// Resumable active-ranking state machines.
//
// Every algorithm is driven through the same two halves: NextQuery()
// proposes the set to ask about, SubmitResult() ingests the winner. Step()
// fuses the two against an in-process oracle. Driving a machine by hand with
// an oracle's answers reproduces the fused trajectory exactly, which is what
// lets a human (through the session service) stand in for the oracle.

#ifndef MNLRANK_MACHINE_H_
#define MNLRANK_MACHINE_H_

#include <cstdint>
#include <memory>
#include <span>
#include <string_view>
#include <vector>

#include "mnlrank/oracle.h"
#include "mnlrank/random.h"

namespace mnlrank {

inline constexpr int64_t kDefaultQueryBudget = 100'000'000;

struct MachineProgress {
  int64_t queries = 0;
  int remaining = 0;  // |R| of the active defeating run
  int selected = 0;   // items selected so far by the active run (top-k)
  int lo = -1;        // next top rank to assign (total ranking), else -1
  int hi = -1;        // next bottom rank to assign (total ranking), else -1
  int round = 0;      // tournament round, 0 for single-run algorithms
};

class QueryMachine {
 public:
  virtual ~QueryMachine() = default;

  // Pending query in item ids. Repeated calls return the same set until a
  // result is submitted. Throws kNoPendingQuery once finished.
  virtual std::span<const int> NextQuery() = 0;

  // Throws kOutOfOrderSubmission when no query is pending and
  // kWinnerNotInQuery when `winner` is not a member of it.
  virtual void SubmitResult(int winner) = 0;

  virtual bool finished() const = 0;
  virtual int64_t queries() const = 0;
  virtual MachineProgress progress() const = 0;

  // True for total ranking (ResultItems() is best-first order), false for
  // top-k selection (ResultItems() is the selected set, ascending).
  virtual bool produces_ranking() const = 0;
  // Throws kInvalidArgument if not finished.
  virtual std::vector<int> ResultItems() const = 0;

  // One fused propose/query/ingest round trip.
  void Step(ChoiceOracle& oracle, Pcg32& oracle_rng);
};

// Steps until finished. Throws kBudgetExhausted when `budget` queries have
// been issued without finishing.
void RunToCompletion(QueryMachine& machine, ChoiceOracle& oracle,
                     Pcg32& oracle_rng, int64_t budget = kDefaultQueryBudget);

enum class AlgorithmKind { kPdtr, kPdks, kTnks };

std::string_view AlgorithmName(AlgorithmKind kind);
// Accepts "pdtr", "pdks", "tnks". Throws kInvalidArgument.
AlgorithmKind ParseAlgorithm(std::string_view name);

struct MachineSpec {
  AlgorithmKind algorithm = AlgorithmKind::kPdtr;
  int n = 0;
  int k = 1;  // ignored by PDTR
  int l = 2;
  double eps = 0.05;
  double delta = 0.05;
  double alpha = 0.0;
  uint64_t seed = 0;
};

// Builds a machine over items 0..n-1 whose query randomness comes from
// Pcg32(seed, kAlgorithmStream).
std::unique_ptr<QueryMachine> MakeMachine(const MachineSpec& spec);

}  // namespace mnlrank

#endif  // MNLRANK_MACHINE_H_
