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

#include "mnlrank/machine.h"

#include <numeric>
#include <string>

#include "mnlrank/defeating_machine.h"
#include "mnlrank/error.h"
#include "mnlrank/tournament_machine.h"

namespace mnlrank {

void QueryMachine::Step(ChoiceOracle& oracle, Pcg32& oracle_rng) {
  const std::span<const int> query = NextQuery();
  SubmitResult(oracle.Query(query, oracle_rng));
}

void RunToCompletion(QueryMachine& machine, ChoiceOracle& oracle,
                     Pcg32& oracle_rng, int64_t budget) {
  while (!machine.finished()) {
    if (machine.queries() >= budget) {
      throw Error(ErrorCode::kBudgetExhausted,
                  "query budget of " + std::to_string(budget) + " exhausted");
    }
    machine.Step(oracle, oracle_rng);
  }
}

std::string_view AlgorithmName(AlgorithmKind kind) {
  switch (kind) {
    case AlgorithmKind::kPdtr: return "pdtr";
    case AlgorithmKind::kPdks: return "pdks";
    case AlgorithmKind::kTnks: return "tnks";
  }
  return "unknown";
}

AlgorithmKind ParseAlgorithm(std::string_view name) {
  if (name == "pdtr") return AlgorithmKind::kPdtr;
  if (name == "pdks") return AlgorithmKind::kPdks;
  if (name == "tnks") return AlgorithmKind::kTnks;
  throw Error(ErrorCode::kInvalidArgument,
              "unknown algorithm '" + std::string(name) + "'");
}

std::unique_ptr<QueryMachine> MakeMachine(const MachineSpec& spec) {
  std::vector<int> items(spec.n > 0 ? spec.n : 0);
  std::iota(items.begin(), items.end(), 0);
  const Pcg32 rng(spec.seed, kAlgorithmStream);
  switch (spec.algorithm) {
    case AlgorithmKind::kPdtr:
      return std::make_unique<DefeatingMachine>(DefeatingMachine::TotalRanking(
          std::move(items), spec.l, spec.delta, spec.eps, spec.alpha, rng));
    case AlgorithmKind::kPdks:
      return std::make_unique<DefeatingMachine>(DefeatingMachine::TopK(
          std::move(items), spec.k, spec.l, spec.delta, spec.eps, spec.alpha,
          rng));
    case AlgorithmKind::kTnks:
      return std::make_unique<TournamentMachine>(std::move(items), spec.k,
                                                 spec.l, spec.delta, spec.eps,
                                                 spec.alpha, rng);
  }
  throw Error(ErrorCode::kInvalidArgument, "unknown algorithm");
}

}  // namespace mnlrank
