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

// Property checks over the model layer, run by `mnlrank verify`.

#ifndef MNLRANK_VERIFICATION_H_
#define MNLRANK_VERIFICATION_H_

#include <cstdint>
#include <string>
#include <vector>

namespace mnlrank {

struct CheckResult {
  std::string name;
  bool passed = false;
  std::string detail;
  double seconds = 0.0;
};

struct VerifyOptions {
  int bound_instances = 200;
  uint64_t seed = 20260101;
};

// Random instances with n in [4, 8], l in [2, n], C in {2, 10, 20} and the
// default alpha; counts pairs where the exact conditional win probability
// falls below 1/2 + alpha * gap by more than 1e-10. Odd-numbered instances
// pin the smallest score to exactly 1/C.
CheckResult CheckWinBound(int instances, uint64_t seed);

// Sum of delta_r over all rounds equals delta: 10^6 terms plus an analytic
// tail estimate, to 1e-9.
CheckResult CheckDeltaSchedule(double delta);
// Sum of eps_r equals eps (geometric series), to 1e-12 relative.
CheckResult CheckEpsSchedule(double eps);

std::vector<CheckResult> RunModelChecks(const VerifyOptions& options = {});

}  // namespace mnlrank

#endif  // MNLRANK_VERIFICATION_H_
