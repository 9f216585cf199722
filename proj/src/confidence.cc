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

#include <algorithm>
#include <cmath>
#include <string>

#include "mnlrank/error.h"

namespace mnlrank {

void ValidateConfidenceParams(const ConfidenceParams& params) {
  if (!(params.alpha > 0.0 && params.alpha < 0.5)) {
    throw Error(ErrorCode::kInvalidArgument,
                "alpha must lie in (0, 1/2), got " + std::to_string(params.alpha));
  }
  if (!(params.eps > 0.0 && params.eps < 1.0)) {
    throw Error(ErrorCode::kInvalidArgument,
                "eps must lie in (0, 1), got " + std::to_string(params.eps));
  }
  if (!(params.delta_star > 0.0 && params.delta_star <= 1.0)) {
    throw Error(ErrorCode::kInvalidArgument, "delta* must lie in (0, 1]");
  }
}

double ConfidenceBound(int64_t t, const ConfidenceParams& params) {
  const auto tf = static_cast<double>(t);
  return 0.5 - params.alpha * params.eps +
         std::sqrt(std::log(kPiSquared * tf * tf / (6.0 * params.delta_star)) /
                   (2.0 * tf));
}

int64_t WinCap(const ConfidenceParams& params) {
  const double a_e = params.alpha * params.eps;
  const double cap = std::ceil(std::log(1.0 / params.delta_star) / (4.0 * a_e * a_e));
  // 2^63 is the first double that no longer fits.
  if (!(cap < 0x1.0p63)) {
    throw Error(ErrorCode::kCapTooLarge, "win cap exceeds int64 range");
  }
  return std::max<int64_t>(1, static_cast<int64_t>(cap));
}

double DefaultAlpha(int l, double rbc_constant) {
  return (l - 1) / (4.0 * (l + rbc_constant - 1.0));
}

RoundSchedule TournamentSchedule(int round, double delta, double eps) {
  const double r = round;
  return {6.0 * delta / (r * r * kPiSquared),
          eps / 4.0 * std::pow(0.8, r)};
}

int TournamentGroupSize(int n, int k, int l) {
  return std::min(n, std::max(2 * k, k + l - 1));
}

}  // namespace mnlrank
