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

// Bradley-Terry-Luce maximum likelihood by minorization-maximization.

#ifndef MNLRANK_MM_FIT_H_
#define MNLRANK_MM_FIT_H_

#include <span>
#include <string>
#include <vector>

#include "mnlrank/model.h"
#include "mnlrank/preflib.h"

namespace mnlrank {

struct MmFitOptions {
  double tol = 1e-9;
  int max_iter = 10'000;
};

struct MmFitResult {
  ScoreVector scores;  // max-normalized; C is max/min of the fit
  bool converged;
  int iterations;
  // Log-likelihood before the first sweep and after every sweep.
  std::vector<double> log_likelihood;
};

// sum_{i != j} w_ij (log theta_i - log(theta_i + theta_j)).
double BtlLogLikelihood(const PairwiseCounts& counts,
                        std::span<const double> thetas);

// Iterates theta_i <- W_i / sum_{j != i} n_ij / (theta_i + theta_j) on all
// coordinates at once, rescaling to max 1 after every sweep, until the largest
// relative coordinate change drops below tol. Throws kDisconnected unless the
// "beats" graph is strongly connected (otherwise no finite maximizer exists).
// Hitting max_iter is reported through `converged`, not thrown.
MmFitResult MmFit(const PairwiseCounts& counts, const MmFitOptions& options = {});

// {"labels": [...], "thetas": [...], "C": max/min}.
std::string FittedScoresJson(const PreferenceProfile& profile,
                             const ScoreVector& scores);

}  // namespace mnlrank

#endif  // MNLRANK_MM_FIT_H_
