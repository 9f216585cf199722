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

#include "mnlrank/error.h"

namespace mnlrank {

std::string_view ErrorCodeName(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidArgument: return "invalid_argument";
    case ErrorCode::kEmptyInput: return "empty_input";
    case ErrorCode::kRbcViolation: return "rbc_violation";
    case ErrorCode::kInvalidRanking: return "invalid_ranking";
    case ErrorCode::kItemNotInSubset: return "item_not_in_subset";
    case ErrorCode::kPoolTooSmall: return "pool_too_small";
    case ErrorCode::kAlphaTooLarge: return "alpha_too_large";
    case ErrorCode::kUnknownSubset: return "unknown_subset";
    case ErrorCode::kNonTermination: return "non_termination";
    case ErrorCode::kCapTooLarge: return "cap_too_large";
    case ErrorCode::kBudgetExhausted: return "budget_exhausted";
    case ErrorCode::kInternalInvariantBroken: return "internal_invariant_broken";
    case ErrorCode::kWinnerNotInQuery: return "winner_not_in_query";
    case ErrorCode::kOutOfOrderSubmission: return "out_of_order_submission";
    case ErrorCode::kNoPendingQuery: return "no_pending_query";
    case ErrorCode::kMalformedEntry: return "malformed_entry";
    case ErrorCode::kEmptyProfile: return "empty_profile";
    case ErrorCode::kDisconnected: return "disconnected";
    case ErrorCode::kInvalidConfig: return "invalid_config";
    case ErrorCode::kUnknownSession: return "unknown_session";
    case ErrorCode::kSessionFinished: return "session_finished";
    case ErrorCode::kStaleNonce: return "stale_nonce";
  }
  return "unknown";
}

}  // namespace mnlrank
