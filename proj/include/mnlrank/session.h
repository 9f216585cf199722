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

// Interactive elicitation sessions: a query machine whose oracle is an
// external party answering by item label.
//
// Every pending query carries a nonce. A submission may echo it; echoing the
// nonce of the query that was just answered, with the same winner, is treated
// as a retransmission and changes nothing. Any other nonce mismatch is
// rejected with kStaleNonce.

#ifndef MNLRANK_SESSION_H_
#define MNLRANK_SESSION_H_

#include <cstdint>
#include <filesystem>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "mnlrank/machine.h"

namespace mnlrank {

struct SessionConfig {
  AlgorithmKind algorithm = AlgorithmKind::kPdtr;
  std::vector<std::string> labels;
  int k = 1;  // top-k algorithms only
  int l = 2;
  double eps = 0.05;
  double delta = 0.05;
  std::optional<double> alpha;  // unset: DefaultAlpha(l, 10)
  std::optional<uint64_t> seed;  // unset: drawn at creation

  int n() const { return static_cast<int>(labels.size()); }
  double ResolvedAlpha() const;
  // Throws kInvalidConfig.
  void Validate() const;
};

// Keys: algorithm, labels (or items), k, l, eps, delta, alpha, seed.
// Throws kInvalidConfig.
SessionConfig SessionConfigFromJson(const nlohmann::json& doc);
nlohmann::json SessionConfigToJson(const SessionConfig& config);

struct SessionView {
  std::string id;
  SessionConfig config;
  bool finished = false;
  std::vector<std::string> pending;  // labels of the pending query
  std::string nonce;                 // nonce of the pending query
  MachineProgress progress;
  int64_t answers = 0;               // accepted submissions
  std::vector<std::string> result;   // best-first, or the selected set
  bool duplicate = false;            // submission was a retransmission
  double created = 0.0;              // unix seconds
  double updated = 0.0;
};

nlohmann::json SessionViewToJson(const SessionView& view);

class SessionStore {
 public:
  // With a snapshot directory, every mutation rewrites <dir>/<id>.json and
  // construction resumes every session found there by replaying its answers.
  explicit SessionStore(std::optional<std::filesystem::path> snapshot_dir = {});
  ~SessionStore();

  SessionStore(const SessionStore&) = delete;
  SessionStore& operator=(const SessionStore&) = delete;

  SessionView Create(SessionConfig config);
  // Throws kUnknownSession.
  SessionView Get(const std::string& id) const;
  std::vector<std::string> List() const;
  // Throws kUnknownSession.
  void Delete(const std::string& id);
  // Throws kUnknownSession, kSessionFinished, kWinnerNotInQuery, kStaleNonce.
  SessionView Submit(const std::string& id, const std::string& winner_label,
                     const std::optional<std::string>& nonce = {});

 private:
  struct Session;

  std::shared_ptr<Session> Find(const std::string& id) const;
  void Persist(const Session& session) const;
  void LoadSnapshots();

  std::optional<std::filesystem::path> snapshot_dir_;
  mutable std::mutex mu_;
  std::map<std::string, std::shared_ptr<Session>> sessions_;
};

}  // namespace mnlrank

#endif  // MNLRANK_SESSION_H_
