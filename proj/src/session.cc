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

#include "mnlrank/session.h"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <random>
#include <set>
#include <sstream>

#include "mnlrank/confidence.h"
#include "mnlrank/error.h"

namespace mnlrank {
namespace {

using nlohmann::json;

constexpr double kHumanRbcConstant = 10.0;

[[noreturn]] void BadConfig(const std::string& what) {
  throw Error(ErrorCode::kInvalidConfig, what);
}

double Now() {
  return std::chrono::duration<double>(
             std::chrono::system_clock::now().time_since_epoch())
      .count();
}

uint64_t RandomWord() {
  static std::mutex mu;
  static std::random_device device;
  std::lock_guard lock(mu);
  return (uint64_t{device()} << 32) | device();
}

std::string NewSessionId() {
  char buf[33];
  std::snprintf(buf, sizeof(buf), "%016llx%016llx",
                static_cast<unsigned long long>(RandomWord()),
                static_cast<unsigned long long>(RandomWord()));
  return buf;
}

std::string NonceFor(int64_t answers) { return "q" + std::to_string(answers); }

}  // namespace

double SessionConfig::ResolvedAlpha() const {
  return alpha ? *alpha : DefaultAlpha(l, kHumanRbcConstant);
}

void SessionConfig::Validate() const {
  if (n() < 2) BadConfig("need at least two item labels");
  std::set<std::string> seen;
  for (const std::string& label : labels) {
    if (label.empty()) BadConfig("item labels must be non-empty");
    if (!seen.insert(label).second) BadConfig("duplicate item label '" + label + "'");
  }
  if (l < 2 || l > n()) BadConfig("l must satisfy 2 <= l <= number of items");
  if (algorithm != AlgorithmKind::kPdtr && (k < 1 || k > n() / 2)) {
    BadConfig("k must satisfy 1 <= k <= n/2");
  }
  if (!(eps > 0.0 && eps < 1.0)) BadConfig("eps must lie in (0, 1)");
  if (!(delta > 0.0 && delta < 1.0)) BadConfig("delta must lie in (0, 1)");
  const double a = ResolvedAlpha();
  if (!(a > 0.0 && a < 0.5)) BadConfig("alpha must lie in (0, 1/2)");
}

SessionConfig SessionConfigFromJson(const json& doc) {
  if (!doc.is_object()) BadConfig("session config must be a JSON object");
  SessionConfig c;
  try {
    for (const auto& [key, value] : doc.items()) {
      if (key == "algorithm") {
        try {
          c.algorithm = ParseAlgorithm(value.get<std::string>());
        } catch (const Error& e) {
          BadConfig(e.what());
        }
      } else if (key == "labels" || key == "items") {
        c.labels = value.get<std::vector<std::string>>();
      } else if (key == "k") {
        c.k = value.get<int>();
      } else if (key == "l") {
        c.l = value.get<int>();
      } else if (key == "eps") {
        c.eps = value.get<double>();
      } else if (key == "delta") {
        c.delta = value.get<double>();
      } else if (key == "alpha") {
        if (!(value.is_string() && value.get<std::string>() == "default")) {
          c.alpha = value.get<double>();
        }
      } else if (key == "seed") {
        c.seed = value.get<uint64_t>();
      } else {
        BadConfig("unknown session config key '" + key + "'");
      }
    }
  } catch (const json::exception& e) {
    BadConfig(std::string("session config has a value of the wrong type: ") +
              e.what());
  }
  return c;
}

json SessionConfigToJson(const SessionConfig& c) {
  json doc = {{"algorithm", AlgorithmName(c.algorithm)},
              {"labels", c.labels},
              {"l", c.l},
              {"eps", c.eps},
              {"delta", c.delta},
              {"alpha", c.ResolvedAlpha()}};
  if (c.algorithm != AlgorithmKind::kPdtr) doc["k"] = c.k;
  if (c.seed) doc["seed"] = *c.seed;
  return doc;
}

json SessionViewToJson(const SessionView& v) {
  json progress = {{"queries", v.progress.queries},
                   {"remaining", v.progress.remaining},
                   {"selected", v.progress.selected},
                   {"round", v.progress.round}};
  if (v.progress.lo >= 0) {
    progress["lo"] = v.progress.lo;
    progress["hi"] = v.progress.hi;
  }
  json doc = {{"id", v.id},
              {"config", SessionConfigToJson(v.config)},
              {"finished", v.finished},
              {"answers", v.answers},
              {"progress", progress},
              {"created", v.created},
              {"updated", v.updated}};
  if (v.finished) {
    doc["result"] = v.result;
    doc["pending"] = nullptr;
  } else {
    doc["pending"] = {{"labels", v.pending}, {"nonce", v.nonce}};
  }
  if (v.duplicate) doc["duplicate"] = true;
  return doc;
}

struct SessionStore::Session {
  std::mutex mu;
  std::string id;
  SessionConfig config;  // seed always set
  std::unique_ptr<QueryMachine> machine;
  std::map<std::string, int> index;
  std::vector<int> answers;  // accepted winners, as item ids
  double created = 0.0;
  double updated = 0.0;
  bool deleted = false;

  void Build() {
    MachineSpec spec;
    spec.algorithm = config.algorithm;
    spec.n = config.n();
    spec.k = config.k;
    spec.l = config.l;
    spec.eps = config.eps;
    spec.delta = config.delta;
    spec.alpha = config.ResolvedAlpha();
    spec.seed = *config.seed;
    try {
      machine = MakeMachine(spec);
    } catch (const Error& e) {
      if (e.code() == ErrorCode::kInvalidArgument ||
          e.code() == ErrorCode::kCapTooLarge) {
        BadConfig(e.what());
      }
      throw;
    }
    for (int i = 0; i < config.n(); ++i) index[config.labels[i]] = i;
    if (!machine->finished()) machine->NextQuery();
  }

  void Accept(int winner) {
    machine->SubmitResult(winner);
    answers.push_back(winner);
    if (!machine->finished()) machine->NextQuery();
  }

  SessionView View() const {
    SessionView v;
    v.id = id;
    v.config = config;
    v.finished = machine->finished();
    v.progress = machine->progress();
    v.answers = static_cast<int64_t>(answers.size());
    v.created = created;
    v.updated = updated;
    if (v.finished) {
      for (int item : machine->ResultItems()) v.result.push_back(config.labels[item]);
    } else {
      for (int item : machine->NextQuery()) v.pending.push_back(config.labels[item]);
      v.nonce = NonceFor(v.answers);
    }
    return v;
  }
};

SessionStore::SessionStore(std::optional<std::filesystem::path> snapshot_dir)
    : snapshot_dir_(std::move(snapshot_dir)) {
  if (snapshot_dir_) {
    std::filesystem::create_directories(*snapshot_dir_);
    LoadSnapshots();
  }
}

SessionStore::~SessionStore() = default;

SessionView SessionStore::Create(SessionConfig config) {
  config.Validate();
  if (!config.seed) config.seed = RandomWord();
  auto session = std::make_shared<Session>();
  session->id = NewSessionId();
  session->config = std::move(config);
  session->created = session->updated = Now();
  session->Build();
  std::lock_guard session_lock(session->mu);
  {
    std::lock_guard lock(mu_);
    sessions_[session->id] = session;
  }
  Persist(*session);
  return session->View();
}

std::shared_ptr<SessionStore::Session> SessionStore::Find(
    const std::string& id) const {
  std::lock_guard lock(mu_);
  const auto it = sessions_.find(id);
  if (it == sessions_.end()) {
    throw Error(ErrorCode::kUnknownSession, "unknown session '" + id + "'");
  }
  return it->second;
}

SessionView SessionStore::Get(const std::string& id) const {
  const auto session = Find(id);
  std::lock_guard lock(session->mu);
  if (session->deleted) {
    throw Error(ErrorCode::kUnknownSession, "unknown session '" + id + "'");
  }
  return session->View();
}

std::vector<std::string> SessionStore::List() const {
  std::lock_guard lock(mu_);
  std::vector<std::string> ids;
  for (const auto& [id, session] : sessions_) ids.push_back(id);
  return ids;
}

void SessionStore::Delete(const std::string& id) {
  std::shared_ptr<Session> session;
  {
    std::lock_guard lock(mu_);
    const auto it = sessions_.find(id);
    if (it == sessions_.end()) {
      throw Error(ErrorCode::kUnknownSession, "unknown session '" + id + "'");
    }
    session = it->second;
    sessions_.erase(it);
  }
  std::lock_guard lock(session->mu);
  session->deleted = true;
  if (snapshot_dir_) {
    std::error_code ignored;
    std::filesystem::remove(*snapshot_dir_ / (id + ".json"), ignored);
  }
}

SessionView SessionStore::Submit(const std::string& id,
                                 const std::string& winner_label,
                                 const std::optional<std::string>& nonce) {
  const auto session = Find(id);
  std::lock_guard lock(session->mu);
  if (session->deleted) {
    throw Error(ErrorCode::kUnknownSession, "unknown session '" + id + "'");
  }
  const auto answered = static_cast<int64_t>(session->answers.size());
  const auto it = session->index.find(winner_label);

  // Retransmission of the answer just accepted.
  if (nonce && answered > 0 && *nonce == NonceFor(answered - 1)) {
    if (it != session->index.end() && it->second == session->answers.back()) {
      SessionView v = session->View();
      v.duplicate = true;
      return v;
    }
    throw Error(ErrorCode::kStaleNonce,
                "nonce " + *nonce + " belongs to an already answered query");
  }
  if (session->machine->finished()) {
    throw Error(ErrorCode::kSessionFinished, "session " + id + " is finished");
  }
  if (nonce && *nonce != NonceFor(answered)) {
    throw Error(ErrorCode::kStaleNonce,
                "nonce " + *nonce + " does not match the pending query " +
                    NonceFor(answered));
  }
  if (it == session->index.end()) {
    throw Error(ErrorCode::kWinnerNotInQuery,
                "'" + winner_label + "' is not an item of this session");
  }
  session->Accept(it->second);  // throws kWinnerNotInQuery before mutating
  session->updated = Now();
  Persist(*session);
  return session->View();
}

void SessionStore::Persist(const Session& session) const {
  if (!snapshot_dir_) return;
  const json doc = {{"id", session.id},
                    {"config", SessionConfigToJson(session.config)},
                    {"answers", session.answers},
                    {"created", session.created},
                    {"updated", session.updated}};
  const auto path = *snapshot_dir_ / (session.id + ".json");
  auto tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::trunc);
    out << doc.dump() << '\n';
    if (!out) {
      throw Error(ErrorCode::kInvalidArgument,
                  "cannot write snapshot " + tmp.string());
    }
  }
  std::filesystem::rename(tmp, path);
}

void SessionStore::LoadSnapshots() {
  for (const auto& entry : std::filesystem::directory_iterator(*snapshot_dir_)) {
    if (entry.path().extension() != ".json") continue;
    std::ifstream in(entry.path());
    const json doc = json::parse(in, nullptr, /*allow_exceptions=*/false);
    if (doc.is_discarded() || !doc.is_object()) continue;
    auto session = std::make_shared<Session>();
    try {
      session->id = doc.at("id").get<std::string>();
      session->config = SessionConfigFromJson(doc.at("config"));
      session->created = doc.value("created", 0.0);
      session->updated = doc.value("updated", 0.0);
      session->config.Validate();
      session->Build();
      for (int winner : doc.at("answers").get<std::vector<int>>()) {
        session->Accept(winner);
      }
    } catch (const std::exception&) {
      continue;  // unreadable or inconsistent snapshot; leave it on disk
    }
    sessions_[session->id] = std::move(session);
  }
}

}  // namespace mnlrank
