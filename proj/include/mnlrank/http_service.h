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

// JSON over HTTP for SessionStore.
//
//   POST   /sessions               config -> 201 session view
//   GET    /sessions               -> {"sessions": [ids]}
//   GET    /sessions/{id}          -> session view
//   DELETE /sessions/{id}          -> 204
//   POST   /sessions/{id}/answer   {"winner": label, "nonce": n} -> view
//
// Failures answer {"error": {"code": ..., "message": ...}}.

#ifndef MNLRANK_HTTP_SERVICE_H_
#define MNLRANK_HTTP_SERVICE_H_

#include <memory>
#include <string>

#include "mnlrank/error.h"
#include "mnlrank/session.h"

namespace httplib {
class Server;
}

namespace mnlrank {

struct HttpOptions {
  std::string cors_origin = "*";
  std::string static_dir;  // served at "/" when non-empty
};

// HTTP status used for an error code.
int HttpStatusFor(ErrorCode code);

class HttpService {
 public:
  HttpService(SessionStore& store, HttpOptions options = {});
  ~HttpService();

  // Blocks until Stop(). Returns false if the port cannot be bound.
  bool Listen(const std::string& host, int port);
  // Binds an ephemeral port and returns it (-1 on failure); serve with
  // ListenAfterBind().
  int BindToAnyPort(const std::string& host);
  bool ListenAfterBind();
  void Stop();
  void WaitUntilReady() const;

 private:
  SessionStore& store_;
  HttpOptions options_;
  std::unique_ptr<httplib::Server> server_;
};

}  // namespace mnlrank

#endif  // MNLRANK_HTTP_SERVICE_H_
