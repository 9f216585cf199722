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

#include "mnlrank/http_service.h"

#include <exception>
#include <functional>

#include "httplib.h"
#include "json.hpp"

namespace mnlrank {
namespace {

using nlohmann::json;

constexpr char kJson[] = "application/json";

void SendJson(httplib::Response& res, int status, const json& body) {
  res.status = status;
  res.set_content(body.dump(), kJson);
}

void SendError(httplib::Response& res, int status, std::string_view code,
               const std::string& message) {
  SendJson(res, status, {{"error", {{"code", code}, {"message", message}}}});
}

// Runs `handler`, mapping library errors to their HTTP form.
void Guarded(httplib::Response& res, const std::function<void()>& handler) {
  try {
    handler();
  } catch (const Error& e) {
    SendError(res, HttpStatusFor(e.code()), ErrorCodeName(e.code()), e.what());
  } catch (const json::exception& e) {
    SendError(res, 400, "invalid_config", e.what());
  } catch (const std::exception& e) {
    SendError(res, 500, "internal_invariant_broken", e.what());
  }
}

json ParseBody(const httplib::Request& req) {
  json body = json::parse(req.body, nullptr, /*allow_exceptions=*/false);
  if (body.is_discarded() || !body.is_object()) {
    throw Error(ErrorCode::kInvalidConfig, "request body must be a JSON object");
  }
  return body;
}

}  // namespace

int HttpStatusFor(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidConfig:
    case ErrorCode::kInvalidArgument:
      return 400;
    case ErrorCode::kUnknownSession:
      return 404;
    case ErrorCode::kSessionFinished:
    case ErrorCode::kStaleNonce:
    case ErrorCode::kOutOfOrderSubmission:
      return 409;
    case ErrorCode::kWinnerNotInQuery:
      return 422;
    default:
      return 500;
  }
}

HttpService::HttpService(SessionStore& store, HttpOptions options)
    : store_(store),
      options_(std::move(options)),
      server_(std::make_unique<httplib::Server>()) {
  httplib::Server& s = *server_;
  s.set_default_headers(
      {{"Access-Control-Allow-Origin", options_.cors_origin},
       {"Access-Control-Allow-Methods", "GET, POST, DELETE, OPTIONS"},
       {"Access-Control-Allow-Headers", "Content-Type"}});
  s.Options(R"(/.*)", [](const httplib::Request&, httplib::Response& res) {
    res.status = 204;
  });

  s.Get("/health", [](const httplib::Request&, httplib::Response& res) {
    SendJson(res, 200, {{"status", "ok"}});
  });

  s.Post("/sessions", [this](const httplib::Request& req, httplib::Response& res) {
    Guarded(res, [&] {
      const SessionView view = store_.Create(SessionConfigFromJson(ParseBody(req)));
      SendJson(res, 201, SessionViewToJson(view));
    });
  });

  s.Get("/sessions", [this](const httplib::Request&, httplib::Response& res) {
    Guarded(res, [&] { SendJson(res, 200, {{"sessions", store_.List()}}); });
  });

  s.Get(R"(/sessions/([0-9a-zA-Z_-]+))",
        [this](const httplib::Request& req, httplib::Response& res) {
          Guarded(res, [&] {
            SendJson(res, 200, SessionViewToJson(store_.Get(req.matches[1].str())));
          });
        });

  s.Delete(R"(/sessions/([0-9a-zA-Z_-]+))",
           [this](const httplib::Request& req, httplib::Response& res) {
             Guarded(res, [&] {
               store_.Delete(req.matches[1].str());
               res.status = 204;
             });
           });

  s.Post(R"(/sessions/([0-9a-zA-Z_-]+)/answer)",
         [this](const httplib::Request& req, httplib::Response& res) {
           Guarded(res, [&] {
             const json body = ParseBody(req);
             const auto winner = body.find("winner");
             if (winner == body.end() || !winner->is_string()) {
               throw Error(ErrorCode::kInvalidConfig,
                           "answer needs a string \"winner\"");
             }
             std::optional<std::string> nonce;
             if (const auto n = body.find("nonce"); n != body.end() && !n->is_null()) {
               if (!n->is_string()) {
                 throw Error(ErrorCode::kInvalidConfig, "\"nonce\" must be a string");
               }
               nonce = n->get<std::string>();
             }
             const SessionView view =
                 store_.Submit(req.matches[1].str(), winner->get<std::string>(), nonce);
             SendJson(res, 200, SessionViewToJson(view));
           });
         });

  if (!options_.static_dir.empty()) s.set_mount_point("/", options_.static_dir);
}

HttpService::~HttpService() { Stop(); }

bool HttpService::Listen(const std::string& host, int port) {
  return server_->listen(host, port);
}

int HttpService::BindToAnyPort(const std::string& host) {
  return server_->bind_to_any_port(host);
}

bool HttpService::ListenAfterBind() { return server_->listen_after_bind(); }

void HttpService::Stop() { server_->stop(); }

void HttpService::WaitUntilReady() const { server_->wait_until_ready(); }

}  // namespace mnlrank
