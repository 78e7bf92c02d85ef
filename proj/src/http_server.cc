// Copyright 2026 The Hanabi Eval Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#include "hanabi_eval/http_server.h"

#include <functional>

#include "httplib.h"

namespace hanabi_eval {

using nlohmann::json;

namespace {

void Reply(httplib::Response& res, int status, const json& body) {
  res.status = status;
  res.set_content(body.dump(), "application/json");
}

json ErrorBody(const std::string& code, const std::string& message) {
  return {{"schema", kExperimentSchemaVersion},
          {"error", {{"code", code}, {"message", message}}}};
}

json ParseBody(const httplib::Request& req) {
  if (req.body.empty()) return json();
  try {
    return json::parse(req.body);
  } catch (const json::parse_error&) {
    throw ExperimentError(400, "bad_json", "request body is not valid JSON");
  }
}

int GameNumber(const std::string& text) {
  try {
    size_t used = 0;
    const int n = std::stoi(text, &used);
    if (used == text.size()) return n;
  } catch (const std::exception&) {
  }
  throw ExperimentError(404, "game_not_found", "no such game");
}

httplib::Server::Handler Wrap(std::function<json(const httplib::Request&)> body) {
  return [body = std::move(body)](const httplib::Request& req, httplib::Response& res) {
    try {
      Reply(res, 200, body(req));
    } catch (const ExperimentError& e) {
      Reply(res, e.status(), ErrorBody(e.code(), e.what()));
    } catch (const std::exception& e) {
      Reply(res, 500, ErrorBody("internal", e.what()));
    }
  };
}

}  // namespace

ExperimentHttpServer::ExperimentHttpServer(ExperimentService& service)
    : service_(service), server_(std::make_unique<httplib::Server>()) {
  httplib::Server& s = *server_;
  s.Post("/sessions", Wrap([this](const httplib::Request& req) {
           return service_.CreateSession(ParseBody(req));
         }));
  s.Get(R"(/sessions/([0-9a-f]+))", Wrap([this](const httplib::Request& req) {
          return service_.GetSession(req.matches[1]);
        }));
  s.Get(R"(/sessions/([0-9a-f]+)/games/([^/]+)/observation)",
        Wrap([this](const httplib::Request& req) {
          return service_.GetObservation(req.matches[1], GameNumber(req.matches[2]));
        }));
  s.Post(R"(/sessions/([0-9a-f]+)/games/([^/]+)/move)",
         Wrap([this](const httplib::Request& req) {
           return service_.SubmitMove(req.matches[1], GameNumber(req.matches[2]),
                                      ParseBody(req));
         }));
  s.Post(R"(/sessions/([0-9a-f]+)/games/([^/]+)/questionable)",
         Wrap([this](const httplib::Request& req) {
           return service_.FlagQuestionable(req.matches[1], GameNumber(req.matches[2]));
         }));
  s.Post(R"(/sessions/([0-9a-f]+)/survey/block)",
         Wrap([this](const httplib::Request& req) {
           return service_.SubmitBlockSurvey(req.matches[1], ParseBody(req));
         }));
  s.Post(R"(/sessions/([0-9a-f]+)/survey/final)",
         Wrap([this](const httplib::Request& req) {
           return service_.SubmitFinalSurvey(req.matches[1], ParseBody(req));
         }));
  s.Get("/export", Wrap([this](const httplib::Request&) { return service_.Export(); }));
  s.set_error_handler([](const httplib::Request&, httplib::Response& res) {
    if (res.body.empty()) {
      Reply(res, res.status, ErrorBody(res.status == 404 ? "not_found" : "error",
                                       "request failed"));
    }
  });
}

ExperimentHttpServer::~ExperimentHttpServer() { Stop(); }

bool ExperimentHttpServer::Listen(const std::string& host, int port) {
  return server_->listen(host, port);
}

int ExperimentHttpServer::BindToAnyPort(const std::string& host) {
  return server_->bind_to_any_port(host);
}

bool ExperimentHttpServer::ListenAfterBind() { return server_->listen_after_bind(); }

void ExperimentHttpServer::Stop() {
  if (server_->is_running()) server_->stop();
  service_.Flush();
}

bool ExperimentHttpServer::IsRunning() const { return server_->is_running(); }

}  // namespace hanabi_eval
