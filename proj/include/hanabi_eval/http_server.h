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


// HTTP/JSON front end for ExperimentService.
//
//   POST /sessions
//   GET  /sessions/{id}
//   GET  /sessions/{id}/games/{n}/observation
//   POST /sessions/{id}/games/{n}/move
//   POST /sessions/{id}/games/{n}/questionable
//   POST /sessions/{id}/survey/block
//   POST /sessions/{id}/survey/final
//   GET  /export
//
// Errors are {"schema": 1, "error": {"code": ..., "message": ...}} with a
// 4xx/5xx status.

#ifndef HANABI_EVAL_HTTP_SERVER_H_
#define HANABI_EVAL_HTTP_SERVER_H_

#include <memory>
#include <string>

#include "hanabi_eval/experiment.h"

namespace httplib {
class Server;
}

namespace hanabi_eval {

class ExperimentHttpServer {
 public:
  explicit ExperimentHttpServer(ExperimentService& service);
  ~ExperimentHttpServer();

  // Blocks until Stop() is called. Returns false if the port cannot be bound.
  bool Listen(const std::string& host, int port);
  // Binds an ephemeral port and returns it, or -1. Serve with ListenAfterBind.
  int BindToAnyPort(const std::string& host);
  bool ListenAfterBind();
  void Stop();
  bool IsRunning() const;

 private:
  ExperimentService& service_;
  std::unique_ptr<httplib::Server> server_;
};

}  // namespace hanabi_eval

#endif  // HANABI_EVAL_HTTP_SERVER_H_
