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

// Adapter for policies that live outside this process.
//
// Wire protocol, newline-delimited JSON:
//   -> {"type":"hello","proto":1}
//   <- {"type":"hello","proto":1}
//   -> {"type":"obs", ...observation..., "legal_action_ids":[...]}
//   <- {"type":"move","action_id":k}
// Any timeout, disconnect, malformed reply or illegal move raises
// ExternalPolicyError; the harness aborts that game.

#ifndef HANABI_EVAL_EXTERNAL_POLICY_H_
#define HANABI_EVAL_EXTERNAL_POLICY_H_

#include <sys/types.h>

#include <chrono>
#include <functional>
#include <iosfwd>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

#include "hanabi_eval/agents.h"
#include "json.hpp"

namespace hanabi_eval {

inline constexpr int kExternalProtocolVersion = 1;

class ExternalPolicyError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Bidirectional line transport.
class LineChannel {
 public:
  virtual ~LineChannel() = default;
  // Throws ExternalPolicyError if the peer is gone.
  virtual void WriteLine(std::string_view line) = 0;
  // nullopt on timeout; throws ExternalPolicyError on disconnect.
  virtual std::optional<std::string> ReadLine(std::chrono::milliseconds timeout) = 0;
};

// Runs `/bin/sh -c command` and talks to it over its stdin/stdout.
class SubprocessChannel : public LineChannel {
 public:
  explicit SubprocessChannel(const std::string& command);
  ~SubprocessChannel() override;
  SubprocessChannel(const SubprocessChannel&) = delete;
  SubprocessChannel& operator=(const SubprocessChannel&) = delete;

  void WriteLine(std::string_view line) override;
  std::optional<std::string> ReadLine(std::chrono::milliseconds timeout) override;

 private:
  pid_t pid_ = -1;
  int to_child_ = -1;
  int from_child_ = -1;
  std::string buffer_;
};

class ExternalPolicy : public Agent {
 public:
  ExternalPolicy(std::unique_ptr<LineChannel> channel,
                 std::chrono::milliseconds timeout);

  // Performs the handshake on first use.
  Move Act(const Observation& obs) override;

 private:
  void Handshake();
  std::string Receive(std::string_view what);

  std::unique_ptr<LineChannel> channel_;
  std::chrono::milliseconds timeout_;
  bool connected_ = false;
};

// Policy side of the protocol: answers the handshake, then calls `policy` for
// every observation. Returns when the input stream closes. Used by the echo
// policy tool and by tests.
int ServeExternalPolicy(std::istream& in, std::ostream& out,
                        const std::function<int(const nlohmann::json&)>& policy);

}  // namespace hanabi_eval

#endif  // HANABI_EVAL_EXTERNAL_POLICY_H_
