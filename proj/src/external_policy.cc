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

#include "hanabi_eval/external_policy.h"

#include <poll.h>
#include <signal.h>
#include <sys/wait.h>
#include <unistd.h>

#include <cerrno>
#include <cstring>
#include <istream>
#include <mutex>
#include <ostream>

#include "hanabi_eval/observation_json.h"

namespace hanabi_eval {

using nlohmann::json;

namespace {

void IgnoreSigpipeOnce() {
  static std::once_flag once;
  std::call_once(once, [] { signal(SIGPIPE, SIG_IGN); });
}

json HelloMessage() {
  return json{{"type", "hello"}, {"proto", kExternalProtocolVersion}};
}

}  // namespace

SubprocessChannel::SubprocessChannel(const std::string& command) {
  IgnoreSigpipeOnce();
  int in_pipe[2];   // parent -> child
  int out_pipe[2];  // child -> parent
  if (pipe(in_pipe) != 0) throw ExternalPolicyError("pipe failed");
  if (pipe(out_pipe) != 0) {
    close(in_pipe[0]);
    close(in_pipe[1]);
    throw ExternalPolicyError("pipe failed");
  }
  pid_ = fork();
  if (pid_ < 0) {
    for (int fd : {in_pipe[0], in_pipe[1], out_pipe[0], out_pipe[1]}) close(fd);
    throw ExternalPolicyError("fork failed");
  }
  if (pid_ == 0) {
    dup2(in_pipe[0], STDIN_FILENO);
    dup2(out_pipe[1], STDOUT_FILENO);
    for (int fd : {in_pipe[0], in_pipe[1], out_pipe[0], out_pipe[1]}) close(fd);
    execl("/bin/sh", "sh", "-c", command.c_str(), static_cast<char*>(nullptr));
    _exit(127);
  }
  close(in_pipe[0]);
  close(out_pipe[1]);
  to_child_ = in_pipe[1];
  from_child_ = out_pipe[0];
}

SubprocessChannel::~SubprocessChannel() {
  if (to_child_ >= 0) close(to_child_);
  if (from_child_ >= 0) close(from_child_);
  if (pid_ > 0) {
    kill(pid_, SIGTERM);
    waitpid(pid_, nullptr, 0);
  }
}

void SubprocessChannel::WriteLine(std::string_view line) {
  std::string data(line);
  data.push_back('\n');
  size_t written = 0;
  while (written < data.size()) {
    const ssize_t n = write(to_child_, data.data() + written, data.size() - written);
    if (n < 0) {
      if (errno == EINTR) continue;
      throw ExternalPolicyError("external policy disconnected (write: " +
                                std::string(std::strerror(errno)) + ")");
    }
    written += static_cast<size_t>(n);
  }
}

std::optional<std::string> SubprocessChannel::ReadLine(
    std::chrono::milliseconds timeout) {
  const auto deadline = std::chrono::steady_clock::now() + timeout;
  while (true) {
    const size_t newline = buffer_.find('\n');
    if (newline != std::string::npos) {
      std::string line = buffer_.substr(0, newline);
      buffer_.erase(0, newline + 1);
      return line;
    }
    const auto remaining = std::chrono::duration_cast<std::chrono::milliseconds>(
        deadline - std::chrono::steady_clock::now());
    if (remaining.count() <= 0) return std::nullopt;
    pollfd pfd{from_child_, POLLIN, 0};
    const int ready = poll(&pfd, 1, static_cast<int>(remaining.count()));
    if (ready < 0) {
      if (errno == EINTR) continue;
      throw ExternalPolicyError("poll failed");
    }
    if (ready == 0) return std::nullopt;
    char chunk[4096];
    const ssize_t n = read(from_child_, chunk, sizeof(chunk));
    if (n < 0) {
      if (errno == EINTR) continue;
      throw ExternalPolicyError("external policy disconnected (read failed)");
    }
    if (n == 0) throw ExternalPolicyError("external policy disconnected");
    buffer_.append(chunk, static_cast<size_t>(n));
  }
}

ExternalPolicy::ExternalPolicy(std::unique_ptr<LineChannel> channel,
                               std::chrono::milliseconds timeout)
    : channel_(std::move(channel)), timeout_(timeout) {}

std::string ExternalPolicy::Receive(std::string_view what) {
  auto line = channel_->ReadLine(timeout_);
  if (!line) {
    throw ExternalPolicyError("external policy timed out waiting for " +
                              std::string(what));
  }
  return *line;
}

void ExternalPolicy::Handshake() {
  channel_->WriteLine(HelloMessage().dump());
  const std::string reply = Receive("hello");
  json j = json::parse(reply, nullptr, /*allow_exceptions=*/false);
  if (j.is_discarded() || j.value("type", "") != "hello") {
    throw ExternalPolicyError("bad handshake reply: " + reply);
  }
  if (j.value("proto", -1) != kExternalProtocolVersion) {
    throw ExternalPolicyError("unsupported protocol version in: " + reply);
  }
  connected_ = true;
}

Move ExternalPolicy::Act(const Observation& obs) {
  if (!connected_) Handshake();
  json message = ObservationToJson(obs);
  message["type"] = "obs";
  channel_->WriteLine(message.dump());
  const std::string reply = Receive("move");
  json j = json::parse(reply, nullptr, /*allow_exceptions=*/false);
  if (j.is_discarded() || j.value("type", "") != "move" ||
      !j.contains("action_id") || !j["action_id"].is_number_integer()) {
    throw ExternalPolicyError("malformed move reply: " + reply);
  }
  const int id = j["action_id"].get<int>();
  if (id < 0 || id >= kNumActions) {
    throw ExternalPolicyError("action id out of range: " + std::to_string(id));
  }
  const Move move = Move::FromActionId(id);
  if (!obs.IsLegal(move)) {
    throw ExternalPolicyError("external policy chose illegal move " +
                              move.ToString() + " (action " + std::to_string(id) +
                              ")");
  }
  return move;
}

int ServeExternalPolicy(std::istream& in, std::ostream& out,
                        const std::function<int(const json&)>& policy) {
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    json j = json::parse(line, nullptr, /*allow_exceptions=*/false);
    if (j.is_discarded()) return 2;
    const std::string type = j.value("type", "");
    if (type == "hello") {
      out << HelloMessage().dump() << '\n' << std::flush;
    } else if (type == "obs") {
      out << json{{"type", "move"}, {"action_id", policy(j)}}.dump() << '\n'
          << std::flush;
    }
  }
  return 0;
}

}  // namespace hanabi_eval
