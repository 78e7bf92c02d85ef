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

#include <unistd.h>

#include <filesystem>
#include <thread>

#include "gtest/gtest.h"
#include "httplib.h"

namespace hanabi_eval {
namespace {

using nlohmann::json;

class HttpServerTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = std::filesystem::temp_directory_path() /
           ("hanabi_http_" + std::to_string(::getpid()));
    std::filesystem::remove_all(dir_);
    ExperimentConfig config;
    for (auto algorithm : {kSimpleBot, kSmartBot, kHolmesBot}) {
      AgentSpec spec;
      spec.name = spec.algorithm = std::string(algorithm);
      config.pool.push_back(spec);
    }
    config.data_dir = dir_;
    service_ = std::make_unique<ExperimentService>(config);
    server_ = std::make_unique<ExperimentHttpServer>(*service_);
    port_ = server_->BindToAnyPort("127.0.0.1");
    ASSERT_GT(port_, 0);
    thread_ = std::thread([this] { server_->ListenAfterBind(); });
    client_ = std::make_unique<httplib::Client>("127.0.0.1", port_);
    for (int i = 0; i < 200 && !server_->IsRunning(); ++i) {
      std::this_thread::sleep_for(std::chrono::milliseconds(5));
    }
  }

  void TearDown() override {
    server_->Stop();
    if (thread_.joinable()) thread_.join();
    server_.reset();
    service_.reset();
    std::filesystem::remove_all(dir_);
  }

  // Returns (status, parsed body).
  std::pair<int, json> Post(const std::string& path, const std::string& body) {
    auto res = client_->Post(path, body, "application/json");
    if (!res) return {-1, json()};
    return {res->status, json::parse(res->body)};
  }
  std::pair<int, json> Get(const std::string& path) {
    auto res = client_->Get(path);
    if (!res) return {-1, json()};
    EXPECT_EQ(res->get_header_value("Content-Type"), "application/json");
    return {res->status, json::parse(res->body)};
  }

  std::filesystem::path dir_;
  std::unique_ptr<ExperimentService> service_;
  std::unique_ptr<ExperimentHttpServer> server_;
  std::unique_ptr<httplib::Client> client_;
  std::thread thread_;
  int port_ = -1;
};

TEST_F(HttpServerTest, SessionLifecycle) {
  auto [status, session] = Post("/sessions", R"({"familiarity":2})");
  ASSERT_EQ(status, 200);
  const std::string id = session.at("session_id");
  const std::string base = "/sessions/" + id;
  EXPECT_EQ(Get(base).second.at("session_id"), id);

  auto [obs_status, view] = Get(base + "/games/1/observation");
  ASSERT_EQ(obs_status, 200);
  const int action = view.at("observation").at("legal_action_ids").back();
  auto [move_status, moved] =
      Post(base + "/games/1/move", json{{"action_id", action}}.dump());
  ASSERT_EQ(move_status, 200);
  EXPECT_EQ(moved.at("human_move").at("move").at("action_id"), action);
  EXPECT_EQ(Post(base + "/games/1/questionable", "").first, 200);

  auto [export_status, exported] = Get("/export");
  ASSERT_EQ(export_status, 200);
  EXPECT_EQ(exported.at("attribution")[3].at("clicks"), 1);
  EXPECT_TRUE(exported.at("csv").contains("ratings"));
}

TEST_F(HttpServerTest, ErrorEnvelope) {
  auto check = [](const std::pair<int, json>& r, int status, const std::string& code) {
    EXPECT_EQ(r.first, status);
    ASSERT_TRUE(r.second.contains("error")) << r.second.dump();
    EXPECT_EQ(r.second.at("error").at("code"), code);
    EXPECT_EQ(r.second.at("schema"), 1);
  };
  check(Get("/sessions/abc123"), 404, "session_not_found");
  check(Get("/nowhere"), 404, "not_found");
  check(Post("/sessions", "{not json"), 400, "bad_json");
  const std::string id = Post("/sessions", "").second.at("session_id");
  const std::string base = "/sessions/" + id;
  check(Get(base + "/games/x/observation"), 404, "game_not_found");
  check(Get(base + "/games/3/observation"), 404, "game_not_found");
  Get(base + "/games/1/observation");
  check(Post(base + "/games/1/move", R"({"action_id":0})"), 422, "illegal_move");
  check(Post(base + "/games/1/move", R"({})"), 400, "bad_request");
  check(Post(base + "/games/1/questionable", ""), 409, "no_bot_move");
  check(Post(base + "/survey/block", R"({"block":1,"items":[1,1,1,1,1,1,1,1]})"), 409,
        "block_incomplete");
  check(Post(base + "/survey/final", R"({"items":[1,1,1,1,1,1,1]})"), 409, "premature");
}

}  // namespace
}  // namespace hanabi_eval
