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


#include <sys/wait.h>
#include <unistd.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "gtest/gtest.h"
#include "hanabi_eval/experiment.h"
#include "json.hpp"

namespace hanabi_eval {
namespace {

namespace fs = std::filesystem;
using nlohmann::json;

struct RunResult {
  int exit_code = -1;
  std::string err;
};

std::string Slurp(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    root_ = fs::temp_directory_path() /
            ("hanabi_cli_" +
             std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()) +
             "_" + std::to_string(::getpid()));
    fs::remove_all(root_);
    fs::create_directories(root_);
  }
  void TearDown() override { fs::remove_all(root_); }

  RunResult Run(const std::string& args) {
    const fs::path err = root_ / "stderr.txt";
    const std::string cmd = std::string(HANABI_EVAL_CLI) + " " + args + " >/dev/null 2>" +
                            err.string();
    const int status = std::system(cmd.c_str());
    RunResult r;
    r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    r.err = Slurp(err);
    return r;
  }

  std::string P(const std::string& name) const { return (root_ / name).string(); }

  fs::path root_;
};

TEST_F(CliTest, TournamentIsByteIdenticalAcrossRunsAndLoops) {
  ASSERT_EQ(Run("tournament --games 2 --seed 9 --out " + P("a")).exit_code, 0);
  ASSERT_EQ(Run("tournament --games 2 --seed 9 --out " + P("b")).exit_code, 0);
  ASSERT_EQ(Run("tournament --games 2 --seed 9 --serial --out " + P("c")).exit_code, 0);
  const std::string a = Slurp(root_ / "a" / "traces.ndjson");
  EXPECT_EQ(a, Slurp(root_ / "b" / "traces.ndjson"));
  EXPECT_EQ(a, Slurp(root_ / "c" / "traces.ndjson"));
  // 8 pool instances, 64 ordered pairings, 2 games each.
  EXPECT_EQ(std::count(a.begin(), a.end(), '\n'), 128);
  const json summary = json::parse(Slurp(root_ / "a" / "tournament.json"));
  EXPECT_EQ(summary.at("pairings").size(), 64u);
  EXPECT_EQ(json::parse(Slurp(root_ / "a" / "config.json")).at("games_per_pairing"), 2);
  ASSERT_EQ(Run("tournament --games 2 --seed 10 --out " + P("d")).exit_code, 0);
  EXPECT_NE(a, Slurp(root_ / "d" / "traces.ndjson"));
}

TEST_F(CliTest, MetricsRegressionPipeline) {
  ASSERT_EQ(Run("tournament --games 4 --out " + P("t")).exit_code, 0);
  ASSERT_EQ(Run("metrics --traces " + P("t") + " --ci-formulas 50 --out " + P("m")).exit_code,
            0);
  ASSERT_EQ(Run("metrics --traces " + P("t/traces.ndjson") +
                " --ci-formulas 50 --serial --out " + P("m2"))
                .exit_code,
            0);
  const std::string csv = Slurp(root_ / "m" / "metrics.csv");
  EXPECT_EQ(csv, Slurp(root_ / "m2" / "metrics.csv"));
  EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 7);  // header + 6 algorithms
  EXPECT_NE(csv.find(",nats,"), std::string::npos);
  const json sidecar = json::parse(Slurp(root_ / "m" / "ci_formulas.json"));
  EXPECT_EQ(sidecar.at("formulas").size(), 50u);
  EXPECT_TRUE(json::parse(Slurp(root_ / "m" / "metrics_config.json")).contains("traces_digest"));

  ASSERT_EQ(Run("metrics --traces " + P("t") + " --ci-formulas 50 --log-base 2 --out " +
                P("bits"))
                .exit_code,
            0);
  EXPECT_NE(Slurp(root_ / "bits" / "metrics.csv").find(",bits,"), std::string::npos);

  ASSERT_EQ(Run("synth-ratings --metrics " + P("m/metrics.csv") +
                " --metric self_play --slope 0.5 --out " + P("ratings.csv"))
                .exit_code,
            0);
  ASSERT_EQ(Run("regress --metrics " + P("m/metrics.csv") + " --ratings " +
                P("ratings.csv") + " --out " + P("r"))
                .exit_code,
            0);
  const std::string table = Slurp(root_ / "r" / "regressions.csv");
  EXPECT_EQ(std::count(table.begin(), table.end(), '\n'), 1 + 18 + 2);
  EXPECT_NE(table.find("ic,all,parabolic"), std::string::npos);
  EXPECT_TRUE(fs::exists(root_ / "r" / "rating_letter_values.csv"));
}

TEST_F(CliTest, ErrorsAreJsonOnStderr) {
  const RunResult missing = Run("metrics --traces " + P("nothing") + " --out " + P("m"));
  EXPECT_EQ(missing.exit_code, 1);
  const json err = json::parse(missing.err);
  EXPECT_EQ(err.at("error").at("code"), "no_traces");
  EXPECT_FALSE(err.at("error").at("message").get<std::string>().empty());

  const RunResult usage = Run("tournament --no-such-flag");
  EXPECT_EQ(usage.exit_code, 2);
  EXPECT_EQ(json::parse(usage.err).at("error").at("code"), "usage");

  const RunResult bad_games = Run("tournament --games 0 --out " + P("x"));
  EXPECT_EQ(bad_games.exit_code, 1);
  EXPECT_EQ(json::parse(bad_games.err).at("error").at("code"), "bad_argument");

  std::ofstream(root_ / "pool.json") << R"([{"algorithm":"MysteryBot"}])";
  const RunResult bad_pool = Run("tournament --pool " + P("pool.json") + " --out " + P("x"));
  EXPECT_EQ(bad_pool.exit_code, 1);
  EXPECT_TRUE(json::parse(bad_pool.err).contains("error"));
}

TEST_F(CliTest, ExportRebuildsTheDataset) {
  {
    ExperimentConfig config;
    for (auto algorithm : {kSimpleBot, kSmartBot}) {
      AgentSpec spec;
      spec.name = spec.algorithm = std::string(algorithm);
      config.pool.push_back(spec);
    }
    config.data_dir = root_ / "data";
    ExperimentService service(config);
    const std::string id = service.CreateSession({}).at("session_id");
    service.GetObservation(id, 1);
  }
  ASSERT_EQ(Run("export --data " + P("data") + " --out " + P("export")).exit_code, 0);
  for (const char* name : {"ratings.csv", "ratings.jsonl", "games.csv", "comparisons.csv",
                           "attribution.csv"}) {
    EXPECT_TRUE(fs::exists(root_ / "export" / name)) << name;
  }
  const std::string games = Slurp(root_ / "export" / "games.csv");
  EXPECT_EQ(std::count(games.begin(), games.end(), '\n'), 2);
}

}  // namespace
}  // namespace hanabi_eval
