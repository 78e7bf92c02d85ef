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


// Human-AI experiment sessions. Each session pairs a participant with two
// distinct bots for two blocks of four games. The first game of each block
// is a practice game; games 2-4 are analysis-eligible. Every state change is
// appended to a JSONL event log, and the exported dataset is computed from
// that log alone.
//
// Sessions are independent. Operations on one session are serialized by a
// per-session mutex; the log has its own mutex.

#ifndef HANABI_EVAL_EXPERIMENT_H_
#define HANABI_EVAL_EXPERIMENT_H_

#include <array>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <shared_mutex>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "hanabi_eval/agents.h"
#include "hanabi_eval/engine.h"
#include "hanabi_eval/rng.h"
#include "hanabi_eval/stats.h"
#include "json.hpp"

namespace hanabi_eval {

inline constexpr int kExperimentSchemaVersion = 1;
inline constexpr int kGamesPerBlock = 4;
inline constexpr int kBlocksPerSession = 2;
inline constexpr int kGamesPerSession = kGamesPerBlock * kBlocksPerSession;
inline constexpr int kHumanSeat = 0;
inline constexpr int kBlockSurveyItems = 8;
inline constexpr int kFinalSurveyItems = 7;

// Error with an HTTP-style status and a stable machine-readable code.
class ExperimentError : public std::runtime_error {
 public:
  ExperimentError(int status, std::string code, const std::string& message)
      : std::runtime_error(message), status_(status), code_(std::move(code)) {}
  int status() const { return status_; }
  const std::string& code() const { return code_; }

 private:
  int status_;
  std::string code_;
};

// Chooses the ordered bot pair for each new session. Only pairs that keep
// per-bot session counts within one of each other are eligible; among those
// the least-used ordered pairs are preferred, ties broken at random.
class AssignmentBalancer {
 public:
  AssignmentBalancer(int pool_size, uint64_t seed, int max_sessions_per_bot = 0);

  std::pair<int, int> Next();
  // Counts an assignment made elsewhere (log replay).
  void Record(std::pair<int, int> pair);

  const std::vector<int>& bot_counts() const { return bot_counts_; }
  int PairCount(int first, int second) const;

 private:
  int pool_size_;
  int max_sessions_per_bot_;
  Rng rng_;
  std::vector<int> bot_counts_;
  std::vector<int> pair_counts_;
};

struct ExperimentConfig {
  std::vector<AgentSpec> pool;
  std::filesystem::path data_dir;
  uint64_t seed = 1;
  RulesConfig rules;
  // Basis of "known" for the dominance labels stored with each move.
  bool card_counting = true;
  int max_sessions_per_bot = 0;  // 0 = unlimited
  ItemCoding coding;

  static ExperimentConfig FromJson(const nlohmann::json& j);
};

class ExperimentService {
 public:
  // Opens (or creates) data_dir/events.jsonl and rebuilds every session found
  // in it by replaying the logged human moves.
  explicit ExperimentService(ExperimentConfig config);
  ~ExperimentService();

  ExperimentService(const ExperimentService&) = delete;
  ExperimentService& operator=(const ExperimentService&) = delete;

  // Body fields (all optional): familiarity, screened.
  nlohmann::json CreateSession(const nlohmann::json& body);
  nlohmann::json GetSession(const std::string& id);
  nlohmann::json GetObservation(const std::string& id, int game);
  // Body: {"action_id": n}.
  nlohmann::json SubmitMove(const std::string& id, int game, const nlohmann::json& body);
  nlohmann::json FlagQuestionable(const std::string& id, int game);
  // Body: {"block": 1|2, "items": [B1..B8]} with responses 1..7.
  nlohmann::json SubmitBlockSurvey(const std::string& id, const nlohmann::json& body);
  // Body: {"items": [P1..P7]} with responses 1..7.
  nlohmann::json SubmitFinalSurvey(const std::string& id, const nlohmann::json& body);
  nlohmann::json Export();

  void Flush();
  const std::filesystem::path& log_path() const { return log_path_; }
  const ExperimentConfig& config() const { return config_; }

 private:
  struct Game;
  struct Session;

  std::shared_ptr<Session> Find(const std::string& id);
  Game& ActiveGame(Session& s, int number);
  void StartGame(Session& s, int number);
  // Applies one move for the seat to act and logs it.
  nlohmann::json ApplyAndLog(Session& s, Game& g, Move move);
  void BotReply(Session& s, Game& g, nlohmann::json* out);
  nlohmann::json GameView(const Session& s, const Game& g) const;
  nlohmann::json SessionView(const Session& s) const;
  void Append(nlohmann::json record);
  void Replay(const std::vector<nlohmann::json>& events);

  ExperimentConfig config_;
  std::filesystem::path log_path_;
  std::mutex log_mutex_;
  std::ofstream log_;
  int64_t next_seq_ = 0;
  std::mutex create_mutex_;
  Rng id_rng_;
  AssignmentBalancer balancer_;
  std::shared_mutex sessions_mutex_;
  std::map<std::string, std::shared_ptr<Session>> sessions_;
  bool replaying_ = false;
};

std::vector<nlohmann::json> ReadEventLog(const std::filesystem::path& path);

// Tables derived from an event log.
struct Dataset {
  // One row per completed block survey.
  std::vector<RatingRecord> ratings;
  std::string ratings_csv;    // session_id, block, bot, B1..B8, ratings, scores
  std::string ratings_jsonl;
  std::string games_csv;      // every game with its score and eligibility
  std::string comparisons_csv;
  // Questionable-move clicks by category of the referenced bot move.
  std::string attribution_csv;
  nlohmann::json attribution;
};

Dataset ExportDataset(const std::vector<nlohmann::json>& events,
                      const ItemCoding& coding = {});

}  // namespace hanabi_eval

#endif  // HANABI_EVAL_EXPERIMENT_H_
