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

// Seeded tournament runner and the score aggregates built on its traces:
// self-play, intra-algorithm cross-play and inter-algorithm cross-play.
//
// Games are independent, so both the pairing and the tournament loops have a
// serial reference implementation and an OpenMP one. Each game writes into
// its own pre-sized output slot, which makes the parallel result identical to
// the serial one regardless of scheduling.

#ifndef HANABI_EVAL_HARNESS_H_
#define HANABI_EVAL_HARNESS_H_

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "hanabi_eval/agents.h"
#include "hanabi_eval/summary.h"
#include "hanabi_eval/trace.h"
#include "json.hpp"

namespace hanabi_eval {

enum class Execution { kSerial, kParallel };

struct GameOptions {
  RulesConfig rules;
  // Whether "known" (dominance labels, context features) uses card counting.
  bool card_counting = true;
};

// Plays one game to completion. Agent failures (external policies) produce an
// aborted trace instead of throwing.
GameTrace PlayGame(const AgentSpec& seat0, const AgentSpec& seat1,
                   std::array<int, kNumPlayers> pool_index, uint64_t deck_seed,
                   int64_t game_id, const GameOptions& options);

// n games with deck seeds base_seed .. base_seed + n - 1. `a` takes seat 0 in
// even games and seat 1 in odd ones.
std::vector<GameTrace> RunPairing(const AgentSpec& a, const AgentSpec& b, int n,
                                  uint64_t base_seed, const GameOptions& options,
                                  Execution execution,
                                  std::array<int, kNumPlayers> pool_index = {0, 1},
                                  int64_t first_game_id = 0);

struct TournamentConfig {
  std::vector<AgentSpec> pool;
  int games_per_pairing = 125;
  uint64_t base_seed = 20230101;
  GameOptions options;

  nlohmann::json ToJson() const;
  static TournamentConfig FromJson(const nlohmann::json& j);
};

// RandomBot x3 (seeds 1-3), SimpleBot, ValueBot, HolmesBot, HolmesBot with a
// 0.8 risk threshold, SmartBot.
TournamentConfig DefaultTournamentConfig();

struct PairingResult {
  int first = 0;   // pool index of the agent in seat 0 of even games
  int second = 0;
  std::vector<GameTrace> traces;

  std::vector<double> CompletedScores() const;
  int AbortedGames() const;
};

struct TournamentResult {
  TournamentConfig config;
  std::vector<PairingResult> pairings;  // row-major over (first, second)

  std::vector<GameTrace> AllTraces() const;
};

// Every ordered pairing of the pool, self-pairings included. Pairing p uses
// deck seeds base_seed + p * n ...
TournamentResult RunTournament(const TournamentConfig& config, Execution execution);

// Distinct algorithm names in pool order.
std::vector<std::string> AlgorithmNames(std::span<const AgentSpec> pool);

// Games where both seats are the same instance of `name`.
std::optional<Summary> SelfPlayScore(const std::string& name,
                                     std::span<const GameTrace> traces);

// Games between two distinct instances of `name`. nullopt ("not applicable")
// when the pool holds fewer than two instances of it.
std::optional<Summary> IntraXpScore(const std::string& name,
                                    std::span<const AgentSpec> pool,
                                    std::span<const GameTrace> traces);

// Games between `name` and any other algorithm, pooled. nullopt when the pool
// has no other algorithm.
std::optional<Summary> InterXpScore(const std::string& name,
                                    std::span<const AgentSpec> pool,
                                    std::span<const GameTrace> traces);

struct ScoreReport {
  std::string name;
  std::optional<Summary> self_play;
  std::optional<Summary> intra_xp;
  std::optional<Summary> inter_xp;
};

std::vector<ScoreReport> ScoreReports(std::span<const AgentSpec> pool,
                                      std::span<const GameTrace> traces);

nlohmann::json TournamentSummaryJson(const TournamentResult& result);

}  // namespace hanabi_eval

#endif  // HANABI_EVAL_HARNESS_H_
