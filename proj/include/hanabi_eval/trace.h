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

// Game traces: the record every metric is computed from. Stored as
// newline-delimited JSON, one game per line.

#ifndef HANABI_EVAL_TRACE_H_
#define HANABI_EVAL_TRACE_H_

#include <array>
#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "hanabi_eval/agents.h"
#include "hanabi_eval/concepts.h"
#include "hanabi_eval/engine.h"
#include "hanabi_eval/knowledge.h"
#include "json.hpp"

namespace hanabi_eval {

inline constexpr int kTraceSchemaVersion = 1;

struct TurnRecord {
  int turn_index = 0;
  int seat = 0;
  int action_id = 0;
  DominanceLabel label = DominanceLabel::kNone;
  ContextFeatures context{};
  // Counters before the move.
  int hint_tokens = 0;
  int bombs_remaining = 0;
  int deck_size = 0;

  friend bool operator==(const TurnRecord&, const TurnRecord&) = default;
};

struct GameTrace {
  int64_t game_id = 0;
  uint64_t deck_seed = 0;
  RulesConfig rules;
  // Pool indices of the agents in seats 0 and 1.
  std::array<int, kNumPlayers> pool_index{};
  std::array<AgentSpec, kNumPlayers> seats;
  std::vector<TurnRecord> turns;
  int final_score = 0;
  TerminalStatus termination = TerminalStatus::kNotTerminal;
  std::array<int, kNumPlayers> turns_per_seat{};
  bool aborted = false;
  std::string abort_reason;

  friend bool operator==(const GameTrace&, const GameTrace&) = default;
};

nlohmann::json TraceToJson(const GameTrace& trace);
GameTrace TraceFromJson(const nlohmann::json& j);

void WriteTraces(const std::filesystem::path& path,
                 const std::vector<GameTrace>& traces);
std::vector<GameTrace> ReadTraces(const std::filesystem::path& path);

// Replays the recorded action ids from the deck seed and checks that every
// move is legal, the game ends where the trace ends, and the final score and
// termination match. Returns a description of the first mismatch, or an empty
// string.
std::string VerifyReplay(const GameTrace& trace);

}  // namespace hanabi_eval

#endif  // HANABI_EVAL_TRACE_H_
