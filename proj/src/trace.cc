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

#include "hanabi_eval/trace.h"

#include <fstream>
#include <stdexcept>

namespace hanabi_eval {

using nlohmann::json;

namespace {

TerminalStatus StatusFromName(const std::string& name) {
  for (auto s : {TerminalStatus::kNotTerminal, TerminalStatus::kPerfect,
                 TerminalStatus::kDeckExhausted, TerminalStatus::kBombedOut}) {
    if (TerminalStatusName(s) == name) return s;
  }
  throw std::invalid_argument("unknown termination: " + name);
}

}  // namespace

json TraceToJson(const GameTrace& trace) {
  json j;
  j["schema"] = kTraceSchemaVersion;
  j["game_id"] = trace.game_id;
  j["deck_seed"] = trace.deck_seed;
  j["rules"] = {{"allow_discard_at_max_tokens", trace.rules.allow_discard_at_max_tokens},
                {"allow_empty_hints", trace.rules.allow_empty_hints}};
  j["pool_index"] = trace.pool_index;
  j["seats"] = {AgentSpecToJson(trace.seats[0]), AgentSpecToJson(trace.seats[1])};
  // Compact per-turn rows:
  // [turn, seat, action, label, hints, bombs, deck, [context...]]
  json turns = json::array();
  for (const TurnRecord& t : trace.turns) {
    json ctx = json::array();
    for (int8_t v : t.context) ctx.push_back(static_cast<int>(v));
    turns.push_back(json::array({t.turn_index, t.seat, t.action_id,
                                 std::string(DominanceLabelName(t.label)),
                                 t.hint_tokens, t.bombs_remaining, t.deck_size,
                                 ctx}));
  }
  j["turns"] = turns;
  j["score"] = trace.final_score;
  j["termination"] = std::string(TerminalStatusName(trace.termination));
  j["turns_per_seat"] = trace.turns_per_seat;
  j["aborted"] = trace.aborted;
  if (trace.aborted) j["abort_reason"] = trace.abort_reason;
  return j;
}

GameTrace TraceFromJson(const json& j) {
  if (j.at("schema").get<int>() != kTraceSchemaVersion) {
    throw std::invalid_argument("unsupported trace schema");
  }
  GameTrace trace;
  trace.game_id = j.at("game_id").get<int64_t>();
  trace.deck_seed = j.at("deck_seed").get<uint64_t>();
  trace.rules.allow_discard_at_max_tokens =
      j.at("rules").at("allow_discard_at_max_tokens").get<bool>();
  trace.rules.allow_empty_hints = j.at("rules").at("allow_empty_hints").get<bool>();
  trace.pool_index = j.at("pool_index").get<std::array<int, kNumPlayers>>();
  for (int s = 0; s < kNumPlayers; ++s) {
    trace.seats[s] = AgentSpecFromJson(j.at("seats").at(s));
  }
  for (const json& row : j.at("turns")) {
    TurnRecord t;
    t.turn_index = row.at(0).get<int>();
    t.seat = row.at(1).get<int>();
    t.action_id = row.at(2).get<int>();
    auto label = DominanceLabelFromName(row.at(3).get<std::string>());
    if (!label) throw std::invalid_argument("unknown dominance label");
    t.label = *label;
    t.hint_tokens = row.at(4).get<int>();
    t.bombs_remaining = row.at(5).get<int>();
    t.deck_size = row.at(6).get<int>();
    const json& ctx = row.at(7);
    if (ctx.size() != kNumFeatures) throw std::invalid_argument("bad context row");
    for (int f = 0; f < kNumFeatures; ++f) {
      t.context[f] = static_cast<int8_t>(ctx.at(f).get<int>());
    }
    trace.turns.push_back(t);
  }
  trace.final_score = j.at("score").get<int>();
  trace.termination = StatusFromName(j.at("termination").get<std::string>());
  trace.turns_per_seat = j.at("turns_per_seat").get<std::array<int, kNumPlayers>>();
  trace.aborted = j.at("aborted").get<bool>();
  trace.abort_reason = j.value("abort_reason", std::string());
  return trace;
}

void WriteTraces(const std::filesystem::path& path,
                 const std::vector<GameTrace>& traces) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  for (const GameTrace& t : traces) out << TraceToJson(t).dump() << '\n';
  if (!out) throw std::runtime_error("write failed: " + path.string());
}

std::vector<GameTrace> ReadTraces(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + path.string());
  std::vector<GameTrace> traces;
  std::string line;
  int line_number = 0;
  while (std::getline(in, line)) {
    ++line_number;
    if (line.empty()) continue;
    try {
      traces.push_back(TraceFromJson(json::parse(line)));
    } catch (const std::exception& e) {
      throw std::runtime_error(path.string() + ":" + std::to_string(line_number) +
                               ": " + e.what());
    }
  }
  return traces;
}

std::string VerifyReplay(const GameTrace& trace) {
  GameState state = NewGame(trace.deck_seed, trace.rules);
  std::array<int, kNumPlayers> turns{};
  for (const TurnRecord& t : trace.turns) {
    if (state.IsTerminal()) {
      return "game over before turn " + std::to_string(t.turn_index);
    }
    if (t.turn_index != state.turn_index() || t.seat != state.current_seat()) {
      return "turn bookkeeping mismatch at turn " + std::to_string(t.turn_index);
    }
    const Move move = Move::FromActionId(t.action_id);
    if (auto reason = state.CheckMove(move)) {
      return "illegal move at turn " + std::to_string(t.turn_index) + ": " + *reason;
    }
    state.Apply(move);
    ++turns[t.seat];
  }
  if (turns != trace.turns_per_seat) return "turn counts do not match records";
  if (trace.aborted) return {};
  if (!state.IsTerminal()) return "trace ends before the game does";
  if (state.Score() != trace.final_score) {
    return "replayed score " + std::to_string(state.Score()) + " != recorded " +
           std::to_string(trace.final_score);
  }
  if (state.Status() != trace.termination) return "termination kind mismatch";
  return {};
}

}  // namespace hanabi_eval
