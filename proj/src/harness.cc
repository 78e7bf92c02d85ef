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

#include "hanabi_eval/harness.h"

#include <algorithm>
#include <cassert>
#include <stdexcept>

namespace hanabi_eval {

using nlohmann::json;

namespace {

// Hard bound on game length: 50 plays/discards plus hints.
constexpr int kMaxTurns = 200;

bool SameInstance(const AgentSpec& a, const AgentSpec& b) {
  return a.name == b.name && a.instance_seed == b.instance_seed;
}

json SummaryJson(const std::optional<Summary>& s) {
  if (!s) return json();
  return json{{"mean", s->mean}, {"std", s->std}, {"n", s->n}};
}

}  // namespace

GameTrace PlayGame(const AgentSpec& seat0, const AgentSpec& seat1,
                   std::array<int, kNumPlayers> pool_index, uint64_t deck_seed,
                   int64_t game_id, const GameOptions& options) {
  GameTrace trace;
  trace.game_id = game_id;
  trace.deck_seed = deck_seed;
  trace.rules = options.rules;
  trace.pool_index = pool_index;
  trace.seats = {seat0, seat1};

  GameState state = NewGame(deck_seed, options.rules);
  std::optional<Card> last_played;
  try {
    std::array<std::unique_ptr<Agent>, kNumPlayers> agents;
    for (int s = 0; s < kNumPlayers; ++s) {
      agents[s] = MakeAgent(trace.seats[s],
                            DeriveSeed(DeriveSeed(trace.seats[s].instance_seed,
                                                  deck_seed),
                                       static_cast<uint64_t>(s)));
    }
    while (!state.IsTerminal()) {
      if (state.turn_index() >= kMaxTurns) {
        throw std::logic_error("game exceeded the turn bound");
      }
      const int seat = state.current_seat();
      const Observation obs = MakeObservation(state, seat);
      const Move move = agents[seat]->Act(obs);
      if (!obs.IsLegal(move)) {
        throw std::logic_error("agent returned illegal move " + move.ToString());
      }
      const HandKnowledge known = obs.OwnKnowledge(options.card_counting);
      TurnRecord record;
      record.turn_index = state.turn_index();
      record.seat = seat;
      record.action_id = move.ActionId();
      record.label = LabelMove(known, move, obs.fireworks);
      record.context = ExtractContext(obs, known, last_played);
      record.hint_tokens = obs.hint_tokens;
      record.bombs_remaining = obs.bombs_remaining;
      record.deck_size = obs.deck_size;
      const EventRecord event = state.Apply(move);
      if (move.kind == MoveKind::kPlay) last_played = event.revealed;
      trace.turns.push_back(record);
      ++trace.turns_per_seat[seat];
    }
  } catch (const std::exception& e) {
    trace.aborted = true;
    trace.abort_reason = e.what();
  }
  trace.final_score = state.Score();
  trace.termination = state.Status();
  return trace;
}

std::vector<GameTrace> RunPairing(const AgentSpec& a, const AgentSpec& b, int n,
                                  uint64_t base_seed, const GameOptions& options,
                                  Execution execution,
                                  std::array<int, kNumPlayers> pool_index,
                                  int64_t first_game_id) {
  if (n < 1) throw std::invalid_argument("a pairing needs at least one game");
  std::vector<GameTrace> traces(n);
  auto play = [&](int k) {
    const bool swap = k % 2 == 1;
    const AgentSpec& s0 = swap ? b : a;
    const AgentSpec& s1 = swap ? a : b;
    const std::array<int, kNumPlayers> idx =
        swap ? std::array<int, kNumPlayers>{pool_index[1], pool_index[0]}
             : pool_index;
    traces[k] = PlayGame(s0, s1, idx, base_seed + k, first_game_id + k, options);
  };
  if (execution == Execution::kSerial) {
    for (int k = 0; k < n; ++k) play(k);
  } else {
#pragma omp parallel for schedule(dynamic, 4)
    for (int k = 0; k < n; ++k) play(k);
  }
  return traces;
}

json TournamentConfig::ToJson() const {
  json pool_json = json::array();
  for (const AgentSpec& spec : pool) pool_json.push_back(AgentSpecToJson(spec));
  return json{
      {"pool", pool_json},
      {"games_per_pairing", games_per_pairing},
      {"base_seed", base_seed},
      {"card_counting", options.card_counting},
      {"rules",
       {{"allow_discard_at_max_tokens", options.rules.allow_discard_at_max_tokens},
        {"allow_empty_hints", options.rules.allow_empty_hints}}},
  };
}

TournamentConfig TournamentConfig::FromJson(const json& j) {
  TournamentConfig config;
  for (const json& entry : j.at("pool")) {
    config.pool.push_back(AgentSpecFromJson(entry));
  }
  config.games_per_pairing = j.value("games_per_pairing", config.games_per_pairing);
  config.base_seed = j.value("base_seed", config.base_seed);
  config.options.card_counting = j.value("card_counting", true);
  if (j.contains("rules")) {
    const json& rules = j["rules"];
    config.options.rules.allow_discard_at_max_tokens =
        rules.value("allow_discard_at_max_tokens", false);
    config.options.rules.allow_empty_hints = rules.value("allow_empty_hints", false);
  }
  if (config.pool.empty()) throw std::invalid_argument("empty agent pool");
  if (config.games_per_pairing < 1) {
    throw std::invalid_argument("games_per_pairing must be >= 1");
  }
  return config;
}

TournamentConfig DefaultTournamentConfig() {
  TournamentConfig config;
  auto add = [&](std::string name, std::string_view algorithm, uint64_t seed,
                 double threshold = kDefaultRiskThreshold) {
    AgentSpec spec;
    spec.name = std::move(name);
    spec.algorithm = std::string(algorithm);
    spec.instance_seed = seed;
    spec.risk_threshold = threshold;
    config.pool.push_back(spec);
  };
  add("RandomBot", kRandomBot, 1);
  add("RandomBot", kRandomBot, 2);
  add("RandomBot", kRandomBot, 3);
  add("SimpleBot", kSimpleBot, 0);
  add("ValueBot", kValueBot, 0);
  add("HolmesBot", kHolmesBot, 0);
  add("HolmesBot-0.8", kHolmesBot, 0, 0.8);
  add("SmartBot", kSmartBot, 0);
  return config;
}

std::vector<double> PairingResult::CompletedScores() const {
  std::vector<double> scores;
  for (const GameTrace& t : traces) {
    if (!t.aborted) scores.push_back(t.final_score);
  }
  return scores;
}

int PairingResult::AbortedGames() const {
  return static_cast<int>(std::count_if(traces.begin(), traces.end(),
                                        [](const GameTrace& t) { return t.aborted; }));
}

std::vector<GameTrace> TournamentResult::AllTraces() const {
  std::vector<GameTrace> all;
  for (const PairingResult& p : pairings) {
    all.insert(all.end(), p.traces.begin(), p.traces.end());
  }
  return all;
}

TournamentResult RunTournament(const TournamentConfig& config, Execution execution) {
  const int pool_size = static_cast<int>(config.pool.size());
  const int n = config.games_per_pairing;
  const int num_pairings = pool_size * pool_size;
  TournamentResult result;
  result.config = config;
  result.pairings.resize(num_pairings);
  for (int p = 0; p < num_pairings; ++p) {
    result.pairings[p].first = p / pool_size;
    result.pairings[p].second = p % pool_size;
    result.pairings[p].traces.resize(n);
  }
  // One flat loop over every game keeps all workers busy across pairings.
  const long total = static_cast<long>(num_pairings) * n;
  auto play = [&](long task) {
    const int p = static_cast<int>(task / n);
    const int k = static_cast<int>(task % n);
    PairingResult& pairing = result.pairings[p];
    const bool swap = k % 2 == 1;
    const int i0 = swap ? pairing.second : pairing.first;
    const int i1 = swap ? pairing.first : pairing.second;
    pairing.traces[k] =
        PlayGame(config.pool[i0], config.pool[i1], {i0, i1},
                 config.base_seed + static_cast<uint64_t>(task), task, config.options);
  };
  if (execution == Execution::kSerial) {
    for (long task = 0; task < total; ++task) play(task);
  } else {
#pragma omp parallel for schedule(dynamic, 8)
    for (long task = 0; task < total; ++task) play(task);
  }
  return result;
}

std::vector<std::string> AlgorithmNames(std::span<const AgentSpec> pool) {
  std::vector<std::string> names;
  for (const AgentSpec& spec : pool) {
    if (std::find(names.begin(), names.end(), spec.name) == names.end()) {
      names.push_back(spec.name);
    }
  }
  return names;
}

std::optional<Summary> SelfPlayScore(const std::string& name,
                                     std::span<const GameTrace> traces) {
  std::vector<double> scores;
  for (const GameTrace& t : traces) {
    if (t.aborted || t.seats[0].name != name) continue;
    if (SameInstance(t.seats[0], t.seats[1])) scores.push_back(t.final_score);
  }
  return Summarize(scores);
}

std::optional<Summary> IntraXpScore(const std::string& name,
                                    std::span<const AgentSpec> pool,
                                    std::span<const GameTrace> traces) {
  const auto instances = std::count_if(pool.begin(), pool.end(),
                                       [&](const AgentSpec& s) { return s.name == name; });
  if (instances < 2) return std::nullopt;
  std::vector<double> scores;
  for (const GameTrace& t : traces) {
    if (t.aborted || t.seats[0].name != name || t.seats[1].name != name) continue;
    if (!SameInstance(t.seats[0], t.seats[1])) scores.push_back(t.final_score);
  }
  return Summarize(scores);
}

std::optional<Summary> InterXpScore(const std::string& name,
                                    std::span<const AgentSpec> pool,
                                    std::span<const GameTrace> traces) {
  const bool has_other = std::any_of(pool.begin(), pool.end(),
                                     [&](const AgentSpec& s) { return s.name != name; });
  if (!has_other) return std::nullopt;
  std::vector<double> scores;
  for (const GameTrace& t : traces) {
    if (t.aborted) continue;
    const bool a = t.seats[0].name == name;
    const bool b = t.seats[1].name == name;
    if (a != b) scores.push_back(t.final_score);
  }
  return Summarize(scores);
}

std::vector<ScoreReport> ScoreReports(std::span<const AgentSpec> pool,
                                      std::span<const GameTrace> traces) {
  std::vector<ScoreReport> reports;
  for (const std::string& name : AlgorithmNames(pool)) {
    reports.push_back(ScoreReport{name, SelfPlayScore(name, traces),
                                  IntraXpScore(name, pool, traces),
                                  InterXpScore(name, pool, traces)});
  }
  return reports;
}

json TournamentSummaryJson(const TournamentResult& result) {
  json pairings = json::array();
  for (const PairingResult& p : result.pairings) {
    const std::vector<double> scores = p.CompletedScores();
    pairings.push_back({{"first", p.first},
                        {"second", p.second},
                        {"games", p.traces.size()},
                        {"aborted", p.AbortedGames()},
                        {"score", SummaryJson(Summarize(scores))}});
  }
  json agents = json::array();
  const std::vector<GameTrace> traces = result.AllTraces();
  for (const ScoreReport& r : ScoreReports(result.config.pool, traces)) {
    agents.push_back({{"name", r.name},
                      {"self_play", SummaryJson(r.self_play)},
                      {"intra_xp", SummaryJson(r.intra_xp)},
                      {"inter_xp", SummaryJson(r.inter_xp)}});
  }
  return json{{"schema", kTraceSchemaVersion},
              {"config", result.config.ToJson()},
              {"pairings", pairings},
              {"agents", agents}};
}

}  // namespace hanabi_eval
