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


#include "hanabi_eval/experiment.h"

#include <algorithm>
#include <chrono>
#include <ctime>
#include <set>
#include <sstream>

#include "hanabi_eval/hash.h"
#include "hanabi_eval/knowledge.h"
#include "hanabi_eval/observation_json.h"

namespace hanabi_eval {

using nlohmann::json;

namespace {

const char* PartnerLabel(int slot) { return slot == 0 ? "first" : "second"; }

std::string Timestamp() {
  const auto now = std::chrono::system_clock::now();
  const std::time_t t = std::chrono::system_clock::to_time_t(now);
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

std::vector<int> ParseItems(const json& body, size_t count) {
  if (!body.is_object() || !body.contains("items") || !body["items"].is_array()) {
    throw ExperimentError(400, "bad_request", "body needs an items array");
  }
  const json& items = body["items"];
  if (items.size() != count) {
    throw ExperimentError(400, "bad_request",
                          "expected " + std::to_string(count) + " items");
  }
  std::vector<int> values;
  for (const json& item : items) {
    if (!item.is_number_integer()) {
      throw ExperimentError(400, "bad_request", "items must be integers");
    }
    const int v = item.get<int>();
    if (v < 1 || v > 7) {
      throw ExperimentError(400, "out_of_range", "items must lie in 1..7");
    }
    values.push_back(v);
  }
  return values;
}

const char* MoveCategory(int action_id) {
  switch (Move::FromActionId(action_id).kind) {
    case MoveKind::kPlay: return "play";
    case MoveKind::kDiscard: return "discard";
    default: return "hint";
  }
}

std::string Num(double v) {
  std::ostringstream out;
  out.precision(10);
  out << v;
  return out.str();
}

}  // namespace

AssignmentBalancer::AssignmentBalancer(int pool_size, uint64_t seed,
                                       int max_sessions_per_bot)
    : pool_size_(pool_size),
      max_sessions_per_bot_(max_sessions_per_bot),
      rng_(seed),
      bot_counts_(pool_size, 0),
      pair_counts_(pool_size * pool_size, 0) {
  if (pool_size < 2) {
    throw ExperimentError(400, "pool_too_small", "the agent pool needs at least two bots");
  }
}

int AssignmentBalancer::PairCount(int first, int second) const {
  return pair_counts_[first * pool_size_ + second];
}

std::pair<int, int> AssignmentBalancer::Next() {
  const int low = *std::min_element(bot_counts_.begin(), bot_counts_.end());
  std::vector<int> least, next;
  for (int i = 0; i < pool_size_; ++i) {
    if (bot_counts_[i] == low) least.push_back(i);
    if (bot_counts_[i] == low + 1) next.push_back(i);
  }
  std::vector<std::pair<int, int>> candidates;
  auto add_both = [&](int a, int b) {
    candidates.emplace_back(a, b);
    candidates.emplace_back(b, a);
  };
  if (least.size() >= 2) {
    for (size_t i = 0; i < least.size(); ++i) {
      for (size_t j = i + 1; j < least.size(); ++j) add_both(least[i], least[j]);
    }
  } else {
    for (int b : next) add_both(least[0], b);
  }
  if (max_sessions_per_bot_ > 0) {
    std::erase_if(candidates, [&](const std::pair<int, int>& p) {
      return bot_counts_[p.first] >= max_sessions_per_bot_ ||
             bot_counts_[p.second] >= max_sessions_per_bot_;
    });
  }
  if (candidates.empty()) {
    throw ExperimentError(409, "pool_exhausted", "no bot pair is available");
  }
  int best = INT32_MAX;
  for (const auto& p : candidates) best = std::min(best, PairCount(p.first, p.second));
  std::erase_if(candidates, [&](const std::pair<int, int>& p) {
    return PairCount(p.first, p.second) != best;
  });
  const auto choice = candidates[rng_.UniformInt(static_cast<int>(candidates.size()))];
  Record(choice);
  return choice;
}

void AssignmentBalancer::Record(std::pair<int, int> pair) {
  ++bot_counts_[pair.first];
  ++bot_counts_[pair.second];
  ++pair_counts_[pair.first * pool_size_ + pair.second];
}

ExperimentConfig ExperimentConfig::FromJson(const json& j) {
  ExperimentConfig config;
  for (const json& entry : j.at("pool")) config.pool.push_back(AgentSpecFromJson(entry));
  if (j.contains("data_dir")) config.data_dir = j["data_dir"].get<std::string>();
  config.seed = j.value("seed", config.seed);
  config.card_counting = j.value("card_counting", config.card_counting);
  config.max_sessions_per_bot = j.value("max_sessions_per_bot", 0);
  config.coding.offset = j.value("item_coding_offset", config.coding.offset);
  if (j.contains("rules")) {
    config.rules.allow_discard_at_max_tokens =
        j["rules"].value("allow_discard_at_max_tokens", false);
    config.rules.allow_empty_hints = j["rules"].value("allow_empty_hints", false);
  }
  return config;
}

struct ExperimentService::Game {
  int number = 0;
  int block = 0;
  int partner_slot = 0;
  bool test = false;
  uint64_t deck_seed = 0;
  GameState state;
  std::unique_ptr<Agent> bot;
  std::vector<int> actions;
  int last_bot_turn = -1;
  int last_bot_action = -1;
  DominanceLabel last_bot_label = DominanceLabel::kNone;
  std::optional<json> last_bot_event;

  Game(int n, uint64_t seed, const RulesConfig& rules)
      : number(n),
        block((n - 1) / kGamesPerBlock + 1),
        partner_slot((n - 1) / kGamesPerBlock),
        test((n - 1) % kGamesPerBlock == 0),
        deck_seed(seed),
        state(NewGame(seed, rules)) {}
};

struct ExperimentService::Session {
  std::mutex mu;
  std::string id;
  int index = 0;
  std::array<int, 2> bots{};
  uint64_t seed = 0;
  json familiarity;
  bool screened = false;
  std::vector<std::unique_ptr<Game>> games;
  std::array<bool, kBlocksPerSession> block_survey_done{};
  bool final_done = false;
};

ExperimentService::ExperimentService(ExperimentConfig config)
    : config_(std::move(config)),
      id_rng_(config_.seed),
      balancer_(static_cast<int>(config_.pool.size()), DeriveSeed(config_.seed, 0xba1),
                config_.max_sessions_per_bot) {
  for (const AgentSpec& spec : config_.pool) {
    if (!IsKnownAlgorithm(spec.algorithm)) {
      throw std::invalid_argument("unknown algorithm in pool: " + spec.algorithm);
    }
  }
  if (config_.data_dir.empty()) throw std::invalid_argument("data_dir is required");
  std::filesystem::create_directories(config_.data_dir);
  log_path_ = config_.data_dir / "events.jsonl";
  if (std::filesystem::exists(log_path_)) Replay(ReadEventLog(log_path_));
  log_.open(log_path_, std::ios::app | std::ios::binary);
  if (!log_) throw std::runtime_error("cannot open event log " + log_path_.string());
}

ExperimentService::~ExperimentService() { Flush(); }

void ExperimentService::Flush() {
  std::lock_guard<std::mutex> lock(log_mutex_);
  if (log_.is_open()) log_.flush();
}

void ExperimentService::Append(json record) {
  if (replaying_) return;
  std::lock_guard<std::mutex> lock(log_mutex_);
  record["schema"] = kExperimentSchemaVersion;
  record["seq"] = next_seq_++;
  record["ts"] = Timestamp();
  log_ << record.dump() << '\n';
  log_.flush();
  if (!log_) throw std::runtime_error("event log write failed");
}

std::shared_ptr<ExperimentService::Session> ExperimentService::Find(const std::string& id) {
  std::shared_lock<std::shared_mutex> lock(sessions_mutex_);
  auto it = sessions_.find(id);
  if (it == sessions_.end()) {
    throw ExperimentError(404, "session_not_found", "unknown session");
  }
  return it->second;
}

json ExperimentService::CreateSession(const json& body) {
  if (!body.is_null() && !body.is_object()) {
    throw ExperimentError(400, "bad_request", "body must be a JSON object");
  }
  auto session = std::make_shared<Session>();
  std::unique_lock<std::mutex> create(create_mutex_);
  {
    std::shared_lock<std::shared_mutex> lock(sessions_mutex_);
    session->index = static_cast<int>(sessions_.size());
  }
  const auto [first, second] = balancer_.Next();
  session->bots = {first, second};
  session->id = HashHex(DeriveSeed(config_.seed, 2 * session->index + 1)) +
                HashHex(DeriveSeed(id_rng_.Next(), session->index));
  session->seed = DeriveSeed(config_.seed ^ 0x5e55'10ULL, session->index);
  if (body.is_object()) {
    session->familiarity = body.value("familiarity", json());
    session->screened = body.value("screened", false);
  }
  Append({{"type", "session_created"},
          {"session", session->id},
          {"index", session->index},
          {"pool_index", {first, second}},
          {"bots", {AgentSpecToJson(config_.pool[first]), AgentSpecToJson(config_.pool[second])}},
          {"seed", session->seed},
          {"familiarity", session->familiarity},
          {"screened", session->screened}});
  {
    std::unique_lock<std::shared_mutex> lock(sessions_mutex_);
    sessions_[session->id] = session;
  }
  create.unlock();
  std::lock_guard<std::mutex> lock(session->mu);
  return SessionView(*session);
}

json ExperimentService::SessionView(const Session& s) const {
  json games = json::array();
  for (int n = 1; n <= kGamesPerSession; ++n) {
    json g = {{"number", n},
              {"block", (n - 1) / kGamesPerBlock + 1},
              {"partner", PartnerLabel((n - 1) / kGamesPerBlock)},
              {"test", (n - 1) % kGamesPerBlock == 0}};
    if (n <= static_cast<int>(s.games.size())) {
      const GameState& state = s.games[n - 1]->state;
      g["status"] = state.IsTerminal() ? "finished" : "active";
      g["score"] = state.Score();
    } else {
      g["status"] = "pending";
    }
    games.push_back(g);
  }
  std::string status = s.final_done ? "closed" : "active";
  return {{"schema", kExperimentSchemaVersion},
          {"session_id", s.id},
          {"status", status},
          {"partners", {"first", "second"}},
          {"games", games},
          {"block_surveys_done", s.block_survey_done},
          {"final_survey_done", s.final_done}};
}

json ExperimentService::GetSession(const std::string& id) {
  auto s = Find(id);
  std::lock_guard<std::mutex> lock(s->mu);
  return SessionView(*s);
}

void ExperimentService::StartGame(Session& s, int number) {
  auto game = std::make_unique<Game>(number, DeriveSeed(s.seed, number), config_.rules);
  const AgentSpec& spec = config_.pool[s.bots[game->partner_slot]];
  game->bot = MakeAgent(spec, DeriveSeed(DeriveSeed(spec.instance_seed, game->deck_seed),
                                         1 - kHumanSeat));
  Append({{"type", "game_started"},
          {"session", s.id},
          {"game", number},
          {"block", game->block},
          {"partner", PartnerLabel(game->partner_slot)},
          {"test", game->test},
          {"deck_seed", game->deck_seed}});
  s.games.push_back(std::move(game));
}

ExperimentService::Game& ExperimentService::ActiveGame(Session& s, int number) {
  if (number < 1 || number > kGamesPerSession) {
    throw ExperimentError(404, "game_not_found", "no such game");
  }
  const int started = static_cast<int>(s.games.size());
  if (number <= started) return *s.games[number - 1];
  const bool previous_done = number == 1 || (number == started + 1 &&
                                             s.games[started - 1]->state.IsTerminal());
  const bool survey_gate =
      (number - 1) % kGamesPerBlock != 0 || number == 1 ||
      s.block_survey_done[(number - 1) / kGamesPerBlock - 1];
  if (number != started + 1 || !previous_done || !survey_gate) {
    throw ExperimentError(404, "game_not_found", "game is not available yet");
  }
  StartGame(s, number);
  return *s.games.back();
}

json ExperimentService::ApplyAndLog(Session& s, Game& g, Move move) {
  const int seat = g.state.current_seat();
  const Observation obs = MakeObservation(g.state, seat);
  const DominanceLabel label =
      LabelMove(obs.OwnKnowledge(config_.card_counting), move, obs.fireworks);
  const EventRecord event = g.state.Apply(move);
  g.actions.push_back(move.ActionId());
  json view = EventToJson(event);
  view["actor"] = seat == kHumanSeat ? "human" : "bot";
  Append({{"type", "move"},
          {"session", s.id},
          {"game", g.number},
          {"turn", event.turn_index},
          {"seat", seat},
          {"actor", seat == kHumanSeat ? "human" : "bot"},
          {"action_id", move.ActionId()},
          {"label", std::string(DominanceLabelName(label))},
          {"score", g.state.Score()}});
  if (seat != kHumanSeat) {
    g.last_bot_turn = event.turn_index;
    g.last_bot_action = move.ActionId();
    g.last_bot_label = label;
    g.last_bot_event = view;
  }
  if (g.state.IsTerminal()) {
    Append({{"type", "game_over"},
            {"session", s.id},
            {"game", g.number},
            {"score", g.state.Score()},
            {"termination", std::string(TerminalStatusName(g.state.Status()))},
            {"turns", g.state.turn_index()}});
  }
  return view;
}

void ExperimentService::BotReply(Session& s, Game& g, json* out) {
  if (g.state.IsTerminal() || g.state.current_seat() == kHumanSeat) return;
  Move move;
  try {
    move = g.bot->Act(MakeObservation(g.state, 1 - kHumanSeat));
  } catch (const std::exception& e) {
    throw ExperimentError(502, "bot_failed", e.what());
  }
  if (auto reason = g.state.CheckMove(move)) {
    throw ExperimentError(502, "bot_failed", "bot chose an illegal move: " + *reason);
  }
  json view = ApplyAndLog(s, g, move);
  if (out) *out = view;
}

json ExperimentService::GameView(const Session& s, const Game& g) const {
  const Observation obs = MakeObservation(g.state, kHumanSeat);
  json view = {{"schema", kExperimentSchemaVersion},
               {"session_id", s.id},
               {"game", g.number},
               {"block", g.block},
               {"partner", PartnerLabel(g.partner_slot)},
               {"test", g.test},
               {"score", g.state.Score()},
               {"terminal", g.state.IsTerminal()},
               {"termination", std::string(TerminalStatusName(g.state.Status()))},
               {"observation", ObservationToJson(obs, /*own_candidates=*/false)},
               {"last_bot_move", g.last_bot_event ? *g.last_bot_event : json()}};
  return view;
}

json ExperimentService::GetObservation(const std::string& id, int game) {
  auto s = Find(id);
  std::lock_guard<std::mutex> lock(s->mu);
  Game& g = ActiveGame(*s, game);
  BotReply(*s, g, nullptr);  // only acts after an earlier bot failure
  return GameView(*s, g);
}

json ExperimentService::SubmitMove(const std::string& id, int game, const json& body) {
  auto s = Find(id);
  std::lock_guard<std::mutex> lock(s->mu);
  Game& g = ActiveGame(*s, game);
  if (g.state.IsTerminal()) {
    throw ExperimentError(409, "game_over", "the game has ended");
  }
  if (g.state.current_seat() != kHumanSeat) {
    throw ExperimentError(409, "not_your_turn", "waiting for the partner");
  }
  if (!body.is_object() || !body.contains("action_id") ||
      !body["action_id"].is_number_integer()) {
    throw ExperimentError(400, "bad_request", "body needs an integer action_id");
  }
  const int action_id = body["action_id"].get<int>();
  if (action_id < 0 || action_id >= kNumActions) {
    throw ExperimentError(422, "illegal_move", "action_id out of range");
  }
  const Move move = Move::FromActionId(action_id);
  if (auto reason = g.state.CheckMove(move)) {
    throw ExperimentError(422, "illegal_move", *reason);
  }
  json human = ApplyAndLog(*s, g, move);
  json bot;
  BotReply(*s, g, &bot);
  json view = GameView(*s, g);
  view["human_move"] = human;
  view["bot_move"] = bot;
  return view;
}

json ExperimentService::FlagQuestionable(const std::string& id, int game) {
  auto s = Find(id);
  std::lock_guard<std::mutex> lock(s->mu);
  if (game < 1 || game > static_cast<int>(s->games.size())) {
    throw ExperimentError(404, "game_not_found", "no such game");
  }
  Game& g = *s->games[game - 1];
  if (g.last_bot_turn < 0) {
    throw ExperimentError(409, "no_bot_move", "the partner has not moved yet");
  }
  Append({{"type", "questionable"},
          {"session", s->id},
          {"game", game},
          {"referenced_turn", g.last_bot_turn},
          {"action_id", g.last_bot_action},
          {"label", std::string(DominanceLabelName(g.last_bot_label))}});
  return {{"schema", kExperimentSchemaVersion},
          {"acknowledged", true},
          {"referenced_turn", g.last_bot_turn}};
}

json ExperimentService::SubmitBlockSurvey(const std::string& id, const json& body) {
  auto s = Find(id);
  std::lock_guard<std::mutex> lock(s->mu);
  if (!body.is_object() || !body.contains("block") || !body["block"].is_number_integer()) {
    throw ExperimentError(400, "bad_request", "body needs an integer block");
  }
  const int block = body["block"].get<int>();
  if (block < 1 || block > kBlocksPerSession) {
    throw ExperimentError(400, "out_of_range", "block must be 1 or 2");
  }
  const std::vector<int> items = ParseItems(body, kBlockSurveyItems);
  if (s->block_survey_done[block - 1]) {
    throw ExperimentError(409, "duplicate_submission", "block survey already stored");
  }
  const int last_game = block * kGamesPerBlock;
  if (static_cast<int>(s->games.size()) < last_game ||
      !s->games[last_game - 1]->state.IsTerminal()) {
    throw ExperimentError(409, "block_incomplete", "finish the block's games first");
  }
  Append({{"type", "block_survey"},
          {"session", s->id},
          {"block", block},
          {"items", items}});
  s->block_survey_done[block - 1] = true;
  return {{"schema", kExperimentSchemaVersion}, {"acknowledged", true}, {"block", block}};
}

json ExperimentService::SubmitFinalSurvey(const std::string& id, const json& body) {
  auto s = Find(id);
  std::lock_guard<std::mutex> lock(s->mu);
  const std::vector<int> items = ParseItems(body, kFinalSurveyItems);
  if (s->final_done) {
    throw ExperimentError(409, "duplicate_submission", "final survey already stored");
  }
  if (!s->block_survey_done[0] || !s->block_survey_done[1]) {
    throw ExperimentError(409, "premature", "both blocks must be completed first");
  }
  Append({{"type", "final_survey"}, {"session", s->id}, {"items", items}});
  s->final_done = true;
  return {{"schema", kExperimentSchemaVersion}, {"acknowledged", true}, {"status", "closed"}};
}

json ExperimentService::Export() {
  Flush();
  std::vector<json> events;
  {
    std::lock_guard<std::mutex> lock(log_mutex_);
    events = ReadEventLog(log_path_);
  }
  const Dataset d = ExportDataset(events, config_.coding);
  json ratings = json::array();
  for (const RatingRecord& r : d.ratings) {
    ratings.push_back({{"session_id", r.participant},
                       {"block", r.block},
                       {"bot", r.bot},
                       {"teamwork_rating", r.rating},
                       {"human_ai_score_mean",
                        r.human_ai_score ? json(*r.human_ai_score) : json()}});
  }
  const auto [lo, hi] = TeamworkRatingRange(config_.coding);
  return {{"schema", kExperimentSchemaVersion},
          {"coding", {{"name", config_.coding.Name()},
                      {"range", {lo, hi}},
                      {"alternatives", {{"0-6", {0, 36}}, {"1-7", {6, 42}}}}}},
          {"ratings", ratings},
          {"attribution", d.attribution},
          {"csv",
           {{"ratings", d.ratings_csv},
            {"games", d.games_csv},
            {"comparisons", d.comparisons_csv},
            {"attribution", d.attribution_csv}}}};
}

void ExperimentService::Replay(const std::vector<json>& events) {
  replaying_ = true;
  for (const json& e : events) {
    next_seq_ = std::max<int64_t>(next_seq_, e.value("seq", int64_t{0}) + 1);
    const std::string type = e.at("type").get<std::string>();
    if (type == "session_created") {
      auto s = std::make_shared<Session>();
      s->id = e.at("session").get<std::string>();
      s->index = e.at("index").get<int>();
      const auto idx = e.at("pool_index").get<std::array<int, 2>>();
      for (int k = 0; k < 2; ++k) {
        if (idx[k] < 0 || idx[k] >= static_cast<int>(config_.pool.size()) ||
            !(AgentSpecFromJson(e.at("bots").at(k)) == config_.pool[idx[k]])) {
          throw std::runtime_error("event log does not match the agent pool");
        }
      }
      s->bots = idx;
      s->seed = e.at("seed").get<uint64_t>();
      s->familiarity = e.value("familiarity", json());
      s->screened = e.value("screened", false);
      balancer_.Record({idx[0], idx[1]});
      id_rng_.Next();
      sessions_[s->id] = s;
      continue;
    }
    auto it = sessions_.find(e.at("session").get<std::string>());
    if (it == sessions_.end()) throw std::runtime_error("event for unknown session");
    Session& s = *it->second;
    if (type == "game_started") {
      StartGame(s, e.at("game").get<int>());
    } else if (type == "move") {
      Game& g = *s.games.at(e.at("game").get<int>() - 1);
      const int turn = e.at("turn").get<int>();
      if (turn < static_cast<int>(g.actions.size())) {
        if (g.actions[turn] != e.at("action_id").get<int>()) {
          throw std::runtime_error("bot replay diverged from the event log");
        }
        continue;
      }
      ApplyAndLog(s, g, Move::FromActionId(e.at("action_id").get<int>()));
      BotReply(s, g, nullptr);
    } else if (type == "block_survey") {
      s.block_survey_done[e.at("block").get<int>() - 1] = true;
    } else if (type == "final_survey") {
      s.final_done = true;
    }
  }
  replaying_ = false;
}

std::vector<json> ReadEventLog(const std::filesystem::path& path) {
  std::vector<json> events;
  std::ifstream in(path, std::ios::binary);
  if (!in) return events;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    events.push_back(json::parse(line));
  }
  return events;
}

Dataset ExportDataset(const std::vector<json>& events, const ItemCoding& coding) {
  struct GameRow {
    std::string session;
    int game = 0, block = 0;
    std::string partner, bot;
    bool test = false, finished = false;
    int score = 0, turns = 0;
    std::string termination = "not_terminal";
  };
  std::map<std::string, std::array<std::string, 2>> bots;
  std::vector<std::string> session_order;
  std::map<std::pair<std::string, int>, GameRow> games;
  // (session, game, turn) -> category of the referenced bot move
  struct Click {
    std::string category, label;
  };
  std::vector<Click> clicks;
  Dataset d;
  std::ostringstream ratings_csv, comparisons_csv;
  ratings_csv << "session_id,block,bot,B1,B2,B3,B4,B5,B6,B7,B8,teamwork_rating,coding,"
                 "human_ai_score_mean,eligible_games\n";
  comparisons_csv << "session_id,first_bot,second_bot,P1,P2,P3,P4,P5,P6,P7,"
                     "comparison_rating\n";
  std::vector<std::pair<json, std::string>> block_surveys;
  for (const json& e : events) {
    const std::string type = e.at("type").get<std::string>();
    const std::string session = e.at("session").get<std::string>();
    if (type == "session_created") {
      bots[session] = {e.at("bots").at(0).at("name").get<std::string>(),
                       e.at("bots").at(1).at("name").get<std::string>()};
      session_order.push_back(session);
    } else if (type == "game_started") {
      GameRow row;
      row.session = session;
      row.game = e.at("game").get<int>();
      row.block = e.at("block").get<int>();
      row.partner = e.at("partner").get<std::string>();
      row.bot = bots.at(session)[row.partner == "first" ? 0 : 1];
      row.test = e.at("test").get<bool>();
      games[{session, row.game}] = row;
    } else if (type == "game_over") {
      GameRow& row = games.at({session, e.at("game").get<int>()});
      row.finished = true;
      row.score = e.at("score").get<int>();
      row.turns = e.at("turns").get<int>();
      row.termination = e.at("termination").get<std::string>();
    } else if (type == "questionable") {
      clicks.push_back({MoveCategory(e.at("action_id").get<int>()),
                        e.at("label").get<std::string>()});
    } else if (type == "block_survey") {
      block_surveys.emplace_back(e, session);
    } else if (type == "final_survey") {
      const auto items = e.at("items").get<std::vector<int>>();
      comparisons_csv << session << ',' << bots.at(session)[0] << ','
                      << bots.at(session)[1];
      for (int v : items) comparisons_csv << ',' << v - 4;
      comparisons_csv << ',' << ComparisonRating(items) << '\n';
    }
  }

  json ratings_lines = json::array();
  for (const auto& [e, session] : block_surveys) {
    const int block = e.at("block").get<int>();
    const auto items = e.at("items").get<std::vector<int>>();
    std::vector<double> scores;
    for (const auto& [key, row] : games) {
      if (row.session == session && row.block == block && !row.test && row.finished) {
        scores.push_back(row.score);
      }
    }
    RatingRecord r;
    r.participant = session;
    r.block = block;
    r.bot = bots.at(session)[block - 1];
    r.rating = TeamworkRating(items, coding);
    if (auto s = Summarize(scores)) r.human_ai_score = s->mean;
    d.ratings.push_back(r);
    ratings_csv << session << ',' << block << ',' << r.bot;
    for (int v : items) ratings_csv << ',' << v;
    ratings_csv << ',' << r.rating << ',' << coding.Name() << ','
                << (r.human_ai_score ? Num(*r.human_ai_score) : "NA") << ','
                << scores.size() << '\n';
    d.ratings_jsonl += json({{"session_id", session},
                             {"block", block},
                             {"bot", r.bot},
                             {"items", items},
                             {"teamwork_rating", r.rating},
                             {"coding", coding.Name()},
                             {"human_ai_score_mean",
                              r.human_ai_score ? json(*r.human_ai_score) : json()},
                             {"eligible_games", scores.size()}})
                           .dump() +
                       "\n";
  }
  d.ratings_csv = ratings_csv.str();
  d.comparisons_csv = comparisons_csv.str();

  std::ostringstream games_csv;
  games_csv << "session_id,game,block,bot,test,eligible,finished,score,termination,turns\n";
  for (const std::string& session : session_order) {
    for (int n = 1; n <= kGamesPerSession; ++n) {
      auto it = games.find({session, n});
      if (it == games.end()) continue;
      const GameRow& row = it->second;
      games_csv << session << ',' << n << ',' << row.block << ',' << row.bot << ','
                << (row.test ? "true" : "false") << ','
                << (!row.test && row.finished ? "true" : "false") << ','
                << (row.finished ? "true" : "false") << ',' << row.score << ','
                << row.termination << ',' << row.turns << '\n';
    }
  }
  d.games_csv = games_csv.str();

  std::ostringstream attribution_csv;
  attribution_csv << "category,clicks,G1,G2,G3,none,pct_G1,pct_G2,pct_G3,pct_none\n";
  d.attribution = json::array();
  for (const std::string category : {"discard", "play", "hint", "all"}) {
    std::map<std::string, int> counts = {{"G1", 0}, {"G2", 0}, {"G3", 0}, {"none", 0}};
    int total = 0;
    for (const Click& c : clicks) {
      if (category != "all" && c.category != category) continue;
      ++counts[c.label];
      ++total;
    }
    auto pct = [&](const std::string& label) {
      return total == 0 ? 0.0 : 100.0 * counts[label] / total;
    };
    attribution_csv << category << ',' << total;
    for (const char* l : {"G1", "G2", "G3", "none"}) attribution_csv << ',' << counts[l];
    for (const char* l : {"G1", "G2", "G3", "none"}) {
      attribution_csv << ',' << (total == 0 ? std::string("NA") : Num(pct(l)));
    }
    attribution_csv << '\n';
    json row = {{"category", category}, {"clicks", total}, {"counts", counts}};
    json percents = json::object();
    for (const char* l : {"G1", "G2", "G3", "none"}) {
      percents[l] = total == 0 ? json() : json(pct(l));
    }
    row["percent"] = percents;
    d.attribution.push_back(row);
  }
  d.attribution_csv = attribution_csv.str();
  return d;
}

}  // namespace hanabi_eval
