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

#include "hanabi_eval/observation_json.h"

#include <stdexcept>

namespace hanabi_eval {

using nlohmann::json;

json CardToJson(Card card) { return card.ToString(); }

Card CardFromJson(const json& j) {
  const std::string s = j.get<std::string>();
  auto color = s.size() == 2 ? ColorFromChar(s[0]) : std::nullopt;
  if (!color || s[1] < '1' || s[1] > '5') {
    throw std::invalid_argument("bad card: " + s);
  }
  return Card{*color, s[1] - '0'};
}

json MoveToJson(Move move) {
  json j;
  j["action_id"] = move.ActionId();
  switch (move.kind) {
    case MoveKind::kDiscard:
      j["kind"] = "discard";
      j["slot"] = move.value;
      break;
    case MoveKind::kPlay:
      j["kind"] = "play";
      j["slot"] = move.value;
      break;
    case MoveKind::kHintColor:
      j["kind"] = "hint_color";
      j["color"] = std::string(ColorName(move.HintedColor()));
      break;
    case MoveKind::kHintRank:
      j["kind"] = "hint_rank";
      j["rank"] = move.value;
      break;
  }
  return j;
}

json EventToJson(const EventRecord& event) {
  json j;
  j["turn"] = event.turn_index;
  j["seat"] = event.seat;
  j["move"] = MoveToJson(event.move);
  if (event.revealed) {
    j["revealed"] = CardToJson(*event.revealed);
    if (event.move.kind == MoveKind::kPlay) j["success"] = event.play_succeeded;
  }
  if (event.move.IsHint()) {
    json slots = json::array();
    for (int i = 0; i < kHandSize; ++i) {
      if ((event.touched >> i) & 1u) slots.push_back(i);
    }
    j["touched_slots"] = slots;
  }
  return j;
}

json KnowledgeToJson(const CardKnowledge& card, bool with_candidates) {
  json j;
  j["hinted_color"] =
      card.color_hint ? json(std::string(ColorName(*card.color_hint))) : json();
  j["hinted_rank"] = card.rank_hint ? json(*card.rank_hint) : json();
  if (with_candidates) {
    json candidates = json::array();
    card.candidates.ForEach([&](Card c) { candidates.push_back(CardToJson(c)); });
    j["candidates"] = candidates;
  }
  return j;
}

json ObservationToJson(const Observation& obs, bool own_candidates) {
  json j;
  j["schema"] = kObservationSchemaVersion;
  j["viewer"] = obs.viewer;
  j["turn"] = obs.turn_index;
  json own = json::array();
  for (const CardKnowledge& k : obs.own_knowledge) {
    own.push_back(KnowledgeToJson(k, own_candidates));
  }
  j["own_hand"] = own;
  json partner = json::array();
  for (size_t i = 0; i < obs.partner_hand.size(); ++i) {
    json card = KnowledgeToJson(obs.partner_knowledge[i], /*with_candidates=*/false);
    card["card"] = CardToJson(obs.partner_hand[i]);
    partner.push_back(card);
  }
  j["partner_hand"] = partner;
  j["fireworks"] = obs.fireworks;
  json discards = json::array();
  for (const Card& c : obs.discards) discards.push_back(CardToJson(c));
  j["discards"] = discards;
  j["hint_tokens"] = obs.hint_tokens;
  j["bombs_remaining"] = obs.bombs_remaining;
  j["deck_size"] = obs.deck_size;
  j["final_round_turns_left"] =
      obs.final_round_turns_left ? json(*obs.final_round_turns_left) : json();
  j["last_event"] = obs.last_event ? EventToJson(*obs.last_event) : json();
  json legal = json::array();
  for (const Move& m : obs.legal_moves) legal.push_back(m.ActionId());
  j["legal_action_ids"] = legal;
  return j;
}

}  // namespace hanabi_eval
