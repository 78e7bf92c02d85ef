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

#include "hanabi_eval/engine.h"

#include <algorithm>
#include <numeric>

#include "hanabi_eval/rng.h"

namespace hanabi_eval {

namespace {

constexpr std::array<std::string_view, 4> kStatusNames = {
    "not_terminal", "perfect", "deck_exhausted", "bombed_out"};

bool HandHasColor(const std::vector<Card>& hand, Color c) {
  return std::any_of(hand.begin(), hand.end(),
                     [c](const Card& card) { return card.color == c; });
}

bool HandHasRank(const std::vector<Card>& hand, int rank) {
  return std::any_of(hand.begin(), hand.end(),
                     [rank](const Card& card) { return card.rank == rank; });
}

}  // namespace

std::string_view TerminalStatusName(TerminalStatus status) {
  return kStatusNames[static_cast<int>(status)];
}

std::vector<Card> FullDeck() {
  std::vector<Card> deck;
  deck.reserve(kDeckSize);
  for (int color = 0; color < kNumColors; ++color) {
    for (int rank = 1; rank <= kNumRanks; ++rank) {
      for (int copy = 0; copy < CopiesOf(rank); ++copy) {
        deck.push_back(Card{static_cast<Color>(color), rank});
      }
    }
  }
  return deck;
}

GameState NewGame(uint64_t seed, const RulesConfig& rules) {
  GameState state;
  state.seed_ = seed;
  state.rules_ = rules;
  state.deck_ = FullDeck();
  Rng rng(seed);
  rng.Shuffle(state.deck_);
  for (int i = 0; i < kHandSize; ++i) {
    for (int seat = 0; seat < kNumPlayers; ++seat) state.Draw(seat);
  }
  return state;
}

GameState GameState::FromPosition(Position position) {
  CardCounts counts = CountCards(position.deck);
  for (const auto& hand : position.hands) {
    if (hand.size() > kHandSize) {
      throw std::invalid_argument("hand holds more than five cards");
    }
    for (const Card& c : hand) ++counts[c.Index()];
  }
  for (const Card& c : position.discards) ++counts[c.Index()];
  for (int color = 0; color < kNumColors; ++color) {
    if (position.fireworks[color] < 0 || position.fireworks[color] > kNumRanks) {
      throw std::invalid_argument("firework out of range");
    }
    for (int rank = 1; rank <= position.fireworks[color]; ++rank) {
      ++counts[Card{static_cast<Color>(color), rank}.Index()];
    }
  }
  if (counts != CountCards(FullDeck())) {
    throw std::invalid_argument("position does not conserve the 50-card deck");
  }
  if (position.hint_tokens < 0 || position.hint_tokens > kMaxHintTokens ||
      position.bombs_remaining < 0 || position.bombs_remaining > kMaxBombs) {
    throw std::invalid_argument("token count out of range");
  }
  if (position.current_seat < 0 || position.current_seat >= kNumPlayers) {
    throw std::invalid_argument("seat out of range");
  }

  GameState state;
  state.deck_ = std::move(position.deck);
  state.hands_ = std::move(position.hands);
  state.fireworks_ = position.fireworks;
  state.discards_ = std::move(position.discards);
  state.hint_tokens_ = position.hint_tokens;
  state.bombs_remaining_ = position.bombs_remaining;
  state.current_seat_ = position.current_seat;
  state.final_round_turns_left_ = position.final_round_turns_left;
  state.turn_index_ = position.turn_index;
  state.rules_ = position.rules;
  for (int seat = 0; seat < kNumPlayers; ++seat) {
    HandKnowledge& k = position.knowledge[seat];
    if (k.empty()) k.resize(state.hands_[seat].size());
    if (k.size() != state.hands_[seat].size()) {
      throw std::invalid_argument("knowledge does not match hand size");
    }
    state.knowledge_[seat] = std::move(k);
  }
  return state;
}

void GameState::Draw(int seat) {
  if (deck_.empty()) return;
  hands_[seat].push_back(deck_.back());
  deck_.pop_back();
  knowledge_[seat].emplace_back();
}

int GameState::Score() const {
  return std::accumulate(fireworks_.begin(), fireworks_.end(), 0);
}

TerminalStatus GameState::Status() const {
  if (Score() == kMaxScore) return TerminalStatus::kPerfect;
  if (bombs_remaining_ == 0) return TerminalStatus::kBombedOut;
  if (final_round_turns_left_ && *final_round_turns_left_ <= 0) {
    return TerminalStatus::kDeckExhausted;
  }
  return TerminalStatus::kNotTerminal;
}

bool GameState::AnyLegalNonDiscard() const {
  if (!hands_[current_seat_].empty()) return true;  // plays
  const auto& partner = hands_[1 - current_seat_];
  return hint_tokens_ > 0 && !partner.empty();
}

std::optional<std::string> GameState::CheckMove(Move move) const {
  if (IsTerminal()) return "game is over";
  const auto& own = hands_[current_seat_];
  const auto& partner = hands_[1 - current_seat_];
  switch (move.kind) {
    case MoveKind::kPlay:
    case MoveKind::kDiscard:
      if (move.value < 0 || move.value >= static_cast<int>(own.size())) {
        return "slot " + std::to_string(move.value) + " is empty";
      }
      if (move.kind == MoveKind::kDiscard && hint_tokens_ == kMaxHintTokens &&
          !rules_.allow_discard_at_max_tokens && AnyLegalNonDiscard()) {
        return "cannot discard with all hint tokens available";
      }
      return std::nullopt;
    case MoveKind::kHintColor:
    case MoveKind::kHintRank: {
      if (hint_tokens_ == 0) return "no hint tokens left";
      if (partner.empty()) return "partner has no cards";
      const bool color = move.kind == MoveKind::kHintColor;
      if (color ? (move.value < 0 || move.value >= kNumColors)
                : (move.value < 1 || move.value > kNumRanks)) {
        return "hint value out of range";
      }
      const bool touches = color ? HandHasColor(partner, move.HintedColor())
                                 : HandHasRank(partner, move.value);
      if (!touches && !rules_.allow_empty_hints) {
        return "hint touches no cards";
      }
      return std::nullopt;
    }
  }
  return "unknown move kind";
}

std::vector<Move> GameState::LegalMoves() const {
  std::vector<Move> moves;
  if (IsTerminal()) return moves;
  const int own = static_cast<int>(hands_[current_seat_].size());
  for (int slot = 0; slot < own; ++slot) {
    if (!CheckMove(Move::Discard(slot))) moves.push_back(Move::Discard(slot));
  }
  for (int slot = 0; slot < own; ++slot) moves.push_back(Move::Play(slot));
  for (int c = 0; c < kNumColors; ++c) {
    const Move hint = Move::HintColor(static_cast<Color>(c));
    if (!CheckMove(hint)) moves.push_back(hint);
  }
  for (int rank = 1; rank <= kNumRanks; ++rank) {
    const Move hint = Move::HintRank(rank);
    if (!CheckMove(hint)) moves.push_back(hint);
  }
  return moves;
}

EventRecord GameState::Apply(Move move) {
  if (auto reason = CheckMove(move)) {
    throw IllegalMoveError("illegal move '" + move.ToString() + "': " + *reason);
  }
  EventRecord event;
  event.turn_index = turn_index_;
  event.seat = current_seat_;
  event.move = move;

  const bool final_round_armed = final_round_turns_left_.has_value();
  const int seat = current_seat_;
  const int partner = 1 - seat;
  if (move.IsHint()) {
    --hint_tokens_;
    event.touched = TouchedSlots(hands_[partner], move);
    knowledge_[partner] =
        UpdateOnHint(std::move(knowledge_[partner]), move, event.touched,
                     turn_index_);
  } else {
    auto& hand = hands_[seat];
    const Card card = hand[move.value];
    hand.erase(hand.begin() + move.value);
    knowledge_[seat].erase(knowledge_[seat].begin() + move.value);
    event.revealed = card;
    if (move.kind == MoveKind::kPlay) {
      if (IsPlayable(card, fireworks_)) {
        ++fireworks_[static_cast<int>(card.color)];
        event.play_succeeded = true;
        if (card.rank == kNumRanks) {
          hint_tokens_ = std::min(kMaxHintTokens, hint_tokens_ + 1);
        }
      } else {
        discards_.push_back(card);
        --bombs_remaining_;
      }
    } else {
      discards_.push_back(card);
      hint_tokens_ = std::min(kMaxHintTokens, hint_tokens_ + 1);
    }
    if (!deck_.empty()) {
      Draw(seat);
      event.drew_card = true;
      if (deck_.empty()) final_round_turns_left_ = kNumPlayers;
    }
  }
  if (final_round_armed) --*final_round_turns_left_;
  current_seat_ = partner;
  ++turn_index_;
  last_event_ = event;
  return event;
}

std::pair<GameState, EventRecord> ApplyMove(const GameState& state, Move move) {
  GameState next = state;
  EventRecord event = next.Apply(move);
  return {std::move(next), event};
}

HandKnowledge Observation::OwnKnowledge(bool card_counting) const {
  if (!card_counting) return own_knowledge;
  return ApplyCardCounting(own_knowledge, visible_counts);
}

bool Observation::IsLegal(Move move) const {
  return std::find(legal_moves.begin(), legal_moves.end(), move) !=
         legal_moves.end();
}

Observation MakeObservation(const GameState& state, int viewer) {
  const int partner = 1 - viewer;
  Observation obs;
  obs.viewer = viewer;
  obs.own_hand_size = static_cast<int>(state.hand(viewer).size());
  obs.partner_hand = state.hand(partner);
  obs.own_knowledge = state.knowledge(viewer);
  obs.partner_knowledge = state.knowledge(partner);
  obs.fireworks = state.fireworks();
  obs.discards = state.discards();
  obs.visible_counts =
      VisibleCounts(obs.fireworks, obs.discards, obs.partner_hand);
  obs.hint_tokens = state.hint_tokens();
  obs.bombs_remaining = state.bombs_remaining();
  obs.deck_size = static_cast<int>(state.deck().size());
  obs.turn_index = state.turn_index();
  obs.final_round_turns_left = state.final_round_turns_left();
  obs.last_event = state.last_event();
  if (viewer == state.current_seat()) obs.legal_moves = state.LegalMoves();
  obs.rules = state.rules();
  return obs;
}

}  // namespace hanabi_eval
