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

// Two-player Hanabi: deck, legal moves, token economics, termination and
// scoring.

#ifndef HANABI_EVAL_ENGINE_H_
#define HANABI_EVAL_ENGINE_H_

#include <array>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "hanabi_eval/card.h"
#include "hanabi_eval/knowledge.h"

namespace hanabi_eval {

// Rule variants the original game leaves open.
struct RulesConfig {
  // Discarding at a full token pool is illegal unless nothing else is.
  bool allow_discard_at_max_tokens = false;
  // Hints must touch at least one card.
  bool allow_empty_hints = false;

  friend bool operator==(const RulesConfig&, const RulesConfig&) = default;
};

enum class TerminalStatus : uint8_t {
  kNotTerminal,
  kPerfect,
  kDeckExhausted,
  kBombedOut,
};

std::string_view TerminalStatusName(TerminalStatus status);

class IllegalMoveError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Public record of one applied move.
struct EventRecord {
  int turn_index = 0;
  int seat = 0;
  Move move;
  // Card that left the hand on play/discard.
  std::optional<Card> revealed;
  bool play_succeeded = false;
  // Slots of the hinted hand touched by a hint.
  SlotMask touched = 0;
  bool drew_card = false;
};

// The 50-card multiset in canonical order.
std::vector<Card> FullDeck();

class GameState {
 public:
  // Explicit position for tests and replays. Card conservation is checked.
  struct Position {
    std::vector<Card> deck;  // back() is drawn next
    std::array<std::vector<Card>, kNumPlayers> hands;
    Fireworks fireworks{};
    std::vector<Card> discards;
    int hint_tokens = kMaxHintTokens;
    int bombs_remaining = kMaxBombs;
    int current_seat = 0;
    std::optional<int> final_round_turns_left;
    int turn_index = 0;
    std::array<HandKnowledge, kNumPlayers> knowledge;  // empty = no hints yet
    RulesConfig rules;
  };

  static GameState FromPosition(Position position);

  const std::vector<Card>& deck() const { return deck_; }
  const std::vector<Card>& hand(int seat) const { return hands_[seat]; }
  const HandKnowledge& knowledge(int seat) const { return knowledge_[seat]; }
  const Fireworks& fireworks() const { return fireworks_; }
  const std::vector<Card>& discards() const { return discards_; }
  int hint_tokens() const { return hint_tokens_; }
  int bombs_remaining() const { return bombs_remaining_; }
  int current_seat() const { return current_seat_; }
  std::optional<int> final_round_turns_left() const {
    return final_round_turns_left_;
  }
  int turn_index() const { return turn_index_; }
  uint64_t seed() const { return seed_; }
  const RulesConfig& rules() const { return rules_; }
  const std::optional<EventRecord>& last_event() const { return last_event_; }

  // Empty when the game is over.
  std::vector<Move> LegalMoves() const;

  // Reason the move is illegal, or nullopt when it is legal.
  std::optional<std::string> CheckMove(Move move) const;

  // Applies a legal move; throws IllegalMoveError and leaves the state
  // untouched otherwise.
  EventRecord Apply(Move move);

  TerminalStatus Status() const;
  bool IsTerminal() const { return Status() != TerminalStatus::kNotTerminal; }

  // Sum of firework tops. Bombed-out games keep what they built.
  int Score() const;

 private:
  friend GameState NewGame(uint64_t seed, const RulesConfig& rules);

  GameState() = default;
  void Draw(int seat);
  bool AnyLegalNonDiscard() const;

  std::vector<Card> deck_;
  std::array<std::vector<Card>, kNumPlayers> hands_;
  std::array<HandKnowledge, kNumPlayers> knowledge_;
  Fireworks fireworks_{};
  std::vector<Card> discards_;
  int hint_tokens_ = kMaxHintTokens;
  int bombs_remaining_ = kMaxBombs;
  int current_seat_ = 0;
  std::optional<int> final_round_turns_left_;
  int turn_index_ = 0;
  uint64_t seed_ = 0;
  RulesConfig rules_;
  std::optional<EventRecord> last_event_;
};

// Deck shuffled by Fisher-Yates from `seed`, five cards dealt alternately to
// each seat, seat 0 to move.
GameState NewGame(uint64_t seed, const RulesConfig& rules = {});

// Functional form of GameState::Apply.
std::pair<GameState, EventRecord> ApplyMove(const GameState& state, Move move);

// What `viewer` can see. Never holds the identities of the viewer's own
// cards.
struct Observation {
  int viewer = 0;
  int own_hand_size = 0;
  std::vector<Card> partner_hand;
  // Hint-derived knowledge only; see OwnKnowledge() for card counting.
  HandKnowledge own_knowledge;
  HandKnowledge partner_knowledge;
  // Copies visible to the viewer: fireworks, discards and partner hand.
  CardCounts visible_counts{};
  Fireworks fireworks{};
  std::vector<Card> discards;
  int hint_tokens = 0;
  int bombs_remaining = 0;
  int deck_size = 0;
  int turn_index = 0;
  std::optional<int> final_round_turns_left;
  std::optional<EventRecord> last_event;
  std::vector<Move> legal_moves;
  RulesConfig rules;

  HandKnowledge OwnKnowledge(bool card_counting) const;
  CardCounts DiscardCounts() const { return CountCards(discards); }
  bool IsLegal(Move move) const;
};

Observation MakeObservation(const GameState& state, int viewer);

}  // namespace hanabi_eval

#endif  // HANABI_EVAL_ENGINE_H_
