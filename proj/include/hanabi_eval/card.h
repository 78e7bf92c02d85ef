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

// Cards, moves and the fixed two-player action numbering.

#ifndef HANABI_EVAL_CARD_H_
#define HANABI_EVAL_CARD_H_

#include <array>
#include <bit>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace hanabi_eval {

inline constexpr int kNumColors = 5;
inline constexpr int kNumRanks = 5;
inline constexpr int kNumIdentities = kNumColors * kNumRanks;
inline constexpr int kHandSize = 5;
inline constexpr int kNumPlayers = 2;
inline constexpr int kMaxHintTokens = 8;
inline constexpr int kMaxBombs = 3;
inline constexpr int kDeckSize = 50;
inline constexpr int kMaxScore = kNumColors * kNumRanks;
inline constexpr int kNumActions = 20;

enum class Color : uint8_t { kRed, kYellow, kGreen, kBlue, kWhite };

// Copies of each rank within one suit: three 1s, two of 2-4, one 5.
inline constexpr std::array<int, kNumRanks> kCopiesPerRank = {3, 2, 2, 2, 1};

constexpr int CopiesOf(int rank) { return kCopiesPerRank[rank - 1]; }

char ColorChar(Color c);
std::string_view ColorName(Color c);
std::optional<Color> ColorFromChar(char c);

struct Card {
  Color color = Color::kRed;
  int rank = 1;  // 1..5

  // Dense index in [0, 25): color-major.
  constexpr int Index() const {
    return static_cast<int>(color) * kNumRanks + (rank - 1);
  }
  static constexpr Card FromIndex(int index) {
    return Card{static_cast<Color>(index / kNumRanks), index % kNumRanks + 1};
  }

  friend constexpr bool operator==(const Card&, const Card&) = default;

  // e.g. "R1", "W5".
  std::string ToString() const;
};

// Set of card identities, one bit per Card::Index().
class CardSet {
 public:
  constexpr CardSet() = default;
  static constexpr CardSet All() { return CardSet((1u << kNumIdentities) - 1); }
  static constexpr CardSet Of(Card c) { return CardSet(1u << c.Index()); }
  static CardSet OfColor(Color c);
  static CardSet OfRank(int rank);

  constexpr bool Contains(Card c) const { return (bits_ >> c.Index()) & 1u; }
  constexpr bool Empty() const { return bits_ == 0; }
  int Size() const { return std::popcount(bits_); }
  constexpr uint32_t Bits() const { return bits_; }

  void Insert(Card c) { bits_ |= 1u << c.Index(); }
  void Erase(Card c) { bits_ &= ~(1u << c.Index()); }

  constexpr CardSet operator&(CardSet o) const { return CardSet(bits_ & o.bits_); }
  constexpr CardSet operator|(CardSet o) const { return CardSet(bits_ | o.bits_); }
  constexpr CardSet operator~() const { return CardSet(~bits_ & All().bits_); }
  CardSet& operator&=(CardSet o) {
    bits_ &= o.bits_;
    return *this;
  }
  friend constexpr bool operator==(CardSet, CardSet) = default;

  template <typename Fn>
  void ForEach(Fn&& fn) const {
    for (uint32_t b = bits_; b != 0; b &= b - 1) {
      fn(Card::FromIndex(std::countr_zero(b)));
    }
  }

 private:
  constexpr explicit CardSet(uint32_t bits) : bits_(bits) {}
  uint32_t bits_ = 0;
};

enum class MoveKind : uint8_t { kDiscard, kPlay, kHintColor, kHintRank };

// In two-player games the hint target is always the other seat.
struct Move {
  MoveKind kind = MoveKind::kPlay;
  // Slot for play/discard (0 = oldest), color index for HintColor, rank 1..5
  // for HintRank.
  int value = 0;

  static constexpr Move Play(int slot) { return {MoveKind::kPlay, slot}; }
  static constexpr Move Discard(int slot) { return {MoveKind::kDiscard, slot}; }
  static constexpr Move HintColor(Color c) {
    return {MoveKind::kHintColor, static_cast<int>(c)};
  }
  static constexpr Move HintRank(int rank) { return {MoveKind::kHintRank, rank}; }

  constexpr bool IsHint() const {
    return kind == MoveKind::kHintColor || kind == MoveKind::kHintRank;
  }
  Color HintedColor() const { return static_cast<Color>(value); }

  // Discard 0-4, play 5-9, hint color 10-14, hint rank 1-5 -> 15-19.
  int ActionId() const;
  static Move FromActionId(int id);

  friend constexpr bool operator==(const Move&, const Move&) = default;

  std::string ToString() const;
};

// Top rank per suit, 0 when the firework is empty.
using Fireworks = std::array<int, kNumColors>;

// Per-identity copy counts indexed by Card::Index().
using CardCounts = std::array<int, kNumIdentities>;

// True if `card` would be accepted as the next card on its firework.
inline bool IsPlayable(Card card, const Fireworks& fireworks) {
  return fireworks[static_cast<int>(card.color)] + 1 == card.rank;
}

}  // namespace hanabi_eval

#endif  // HANABI_EVAL_CARD_H_
