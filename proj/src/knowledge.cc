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

#include "hanabi_eval/knowledge.h"

#include <array>
#include <cassert>

namespace hanabi_eval {

namespace {

bool HintMatches(Card card, Move hint) {
  return hint.kind == MoveKind::kHintColor ? card.color == hint.HintedColor()
                                           : card.rank == hint.value;
}

CardSet HintAttributeSet(Move hint) {
  return hint.kind == MoveKind::kHintColor ? CardSet::OfColor(hint.HintedColor())
                                           : CardSet::OfRank(hint.value);
}

constexpr std::array<std::string_view, 4> kLabelNames = {"none", "G1", "G2", "G3"};

}  // namespace

SlotMask TouchedSlots(std::span<const Card> hand, Move hint) {
  assert(hint.IsHint());
  SlotMask mask = 0;
  for (size_t i = 0; i < hand.size(); ++i) {
    if (HintMatches(hand[i], hint)) mask |= SlotMask{1} << i;
  }
  return mask;
}

HandKnowledge UpdateOnHint(HandKnowledge knowledge, Move hint, SlotMask touched,
                           int turn_index) {
  assert(hint.IsHint());
  const CardSet attribute = HintAttributeSet(hint);
  for (size_t i = 0; i < knowledge.size(); ++i) {
    CardKnowledge& card = knowledge[i];
    if ((touched >> i) & 1u) {
      card.candidates &= attribute;
      if (hint.kind == MoveKind::kHintColor) {
        card.color_hint = hint.HintedColor();
      } else {
        card.rank_hint = hint.value;
      }
      card.hint_turns.push_back(turn_index);
    } else {
      card.candidates &= ~attribute;
    }
  }
  return knowledge;
}

CardCounts CountCards(std::span<const Card> cards) {
  CardCounts counts{};
  for (const Card& c : cards) ++counts[c.Index()];
  return counts;
}

CardCounts VisibleCounts(const Fireworks& fireworks,
                         std::span<const Card> discards,
                         std::span<const Card> partner_hand) {
  CardCounts counts = CountCards(discards);
  for (const Card& c : partner_hand) ++counts[c.Index()];
  for (int color = 0; color < kNumColors; ++color) {
    for (int rank = 1; rank <= fireworks[color]; ++rank) {
      ++counts[Card{static_cast<Color>(color), rank}.Index()];
    }
  }
  return counts;
}

HandKnowledge ApplyCardCounting(HandKnowledge knowledge,
                                const CardCounts& visible) {
  CardSet exhausted;
  for (int index = 0; index < kNumIdentities; ++index) {
    const Card card = Card::FromIndex(index);
    if (visible[index] >= CopiesOf(card.rank)) exhausted.Insert(card);
  }
  for (CardKnowledge& card : knowledge) {
    CardSet narrowed = card.candidates & ~exhausted;
    // Only possible if the public view is inconsistent with the true state;
    // keep the hint-derived set rather than produce an empty one.
    if (!narrowed.Empty()) card.candidates = narrowed;
  }
  return knowledge;
}

bool IsKnownPlayable(const CardKnowledge& card, const Fireworks& fireworks) {
  if (card.candidates.Empty()) return false;
  bool all = true;
  card.candidates.ForEach([&](Card c) { all = all && IsPlayable(c, fireworks); });
  return all;
}

bool IsKnownUnplayable(const CardKnowledge& card, const Fireworks& fireworks) {
  if (card.candidates.Empty()) return false;
  bool none = true;
  card.candidates.ForEach([&](Card c) { none = none && !IsPlayable(c, fireworks); });
  return none;
}

double PlayableFraction(const CardKnowledge& card, const Fireworks& fireworks) {
  const int total = card.candidates.Size();
  if (total == 0) return 0.0;
  int playable = 0;
  card.candidates.ForEach([&](Card c) { playable += IsPlayable(c, fireworks); });
  return static_cast<double>(playable) / total;
}

std::string_view DominanceLabelName(DominanceLabel label) {
  return kLabelNames[static_cast<int>(label)];
}

std::optional<DominanceLabel> DominanceLabelFromName(std::string_view name) {
  for (size_t i = 0; i < kLabelNames.size(); ++i) {
    if (kLabelNames[i] == name) return static_cast<DominanceLabel>(i);
  }
  return std::nullopt;
}

DominanceLabel LabelMove(const HandKnowledge& knowledge, Move move,
                         const Fireworks& fireworks) {
  if (move.IsHint()) return DominanceLabel::kNone;
  assert(move.value >= 0 && move.value < static_cast<int>(knowledge.size()));
  const CardKnowledge& card = knowledge[move.value];
  if (move.kind == MoveKind::kDiscard) {
    return IsKnownPlayable(card, fireworks) ? DominanceLabel::kG1DiscardPlayable
                                            : DominanceLabel::kNone;
  }
  if (IsKnownPlayable(card, fireworks)) return DominanceLabel::kG3PlayPlayable;
  if (IsKnownUnplayable(card, fireworks)) return DominanceLabel::kG2PlayUnplayable;
  return DominanceLabel::kNone;
}

bool IsStillNeeded(Card card, const Fireworks& fireworks,
                   const CardCounts& discarded) {
  if (card.rank <= fireworks[static_cast<int>(card.color)]) return false;
  for (int rank = fireworks[static_cast<int>(card.color)] + 1; rank < card.rank;
       ++rank) {
    const Card lower{card.color, rank};
    if (discarded[lower.Index()] >= CopiesOf(rank)) return false;
  }
  return true;
}

bool IsLastLiveCopy(Card card, const Fireworks& fireworks,
                    const CardCounts& discarded) {
  return IsStillNeeded(card, fireworks, discarded) &&
         discarded[card.Index()] == CopiesOf(card.rank) - 1;
}

}  // namespace hanabi_eval
