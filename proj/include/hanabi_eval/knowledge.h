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

// What a player provably knows about their own hand.
//
// "Known" is deliberately narrow: direct hint constraints (positive and
// negative) intersected with public card counting over fireworks, discards
// and the partner's visible hand. Convention-based inference never enters
// here, so dominance labels stay agent-agnostic.

#ifndef HANABI_EVAL_KNOWLEDGE_H_
#define HANABI_EVAL_KNOWLEDGE_H_

#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "hanabi_eval/card.h"

namespace hanabi_eval {

struct CardKnowledge {
  CardSet candidates = CardSet::All();
  std::optional<Color> color_hint;
  std::optional<int> rank_hint;
  // Turn indices of hints that touched this card, oldest first.
  std::vector<int> hint_turns;

  bool DirectlyHinted() const { return color_hint || rank_hint; }
};

// Aligned with the hand: entry i describes slot i (0 = oldest).
using HandKnowledge = std::vector<CardKnowledge>;

// Bitmask over hand slots.
using SlotMask = uint32_t;

// Slots of `hand` a hint would touch.
SlotMask TouchedSlots(std::span<const Card> hand, Move hint);

// Touched slots are restricted to the hinted attribute; untouched slots
// exclude it.
HandKnowledge UpdateOnHint(HandKnowledge knowledge, Move hint, SlotMask touched,
                           int turn_index);

// Copies of each identity visible to a viewer: cards on the fireworks, in the
// discard pile, and in `partner_hand`.
CardCounts VisibleCounts(const Fireworks& fireworks,
                         std::span<const Card> discards,
                         std::span<const Card> partner_hand);

// Drops every candidate whose copies are all accounted for in `visible`.
HandKnowledge ApplyCardCounting(HandKnowledge knowledge,
                                const CardCounts& visible);

bool IsKnownPlayable(const CardKnowledge& card, const Fireworks& fireworks);
bool IsKnownUnplayable(const CardKnowledge& card, const Fireworks& fireworks);

// Fraction of candidate identities that are playable, uniform over the
// candidate set.
double PlayableFraction(const CardKnowledge& card, const Fireworks& fireworks);

enum class DominanceLabel : uint8_t {
  kNone,
  kG1DiscardPlayable,
  kG2PlayUnplayable,
  kG3PlayPlayable,
};

std::string_view DominanceLabelName(DominanceLabel label);
std::optional<DominanceLabel> DominanceLabelFromName(std::string_view name);

// Single-step dominance class of `move` given the mover's knowledge. Hints
// are always kNone.
DominanceLabel LabelMove(const HandKnowledge& knowledge, Move move,
                         const Fireworks& fireworks);

// Card can still contribute to the score: not yet played and every lower
// rank of its suit still has a live copy.
bool IsStillNeeded(Card card, const Fireworks& fireworks,
                   const CardCounts& discarded);

// Still needed and every other copy has been discarded.
bool IsLastLiveCopy(Card card, const Fireworks& fireworks,
                    const CardCounts& discarded);

CardCounts CountCards(std::span<const Card> cards);

}  // namespace hanabi_eval

#endif  // HANABI_EVAL_KNOWLEDGE_H_
