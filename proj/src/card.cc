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

#include "hanabi_eval/card.h"

#include <stdexcept>

namespace hanabi_eval {

namespace {
constexpr std::array<char, kNumColors> kColorChars = {'R', 'Y', 'G', 'B', 'W'};
constexpr std::array<std::string_view, kNumColors> kColorNames = {
    "red", "yellow", "green", "blue", "white"};
}  // namespace

char ColorChar(Color c) { return kColorChars[static_cast<int>(c)]; }

std::string_view ColorName(Color c) { return kColorNames[static_cast<int>(c)]; }

std::optional<Color> ColorFromChar(char c) {
  for (int i = 0; i < kNumColors; ++i) {
    if (kColorChars[i] == c) return static_cast<Color>(i);
  }
  return std::nullopt;
}

std::string Card::ToString() const {
  return std::string{ColorChar(color), static_cast<char>('0' + rank)};
}

CardSet CardSet::OfColor(Color c) {
  CardSet set;
  for (int rank = 1; rank <= kNumRanks; ++rank) set.Insert(Card{c, rank});
  return set;
}

CardSet CardSet::OfRank(int rank) {
  CardSet set;
  for (int c = 0; c < kNumColors; ++c) set.Insert(Card{static_cast<Color>(c), rank});
  return set;
}

int Move::ActionId() const {
  switch (kind) {
    case MoveKind::kDiscard:
      return value;
    case MoveKind::kPlay:
      return kHandSize + value;
    case MoveKind::kHintColor:
      return 2 * kHandSize + value;
    case MoveKind::kHintRank:
      return 2 * kHandSize + kNumColors + (value - 1);
  }
  return -1;
}

Move Move::FromActionId(int id) {
  if (id < 0 || id >= kNumActions) {
    throw std::out_of_range("action id out of range: " + std::to_string(id));
  }
  if (id < kHandSize) return Discard(id);
  if (id < 2 * kHandSize) return Play(id - kHandSize);
  if (id < 2 * kHandSize + kNumColors) {
    return HintColor(static_cast<Color>(id - 2 * kHandSize));
  }
  return HintRank(id - 2 * kHandSize - kNumColors + 1);
}

std::string Move::ToString() const {
  switch (kind) {
    case MoveKind::kDiscard:
      return "discard " + std::to_string(value);
    case MoveKind::kPlay:
      return "play " + std::to_string(value);
    case MoveKind::kHintColor:
      return "hint " + std::string(ColorName(HintedColor()));
    case MoveKind::kHintRank:
      return "hint " + std::to_string(value);
  }
  return "?";
}

}  // namespace hanabi_eval
