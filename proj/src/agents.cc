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

#include "hanabi_eval/agents.h"

#include <array>
#include <bit>
#include <functional>
#include <stdexcept>

#include "hanabi_eval/external_policy.h"

namespace hanabi_eval {

namespace {

using HintFilter = std::function<bool(Move)>;

constexpr std::array<std::string_view, 9> kRuleNames = {
    "play_known_playable", "play_hinted_convention", "hint_playable",
    "hint_valuable",       "risk_play",              "discard_oldest_unhinted",
    "discard_oldest",      "fallback_hint",          "fallback_first_legal"};

// Knowledge both players can compute: hints plus fireworks and discards.
HandKnowledge PublicKnowledge(const HandKnowledge& hints, const Observation& obs) {
  return ApplyCardCounting(hints, VisibleCounts(obs.fireworks, obs.discards, {}));
}

bool GivesNewInformation(const Observation& obs, Move hint) {
  const SlotMask touched = TouchedSlots(obs.partner_hand, hint);
  for (size_t i = 0; i < obs.partner_hand.size(); ++i) {
    if (!((touched >> i) & 1u)) continue;
    const CardKnowledge& k = obs.partner_knowledge[i];
    if (hint.kind == MoveKind::kHintColor ? !k.color_hint : !k.rank_hint) {
      return true;
    }
  }
  return false;
}

Decision FallbackWithFilter(const Observation& obs, const HintFilter& acceptable) {
  const Move* any_hint = nullptr;
  for (const Move& m : obs.legal_moves) {
    if (!m.IsHint() || (acceptable && !acceptable(m))) continue;
    if (GivesNewInformation(obs, m)) return {m, Rule::kFallbackHint};
    if (!any_hint) any_hint = &m;
  }
  if (any_hint) return {*any_hint, Rule::kFallbackHint};
  for (const Move& m : obs.legal_moves) {
    if (m.IsHint()) return {m, Rule::kFallbackHint};
  }
  if (obs.legal_moves.empty()) {
    throw std::logic_error("agent asked to act in a finished game");
  }
  return {obs.legal_moves.front(), Rule::kFallbackFirstLegal};
}

bool AllCandidatesValuable(const CardKnowledge& k, const Fireworks& fireworks,
                           const CardCounts& discarded) {
  if (k.candidates.Empty()) return false;
  bool all = true;
  k.candidates.ForEach(
      [&](Card c) { all = all && IsLastLiveCopy(c, fireworks, discarded); });
  return all;
}

std::optional<int> OldestUnhintedSlot(const HandKnowledge& k) {
  for (size_t i = 0; i < k.size(); ++i) {
    if (!k[i].DirectlyHinted()) return static_cast<int>(i);
  }
  return std::nullopt;
}

// Partner's reading of a hint under the single-touch play convention: a card
// is played if it becomes known playable, or if it is the only card touched
// and might be playable.
bool PartnerWouldPlay(const CardKnowledge& after, SlotMask touched, int slot,
                      const Fireworks& fireworks) {
  if (IsKnownPlayable(after, fireworks)) return true;
  return touched == (SlotMask{1} << slot) &&
         PlayableFraction(after, fireworks) > 0.0;
}

// True if the hint could make the partner play an unplayable card.
bool CausesMisread(const Observation& obs, Move hint) {
  const SlotMask touched = TouchedSlots(obs.partner_hand, hint);
  if (std::popcount(touched) != 1) return false;
  const int slot = std::countr_zero(touched);
  if (IsPlayable(obs.partner_hand[slot], obs.fireworks)) return false;
  HandKnowledge after = PublicKnowledge(
      UpdateOnHint(obs.partner_knowledge, hint, touched, obs.turn_index), obs);
  return PlayableFraction(after[slot], obs.fireworks) > 0.0;
}

}  // namespace

bool IsSeeded(std::string_view algorithm) { return algorithm == kRandomBot; }

bool IsRuleBased(std::string_view algorithm) {
  return algorithm == kRandomBot || algorithm == kSimpleBot ||
         algorithm == kValueBot || algorithm == kHolmesBot ||
         algorithm == kSmartBot;
}

bool IsKnownAlgorithm(std::string_view algorithm) {
  return IsRuleBased(algorithm) || algorithm == kExternalPolicy;
}

nlohmann::json AgentSpecToJson(const AgentSpec& spec) {
  nlohmann::json j;
  j["name"] = spec.name;
  j["algorithm"] = spec.algorithm;
  j["seed"] = spec.instance_seed;
  if (spec.algorithm == kHolmesBot) j["risk_threshold"] = spec.risk_threshold;
  if (spec.algorithm == kExternalPolicy) {
    j["command"] = spec.command;
    j["timeout_ms"] = spec.timeout_ms;
  }
  return j;
}

AgentSpec AgentSpecFromJson(const nlohmann::json& j) {
  AgentSpec spec;
  spec.algorithm = j.at("algorithm").get<std::string>();
  if (!IsKnownAlgorithm(spec.algorithm)) {
    throw std::invalid_argument("unknown algorithm: " + spec.algorithm);
  }
  spec.name = j.value("name", spec.algorithm);
  spec.instance_seed = j.value("seed", uint64_t{0});
  spec.risk_threshold = j.value("risk_threshold", kDefaultRiskThreshold);
  spec.command = j.value("command", std::string());
  spec.timeout_ms = j.value("timeout_ms", 5000);
  if (spec.algorithm == kExternalPolicy && spec.command.empty()) {
    throw std::invalid_argument("external policy '" + spec.name +
                                "' needs a command");
  }
  return spec;
}

std::unique_ptr<Agent> MakeAgent(const AgentSpec& spec, uint64_t stream_seed) {
  if (spec.algorithm == kRandomBot) return std::make_unique<RandomBot>(stream_seed);
  if (spec.algorithm == kSimpleBot) {
    return std::make_unique<LadderBot>(LadderBot::Simple());
  }
  if (spec.algorithm == kValueBot) {
    return std::make_unique<LadderBot>(LadderBot::Value());
  }
  if (spec.algorithm == kHolmesBot) {
    return std::make_unique<LadderBot>(LadderBot::Holmes(spec.risk_threshold));
  }
  if (spec.algorithm == kSmartBot) return std::make_unique<SmartBot>();
  if (spec.algorithm == kExternalPolicy) {
    return std::make_unique<ExternalPolicy>(
        std::make_unique<SubprocessChannel>(spec.command),
        std::chrono::milliseconds(spec.timeout_ms));
  }
  throw std::invalid_argument("unknown algorithm: " + spec.algorithm);
}

std::string_view RuleName(Rule rule) { return kRuleNames[static_cast<int>(rule)]; }

Move RandomBot::Act(const Observation& obs) {
  if (obs.legal_moves.empty()) {
    throw std::logic_error("agent asked to act in a finished game");
  }
  return obs.legal_moves[rng_.UniformInt(static_cast<int>(obs.legal_moves.size()))];
}

Decision FallbackMove(const Observation& obs) { return FallbackWithFilter(obs, {}); }

Decision LadderBot::Decide(const Observation& obs) const {
  const HandKnowledge own = obs.OwnKnowledge(config_.card_counting);
  const Fireworks& fw = obs.fireworks;

  for (size_t i = 0; i < own.size(); ++i) {
    if (IsKnownPlayable(own[i], fw)) {
      return {Move::Play(static_cast<int>(i)), Rule::kPlayKnownPlayable};
    }
  }

  if (obs.hint_tokens > 0) {
    for (size_t j = 0; j < obs.partner_hand.size(); ++j) {
      const Card card = obs.partner_hand[j];
      const CardKnowledge& pk = obs.partner_knowledge[j];
      if (!IsPlayable(card, fw) || IsKnownPlayable(pk, fw)) continue;
      if (!pk.color_hint) return {Move::HintColor(card.color), Rule::kHintPlayable};
      if (!pk.rank_hint) return {Move::HintRank(card.rank), Rule::kHintPlayable};
    }
  }

  const CardCounts discarded = obs.DiscardCounts();
  if (config_.valuable_card_rules && obs.hint_tokens > 0) {
    if (auto chop = OldestUnhintedSlot(obs.partner_knowledge)) {
      const Card card = obs.partner_hand[*chop];
      if (IsLastLiveCopy(card, fw, discarded)) {
        return {Move::HintRank(card.rank), Rule::kHintValuable};
      }
    }
  }

  if (config_.risk_plays && obs.bombs_remaining >= 2) {
    int best = -1;
    double best_fraction = 0.0;
    for (size_t i = 0; i < own.size(); ++i) {
      const double f = PlayableFraction(own[i], fw);
      if (f > best_fraction) {
        best_fraction = f;
        best = static_cast<int>(i);
      }
    }
    if (best >= 0 && best_fraction >= config_.risk_threshold) {
      return {Move::Play(best), Rule::kRiskPlay};
    }
  }

  if (!obs.IsLegal(Move::Discard(0))) return FallbackMove(obs);

  auto protected_slot = [&](size_t i) {
    return config_.valuable_card_rules &&
           AllCandidatesValuable(own[i], fw, discarded);
  };
  for (size_t i = 0; i < own.size(); ++i) {
    if (!own[i].DirectlyHinted() && !protected_slot(i)) {
      return {Move::Discard(static_cast<int>(i)), Rule::kDiscardOldestUnhinted};
    }
  }
  for (size_t i = 0; i < own.size(); ++i) {
    if (!protected_slot(i)) {
      return {Move::Discard(static_cast<int>(i)), Rule::kDiscardOldest};
    }
  }
  if (auto slot = OldestUnhintedSlot(own)) {
    return {Move::Discard(*slot), Rule::kDiscardOldestUnhinted};
  }
  return {Move::Discard(0), Rule::kDiscardOldest};
}

Decision SmartBot::Decide(const Observation& obs) const {
  const HandKnowledge own = obs.OwnKnowledge(/*card_counting=*/true);
  const Fireworks& fw = obs.fireworks;

  if (obs.last_event && obs.last_event->seat != obs.viewer &&
      obs.last_event->move.IsHint() &&
      std::popcount(obs.last_event->touched) == 1) {
    const int slot = std::countr_zero(obs.last_event->touched);
    if (slot < static_cast<int>(own.size()) &&
        PlayableFraction(own[slot], fw) > 0.0) {
      return {Move::Play(slot), Rule::kPlayHintedConvention};
    }
  }

  const HandKnowledge own_public = PublicKnowledge(obs.own_knowledge, obs);
  int deducible = -1;
  for (size_t i = 0; i < own.size(); ++i) {
    if (!IsKnownPlayable(own[i], fw)) continue;
    if (!IsKnownPlayable(own_public[i], fw)) {
      return {Move::Play(static_cast<int>(i)), Rule::kPlayKnownPlayable};
    }
    if (deducible < 0) deducible = static_cast<int>(i);
  }
  if (deducible >= 0) return {Move::Play(deducible), Rule::kPlayKnownPlayable};

  const HintFilter safe = [&](Move m) { return !CausesMisread(obs, m); };

  if (obs.hint_tokens > 0) {
    const HandKnowledge partner_before = PublicKnowledge(obs.partner_knowledge, obs);
    CardSet already_coming;
    for (size_t j = 0; j < obs.partner_hand.size(); ++j) {
      if (IsKnownPlayable(partner_before[j], fw)) {
        already_coming.Insert(obs.partner_hand[j]);
      }
    }
    std::optional<Move> best;
    int best_marked = 0;
    int best_touched = 0;
    for (const Move& hint : obs.legal_moves) {
      if (!hint.IsHint() || !safe(hint)) continue;
      const SlotMask touched = TouchedSlots(obs.partner_hand, hint);
      const HandKnowledge after = PublicKnowledge(
          UpdateOnHint(obs.partner_knowledge, hint, touched, obs.turn_index), obs);
      CardSet marked;
      for (size_t j = 0; j < obs.partner_hand.size(); ++j) {
        const Card card = obs.partner_hand[j];
        if (!IsPlayable(card, fw) || already_coming.Contains(card)) continue;
        if (IsKnownPlayable(partner_before[j], fw)) continue;
        if (PartnerWouldPlay(after[j], touched, static_cast<int>(j), fw)) {
          marked.Insert(card);
        }
      }
      const int n_marked = marked.Size();
      const int n_touched = std::popcount(touched);
      // Legal moves are in action-id order, so earlier candidates already win
      // the color-over-rank and lower-value ties.
      if (n_marked > best_marked ||
          (n_marked == best_marked && best && n_touched < best_touched)) {
        best = hint;
        best_marked = n_marked;
        best_touched = n_touched;
      }
    }
    if (best && best_marked > 0) return {*best, Rule::kHintPlayable};

    const CardCounts discarded = obs.DiscardCounts();
    if (auto chop = OldestUnhintedSlot(obs.partner_knowledge)) {
      const Card card = obs.partner_hand[*chop];
      if (IsLastLiveCopy(card, fw, discarded)) {
        for (Move save : {Move::HintRank(card.rank), Move::HintColor(card.color)}) {
          if (obs.IsLegal(save) && safe(save)) return {save, Rule::kHintValuable};
        }
      }
    }
  }

  if (!obs.IsLegal(Move::Discard(0))) return FallbackWithFilter(obs, safe);
  if (auto slot = OldestUnhintedSlot(own)) {
    return {Move::Discard(*slot), Rule::kDiscardOldestUnhinted};
  }
  return {Move::Discard(0), Rule::kDiscardOldest};
}

}  // namespace hanabi_eval
