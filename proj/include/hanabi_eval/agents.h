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

// The agent pool: a uniform-random baseline, the SimpleBot -> ValueBot ->
// HolmesBot rule ladder, a conventions bot, and an adapter for external
// policies (see external_policy.h).
//
// Each rule bot is an ordered rule list with explicit tie-breaking, so its
// behavior is a deterministic function of the observation.

#ifndef HANABI_EVAL_AGENTS_H_
#define HANABI_EVAL_AGENTS_H_

#include <cstdint>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "hanabi_eval/engine.h"
#include "hanabi_eval/rng.h"
#include "json.hpp"

namespace hanabi_eval {

inline constexpr std::string_view kRandomBot = "RandomBot";
inline constexpr std::string_view kSimpleBot = "SimpleBot";
inline constexpr std::string_view kValueBot = "ValueBot";
inline constexpr std::string_view kHolmesBot = "HolmesBot";
inline constexpr std::string_view kSmartBot = "SmartBot";
inline constexpr std::string_view kExternalPolicy = "External";

inline constexpr double kDefaultRiskThreshold = 0.6;

// One member of an agent pool. `name` is the algorithm label used for
// grouping (self-play / intra-XP / inter-XP and every metric row); instances
// of one name differ only in `instance_seed`.
struct AgentSpec {
  std::string name;
  std::string algorithm;
  uint64_t instance_seed = 0;
  double risk_threshold = kDefaultRiskThreshold;  // HolmesBot only
  std::string command;                            // External only
  int timeout_ms = 5000;                          // External only

  friend bool operator==(const AgentSpec&, const AgentSpec&) = default;
};

// True for algorithms whose behavior depends on the instance seed.
bool IsSeeded(std::string_view algorithm);
// True for the handcrafted rule bots.
bool IsRuleBased(std::string_view algorithm);
bool IsKnownAlgorithm(std::string_view algorithm);

nlohmann::json AgentSpecToJson(const AgentSpec& spec);
AgentSpec AgentSpecFromJson(const nlohmann::json& j);

class Agent {
 public:
  virtual ~Agent() = default;
  // Returns a member of obs.legal_moves.
  virtual Move Act(const Observation& obs) = 0;
};

// `stream_seed` drives any stochastic choice; it is independent of the deck
// stream.
std::unique_ptr<Agent> MakeAgent(const AgentSpec& spec, uint64_t stream_seed);

class RandomBot : public Agent {
 public:
  explicit RandomBot(uint64_t seed) : rng_(seed) {}
  Move Act(const Observation& obs) override;

 private:
  Rng rng_;
};

// Which rule of a rule bot produced a move.
enum class Rule : uint8_t {
  kPlayKnownPlayable,
  kPlayHintedConvention,
  kHintPlayable,
  kHintValuable,
  kRiskPlay,
  kDiscardOldestUnhinted,
  kDiscardOldest,
  kFallbackHint,
  kFallbackFirstLegal,
};

std::string_view RuleName(Rule rule);

struct Decision {
  Move move;
  Rule rule;
};

struct LadderConfig {
  bool valuable_card_rules = false;
  bool card_counting = false;
  bool risk_plays = false;
  double risk_threshold = kDefaultRiskThreshold;
};

// SimpleBot, ValueBot and HolmesBot share one rule list; each rung switches
// on more of it.
//   1. Play the lowest-index known-playable card.
//   2. With tokens, hint the partner's lowest-index playable card (that the
//      partner does not already know is playable) an attribute it lacks,
//      color before rank.
//   3. [value] With tokens, if the partner's oldest unhinted card is the last
//      live copy of a needed card, hint its rank.
//   4. [risk] With >= 2 bombs left, play the card with the highest playable
//      fraction if it reaches the threshold.
//   5. Discard the oldest unhinted card, else the oldest. [value] Cards known
//      to be last live copies are skipped while any alternative exists.
// When discarding is illegal (full token pool) a fallback hint is given.
class LadderBot : public Agent {
 public:
  explicit LadderBot(LadderConfig config) : config_(config) {}
  static LadderBot Simple() { return LadderBot({}); }
  static LadderBot Value() { return LadderBot({.valuable_card_rules = true}); }
  static LadderBot Holmes(double threshold = kDefaultRiskThreshold) {
    return LadderBot({.valuable_card_rules = true,
                      .card_counting = true,
                      .risk_plays = true,
                      .risk_threshold = threshold});
  }

  Decision Decide(const Observation& obs) const;
  Move Act(const Observation& obs) override { return Decide(obs).move; }
  const LadderConfig& config() const { return config_; }

 private:
  LadderConfig config_;
};

// Conventions bot.
//   1. If the partner's last move was a hint touching exactly one of our
//      cards and that card may be playable, play it.
//   2. Play a known-playable card, preferring one whose playability the
//      partner cannot deduce from public information.
//   3. With tokens, give the hint that newly marks the most playable cards
//      (ties: fewer touched cards, then color over rank). Hints the partner
//      would misread as a play signal are never given.
//   4. With tokens, save-hint the partner's oldest unhinted card if it is the
//      last live copy of a needed card.
//   5. Discard the oldest unhinted card, else the oldest.
class SmartBot : public Agent {
 public:
  Decision Decide(const Observation& obs) const;
  Move Act(const Observation& obs) override { return Decide(obs).move; }
};

// A legal hint that tells the partner something new, else any legal hint,
// else the first legal move. Used whenever a rule bot may not discard.
Decision FallbackMove(const Observation& obs);

}  // namespace hanabi_eval

#endif  // HANABI_EVAL_AGENTS_H_
