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

#include <map>
#include <memory>
#include <vector>

#include "boost/math/distributions/chi_squared.hpp"
#include "gtest/gtest.h"
#include "hanabi_eval/engine.h"
#include "test_positions.h"

namespace hanabi_eval {
namespace {

using testing::MakePosition;

constexpr Color R = Color::kRed;
constexpr Color Y = Color::kYellow;
constexpr Color G = Color::kGreen;
constexpr Color B = Color::kBlue;
constexpr Color W = Color::kWhite;

AgentSpec Spec(std::string_view algorithm, uint64_t seed = 0) {
  AgentSpec spec;
  spec.name = std::string(algorithm);
  spec.algorithm = std::string(algorithm);
  spec.instance_seed = seed;
  return spec;
}

TEST(RandomBotTest, UniformOverLegalMoves) {
  const GameState s = NewGame(1);
  const Observation obs = MakeObservation(s, 0);
  const int k = static_cast<int>(obs.legal_moves.size());
  ASSERT_GT(k, 5);
  RandomBot bot(77);
  const int draws = 40000;
  std::map<int, int> counts;
  for (int i = 0; i < draws; ++i) {
    const Move m = bot.Act(obs);
    ASSERT_TRUE(obs.IsLegal(m));
    ++counts[m.ActionId()];
  }
  EXPECT_EQ(static_cast<int>(counts.size()), k);
  const double expected = static_cast<double>(draws) / k;
  double chi2 = 0.0;
  for (const auto& [id, n] : counts) chi2 += (n - expected) * (n - expected) / expected;
  const boost::math::chi_squared dist(k - 1);
  EXPECT_LT(chi2, boost::math::quantile(dist, 0.999));
}

TEST(RandomBotTest, SeedDeterminesStream) {
  const Observation obs = MakeObservation(NewGame(2), 0);
  auto a = MakeAgent(Spec(kRandomBot, 1), 123);
  auto b = MakeAgent(Spec(kRandomBot, 1), 123);
  auto c = MakeAgent(Spec(kRandomBot, 1), 124);
  int differ = 0;
  for (int i = 0; i < 50; ++i) {
    const Move ma = a->Act(obs);
    EXPECT_EQ(ma, b->Act(obs));
    differ += ma != c->Act(obs);
  }
  EXPECT_GT(differ, 0);
}

TEST(AgentSpecTest, JsonRoundTrip) {
  AgentSpec holmes = Spec(kHolmesBot);
  holmes.name = "HolmesBot-0.8";
  holmes.risk_threshold = 0.8;
  EXPECT_EQ(AgentSpecFromJson(AgentSpecToJson(holmes)), holmes);
  AgentSpec ext = Spec(kExternalPolicy);
  ext.command = "./policy --flag";
  ext.timeout_ms = 250;
  EXPECT_EQ(AgentSpecFromJson(AgentSpecToJson(ext)), ext);
  EXPECT_THROW(AgentSpecFromJson({{"algorithm", "NoSuchBot"}}), std::invalid_argument);
  EXPECT_THROW(AgentSpecFromJson({{"algorithm", "External"}}), std::invalid_argument);
}

TEST(AgentSpecTest, Classification) {
  EXPECT_TRUE(IsSeeded(kRandomBot));
  EXPECT_FALSE(IsSeeded(kSmartBot));
  EXPECT_TRUE(IsRuleBased(kHolmesBot));
  EXPECT_FALSE(IsRuleBased(kExternalPolicy));
  EXPECT_TRUE(IsKnownAlgorithm(kExternalPolicy));
}

// Seat 0 to move; no card of seat 1 is playable on empty fireworks and the
// oldest card of seat 1 is a 5.
GameState::Position QuietPosition() {
  auto p = MakePosition({{R, 3}, {Y, 3}, {G, 3}, {B, 3}, {W, 3}},
                        {{R, 5}, {Y, 2}, {G, 2}, {B, 4}, {W, 4}});
  p.hint_tokens = 4;
  return p;
}

TEST(LadderBotTest, PlaysKnownPlayableFirst) {
  auto p = QuietPosition();
  p.knowledge[0].resize(kHandSize);
  p.knowledge[0][2].candidates = CardSet::OfRank(1);
  p.knowledge[0][2].rank_hint = 1;
  const Observation obs = MakeObservation(GameState::FromPosition(p), 0);
  const Decision d = LadderBot::Simple().Decide(obs);
  EXPECT_EQ(d.move, Move::Play(2));
  EXPECT_EQ(d.rule, Rule::kPlayKnownPlayable);
}

TEST(LadderBotTest, HintsPartnersPlayableCardColorFirst) {
  auto p = MakePosition({{R, 3}, {Y, 3}, {G, 3}, {B, 3}, {W, 3}},
                        {{R, 4}, {B, 1}, {G, 2}, {B, 4}, {W, 4}});
  p.hint_tokens = 4;
  const Observation obs = MakeObservation(GameState::FromPosition(p), 0);
  const Decision d = LadderBot::Simple().Decide(obs);
  EXPECT_EQ(d.move, Move::HintColor(B));
  EXPECT_EQ(d.rule, Rule::kHintPlayable);

  // Color already known: the rank is hinted instead.
  p.knowledge[1].resize(kHandSize);
  p.knowledge[1][1].color_hint = B;
  p.knowledge[1][1].candidates = CardSet::OfColor(B);
  const Decision d2 =
      LadderBot::Simple().Decide(MakeObservation(GameState::FromPosition(p), 0));
  EXPECT_EQ(d2.move, Move::HintRank(1));
}

TEST(LadderBotTest, ValueBotSavesLastCopySimpleBotDoesNot) {
  const Observation obs = MakeObservation(GameState::FromPosition(QuietPosition()), 0);
  const Decision value = LadderBot::Value().Decide(obs);
  EXPECT_EQ(value.move, Move::HintRank(5));
  EXPECT_EQ(value.rule, Rule::kHintValuable);
  const Decision simple = LadderBot::Simple().Decide(obs);
  EXPECT_EQ(simple.move, Move::Discard(0));
  EXPECT_EQ(simple.rule, Rule::kDiscardOldestUnhinted);
}

TEST(LadderBotTest, RiskPlayRespectsThreshold) {
  // Own slot 1 is a known 2; with red, yellow and green at 1, 3/5 of the
  // candidates are playable.
  auto p = MakePosition({{R, 3}, {R, 2}, {G, 3}, {B, 3}, {W, 3}},
                        {{R, 4}, {Y, 2}, {G, 2}, {B, 4}, {W, 4}}, {1, 1, 1, 0, 0});
  p.hint_tokens = 0;  // rules 2 and 3 need tokens
  p.knowledge[0].resize(kHandSize);
  p.knowledge[0][1].candidates = CardSet::OfRank(2);
  p.knowledge[0][1].rank_hint = 2;
  const Observation obs = MakeObservation(GameState::FromPosition(p), 0);
  const Decision holmes = LadderBot::Holmes(0.6).Decide(obs);
  EXPECT_EQ(holmes.move, Move::Play(1));
  EXPECT_EQ(holmes.rule, Rule::kRiskPlay);
  const Decision cautious = LadderBot::Holmes(0.8).Decide(obs);
  EXPECT_EQ(cautious.rule, Rule::kDiscardOldestUnhinted);
  EXPECT_EQ(cautious.move, Move::Discard(0));

  // Not with a single bomb left.
  p.bombs_remaining = 1;
  const Decision last_bomb =
      LadderBot::Holmes(0.6).Decide(MakeObservation(GameState::FromPosition(p), 0));
  EXPECT_NE(last_bomb.rule, Rule::kRiskPlay);
}

TEST(LadderBotTest, FullTokensFallBackToAHint) {
  auto p = QuietPosition();
  p.hint_tokens = kMaxHintTokens;
  const Observation obs = MakeObservation(GameState::FromPosition(p), 0);
  const Decision d = LadderBot::Simple().Decide(obs);
  EXPECT_TRUE(d.move.IsHint());
  EXPECT_EQ(d.rule, Rule::kFallbackHint);
  EXPECT_TRUE(obs.IsLegal(d.move));
}

TEST(SmartBotTest, PlaysSingleTouchedCard) {
  auto p = MakePosition({{R, 3}, {Y, 1}, {G, 3}, {B, 3}, {W, 3}},
                        {{R, 4}, {Y, 2}, {G, 2}, {B, 4}, {W, 4}});
  p.current_seat = 1;
  p.hint_tokens = 4;
  GameState s = GameState::FromPosition(p);
  const Observation hinter = MakeObservation(s, 1);
  const Decision hint = SmartBot().Decide(hinter);
  EXPECT_EQ(hint.rule, Rule::kHintPlayable);
  s.Apply(hint.move);
  const Decision d = SmartBot().Decide(MakeObservation(s, 0));
  EXPECT_EQ(d.move, Move::Play(1));
  EXPECT_EQ(d.rule, Rule::kPlayHintedConvention);
}

TEST(SmartBotTest, NeverGivesAMisreadableHint) {
  // A single-touch hint on the unplayable R3 would read as a play signal.
  auto p = MakePosition({{R, 4}, {Y, 4}, {G, 4}, {B, 4}, {W, 4}},
                        {{R, 3}, {Y, 2}, {Y, 3}, {B, 2}, {B, 3}});
  p.hint_tokens = kMaxHintTokens;
  const Observation obs = MakeObservation(GameState::FromPosition(p), 0);
  const Decision d = SmartBot().Decide(obs);
  ASSERT_TRUE(d.move.IsHint());
  EXPECT_NE(d.move, Move::HintColor(R));
}

// Every bot returns a legal move in every state it meets, in all pairings.
TEST(AgentsTest, LegalityFuzz) {
  const std::vector<std::string_view> algorithms = {kRandomBot, kSimpleBot, kValueBot,
                                                    kHolmesBot, kSmartBot};
  for (size_t a = 0; a < algorithms.size(); ++a) {
    for (size_t b = 0; b < algorithms.size(); ++b) {
      for (uint64_t seed = 0; seed < 40; ++seed) {
        for (RulesConfig rules : {RulesConfig{}, RulesConfig{true, true}}) {
          GameState s = NewGame(seed * 13 + a * 5 + b, rules);
          std::array<std::unique_ptr<Agent>, 2> agents = {
              MakeAgent(Spec(algorithms[a], seed), seed),
              MakeAgent(Spec(algorithms[b], seed + 1), seed + 1)};
          while (!s.IsTerminal()) {
            const Observation obs = MakeObservation(s, s.current_seat());
            const Move m = agents[s.current_seat()]->Act(obs);
            ASSERT_TRUE(obs.IsLegal(m))
                << algorithms[s.current_seat() == 0 ? a : b] << " " << m.ToString();
            s.Apply(m);
            ASSERT_LT(s.turn_index(), 200);
          }
        }
      }
    }
  }
}

double MeanSelfPlay(const AgentSpec& spec, int games) {
  double total = 0.0;
  for (int g = 0; g < games; ++g) {
    GameState s = NewGame(5000 + g);
    std::array<std::unique_ptr<Agent>, 2> agents = {MakeAgent(spec, g),
                                                    MakeAgent(spec, g + 7)};
    while (!s.IsTerminal()) {
      s.Apply(agents[s.current_seat()]->Act(MakeObservation(s, s.current_seat())));
    }
    total += s.Score();
  }
  return total / games;
}

TEST(AgentsTest, LadderImprovesOnRandom) {
  const double random = MeanSelfPlay(Spec(kRandomBot), 200);
  const double simple = MeanSelfPlay(Spec(kSimpleBot), 200);
  const double smart = MeanSelfPlay(Spec(kSmartBot), 200);
  EXPECT_LT(random, 3.0);
  EXPECT_GT(simple, random + 10.0);
  EXPECT_GT(smart, simple);
}

}  // namespace
}  // namespace hanabi_eval
