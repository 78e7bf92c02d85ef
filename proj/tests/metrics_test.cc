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


#include "hanabi_eval/metrics.h"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "gtest/gtest.h"
#include "hanabi_eval/rng.h"

namespace hanabi_eval {
namespace {

AgentSpec Named(std::string name, uint64_t seed = 0) {
  AgentSpec spec;
  spec.name = std::move(name);
  spec.algorithm = std::string(kRandomBot);
  spec.instance_seed = seed;
  return spec;
}

// Metric fixture: a trace whose turns alternate seats from seat 0 with the
// given action ids. Engine legality is irrelevant to the metrics.
GameTrace Synthetic(const AgentSpec& a, const AgentSpec& b, std::array<int, 2> idx,
                    const std::vector<int>& actions,
                    const std::vector<DominanceLabel>& labels = {}) {
  GameTrace t;
  t.seats = {a, b};
  t.pool_index = idx;
  t.termination = TerminalStatus::kDeckExhausted;
  for (size_t i = 0; i < actions.size(); ++i) {
    TurnRecord r;
    r.turn_index = static_cast<int>(i);
    r.seat = static_cast<int>(i % 2);
    r.action_id = actions[i];
    if (!labels.empty()) r.label = labels[i];
    t.turns.push_back(r);
    ++t.turns_per_seat[r.seat];
  }
  return t;
}

MetricsConfig Bits() {
  MetricsConfig c;
  c.log_base = kBitsBase;
  return c;
}

TEST(EntropyTest, BoundsAndUniform) {
  for (int k = 1; k <= 20; ++k) {
    std::vector<int64_t> uniform(k, 5);
    EXPECT_NEAR(Entropy(uniform, kBitsBase), std::log2(k), 1e-12);
    EXPECT_NEAR(Entropy(uniform, kNatsBase), std::log(k), 1e-12);
  }
  const std::vector<int64_t> point = {0, 9, 0};
  EXPECT_EQ(Entropy(point, kBitsBase), 0.0);
  const std::vector<int64_t> empty = {0, 0};
  EXPECT_EQ(Entropy(empty, kBitsBase), 0.0);
  Rng rng(1);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<int64_t> counts(20);
    for (auto& c : counts) c = rng.UniformInt(5);
    const double h = Entropy(counts, kBitsBase);
    EXPECT_GE(h, 0.0);
    EXPECT_LE(h, std::log2(20) + 1e-12);
  }
  const std::vector<int64_t> negative = {1, -1};
  EXPECT_THROW(Entropy(negative, kBitsBase), std::invalid_argument);
}

TEST(MutualInformationTest, IndependentAndIdentical) {
  // Product table: exactly independent.
  const std::vector<int64_t> product = {2, 4, 6, 3, 6, 9};
  EXPECT_NEAR(MutualInformation(product, 2, 3, kBitsBase), 0.0, 1e-12);
  const std::vector<int64_t> diagonal = {5, 0, 0, 0, 5, 0, 0, 0, 5};
  EXPECT_NEAR(MutualInformation(diagonal, 3, 3, kBitsBase), std::log2(3), 1e-12);
  EXPECT_THROW(MutualInformation(diagonal, 2, 3, kBitsBase), std::invalid_argument);
}

// The partner always repeats the agent's previous action, and the agent
// cycles uniformly through k actions: IC = log2 k.
TEST(InstantaneousCoordinationTest, CopyPolicyReachesLogK) {
  for (int k : {2, 4, 7, 20}) {
    std::vector<int> actions;
    for (int i = 0; i < 50 * k; ++i) {
      const int a = i % k;
      actions.push_back(a);
      actions.push_back(a);
    }
    const std::vector<GameTrace> traces = {
        Synthetic(Named("A"), Named("B"), {0, 1}, actions)};
    const InfoMetric ic = InstantaneousCoordination("A", traces, Bits());
    ASSERT_TRUE(ic.summary);
    EXPECT_NEAR(ic.summary->mean, std::log2(k), 1e-9) << k;
    EXPECT_EQ(ic.degenerate_blocks, 0);
  }
}

TEST(InstantaneousCoordinationTest, IndependentPlayIsNearZero) {
  Rng rng(5);
  std::vector<int> actions(200001);
  for (int& a : actions) a = rng.UniformInt(kNumActionIds);
  const std::vector<GameTrace> traces = {
      Synthetic(Named("A"), Named("B"), {0, 1}, actions)};
  const InfoMetric ic = InstantaneousCoordination("A", traces, Bits());
  ASSERT_TRUE(ic.summary);
  EXPECT_LT(ic.summary->mean, 0.05);
  EXPECT_GE(ic.summary->mean, 0.0);
}

TEST(InstantaneousCoordinationTest, SingleActionIsDegenerate) {
  const std::vector<GameTrace> traces = {
      Synthetic(Named("A"), Named("B"), {0, 1}, {3, 1, 3, 2, 3, 4})};
  const InfoMetric ic = InstantaneousCoordination("A", traces, Bits());
  ASSERT_TRUE(ic.summary);
  EXPECT_EQ(ic.summary->mean, 0.0);
  EXPECT_EQ(ic.degenerate_blocks, 1);
}

TEST(ActionEntropyTest, AdAndArdOnAFixture) {
  // Agent (seat 0) plays 0,1,0,1; partner plays 5,5,6,6.
  const std::vector<GameTrace> traces = {
      Synthetic(Named("A"), Named("B"), {0, 1}, {0, 5, 1, 5, 0, 6, 1, 6})};
  const InfoMetric ad = AdEntropy("A", traces, Bits());
  EXPECT_NEAR(ad.summary->mean, 1.0, 1e-12);
  // ARD pairs: (5,1), (5,0), (6,1) -> three equiprobable pairs.
  const InfoMetric ard = ArdEntropy("A", traces, Bits());
  EXPECT_NEAR(ard.summary->mean, std::log2(3), 1e-12);
  // Partner B: AD over {5,5,6,6} = 1 bit; ARD pairs (0,5),(1,5),(0,6),(1,6).
  EXPECT_NEAR(AdEntropy("B", traces, Bits()).summary->mean, 1.0, 1e-12);
  EXPECT_NEAR(ArdEntropy("B", traces, Bits()).summary->mean, 2.0, 1e-12);
  // Nats are the default unit.
  EXPECT_NEAR(AdEntropy("A", traces, MetricsConfig{}).summary->mean, std::log(2.0),
              1e-12);
}

TEST(ContextIndependenceTest, PerfectAlignmentGivesOne) {
  // Concept 0 holds exactly when action 3 is taken, concept 1 exactly when 7.
  const std::vector<int> actions = {3, 7, 3, 7, 7, 3};
  const std::vector<std::vector<uint8_t>> truth = {{1, 0, 1, 0, 0, 1},
                                                   {0, 1, 0, 1, 1, 0}};
  const CiValue ci = ContextIndependence(truth, actions);
  ASSERT_TRUE(ci.value);
  EXPECT_DOUBLE_EQ(*ci.value, 1.0);
  EXPECT_EQ(ci.dropped, 0);
}

TEST(ContextIndependenceTest, HandComputedTenTurns) {
  const std::vector<int> actions = {0, 0, 1, 1, 1, 2, 2, 0, 1, 2};
  const std::vector<std::vector<uint8_t>> truth = {
      {1, 1, 1, 0, 0, 0, 0, 1, 0, 0},  // m*=0: 3/4 * 3/3
      {0, 0, 1, 1, 1, 1, 0, 0, 0, 0},  // m*=1: 3/4 * 3/4
      {0, 0, 0, 0, 0, 1, 1, 0, 0, 0},  // m*=2: 2/2 * 2/3
      {0, 0, 0, 0, 0, 0, 0, 0, 0, 0},  // vacuous, dropped
      {1, 0, 1, 0, 0, 0, 0, 0, 0, 0},  // tie 0/1 -> m*=0: 1/2 * 1/3
  };
  const CiValue ci = ContextIndependence(truth, actions);
  ASSERT_TRUE(ci.value);
  const double expected = (0.75 + 0.5625 + 2.0 / 3.0 + 1.0 / 6.0) / 4.0;
  EXPECT_NEAR(*ci.value, expected, 1e-12);
  EXPECT_EQ(ci.dropped, 1);
  const std::vector<std::vector<uint8_t>> vacuous = {std::vector<uint8_t>(10, 0)};
  EXPECT_FALSE(ContextIndependence(vacuous, actions).value.has_value());
}

TEST(ContextIndependenceTest, MetricOverTraces) {
  // Context "hints=8" when the agent plays 5, "hints=0" when it discards 0.
  GameTrace t = Synthetic(Named("A"), Named("B"), {0, 1}, {5, 10, 0, 11, 5, 12, 0, 13});
  for (TurnRecord& r : t.turns) r.context[kHintTokensBin] = r.action_id == 0 ? 0 : 3;
  const std::vector<GameTrace> traces = {t};
  const std::vector<Atom> atoms = {{kHintTokensBin, 3, "hints=8"},
                                   {kHintTokensBin, 0, "hints=0"},
                                   {kBombsRemaining, 1, "bombs=1"}};
  const std::vector<ConceptFormula> formulas = {ConceptFormula::Literal(0, false),
                                                ConceptFormula::Literal(1, false),
                                                ConceptFormula::Literal(2, false)};
  for (Execution ex : {Execution::kSerial, Execution::kParallel}) {
    const CiMetric ci = ContextIndependenceMetric("A", traces, atoms, formulas, Bits(), ex);
    ASSERT_TRUE(ci.summary);
    EXPECT_DOUBLE_EQ(ci.summary->mean, 1.0);
    EXPECT_EQ(ci.dropped_concepts, 1);
  }
}

TEST(DominanceFrequencyTest, ArithmeticFixture) {
  using L = DominanceLabel;
  // Agent in seat 0 has ten turns: two G3, one G1, no G2.
  std::vector<int> actions(20, 10);
  std::vector<L> labels(20, L::kNone);
  labels[0] = L::kG3PlayPlayable;
  labels[4] = L::kG3PlayPlayable;
  labels[8] = L::kG1DiscardPlayable;
  labels[1] = L::kG2PlayUnplayable;  // partner's turn, not counted for A
  const std::vector<GameTrace> traces = {
      Synthetic(Named("A"), Named("B"), {0, 1}, actions, labels)};
  const auto g = DominanceFrequencies("A", traces);
  ASSERT_TRUE(g[2]);
  EXPECT_DOUBLE_EQ(g[2]->mean, 0.2);
  EXPECT_DOUBLE_EQ(g[0]->mean, 0.1);
  EXPECT_DOUBLE_EQ(g[1]->mean, 0.0);
  EXPECT_DOUBLE_EQ(DominanceFrequencies("B", traces)[1]->mean, 0.1);
}

TEST(DominanceFrequencyTest, MeanAndStdAcrossGames) {
  using L = DominanceLabel;
  std::vector<L> one(20, L::kNone), three(20, L::kNone);
  one[0] = L::kG3PlayPlayable;
  three[0] = three[2] = three[4] = L::kG3PlayPlayable;
  const std::vector<int> actions(20, 5);
  const std::vector<GameTrace> traces = {
      Synthetic(Named("A"), Named("B"), {0, 1}, actions, one),
      Synthetic(Named("A"), Named("B"), {0, 1}, actions, three)};
  const auto g3 = DominanceFrequencies("A", traces)[2];
  ASSERT_TRUE(g3);
  EXPECT_NEAR(g3->mean, 0.2, 1e-12);
  EXPECT_NEAR(g3->std, std::sqrt(0.02), 1e-12);
  EXPECT_EQ(g3->n, 2);
}

TEST(BlocksTest, MergesSeatOrdersAndMarksSelfPlay) {
  const AgentSpec a = Named("A", 1), a2 = Named("A", 2), b = Named("B");
  std::vector<GameTrace> traces = {
      Synthetic(a, b, {0, 2}, {1, 2}), Synthetic(b, a, {2, 0}, {1, 2}),
      Synthetic(a, a, {0, 0}, {1, 2}), Synthetic(a, a2, {0, 1}, {1, 2})};
  GameTrace aborted = Synthetic(a, b, {0, 2}, {1});
  aborted.aborted = true;
  traces.push_back(aborted);
  const auto blocks = BlocksFor("A", traces, Granularity::kBlock);
  // (0,0) self, (0,1), (0,2) merged, (1,0).
  ASSERT_EQ(blocks.size(), 4u);
  EXPECT_EQ(blocks[0].agent_index, 0);
  EXPECT_EQ(blocks[0].partner_index, 0);
  EXPECT_EQ(blocks[0].entries[0].seats, 0b11);
  EXPECT_EQ(blocks[2].partner_index, 2);
  ASSERT_EQ(blocks[2].entries.size(), 2u);
  EXPECT_EQ(blocks[2].entries[0].seats, 0b01);
  EXPECT_EQ(blocks[2].entries[1].seats, 0b10);
  EXPECT_EQ(blocks[3].agent_index, 1);
  EXPECT_EQ(BlocksFor("A", traces, Granularity::kGame).size(), 5u);
}

// Relabeling action ids, reordering games and swapping the seat order of a
// whole block leave every information metric unchanged.
TEST(MetricsTest, PermutationInvariance) {
  Rng rng(3);
  std::vector<GameTrace> traces;
  for (int g = 0; g < 30; ++g) {
    std::vector<int> actions(40);
    for (int& a : actions) a = rng.UniformInt(6) + (rng.UniformInt(3) == 0 ? 10 : 0);
    traces.push_back(Synthetic(Named("A"), Named("B"), {0, 1}, actions));
  }
  std::vector<int> perm(kNumActionIds);
  std::iota(perm.begin(), perm.end(), 0);
  std::reverse(perm.begin(), perm.end());
  std::vector<GameTrace> relabeled = traces;
  for (GameTrace& t : relabeled) {
    for (TurnRecord& r : t.turns) r.action_id = perm[r.action_id];
  }
  std::reverse(relabeled.begin(), relabeled.end());
  const MetricsConfig config = Bits();
  auto same = [](const InfoMetric& x, const InfoMetric& y) {
    ASSERT_TRUE(x.summary && y.summary);
    EXPECT_NEAR(x.summary->mean, y.summary->mean, 1e-12);
  };
  same(AdEntropy("A", traces, config), AdEntropy("A", relabeled, config));
  same(ArdEntropy("A", traces, config), ArdEntropy("A", relabeled, config));
  same(InstantaneousCoordination("A", traces, config),
       InstantaneousCoordination("A", relabeled, config));
}

std::vector<GameTrace> TournamentTraces() {
  TournamentConfig config;
  config.pool = {Named("RandomBot", 1), Named("RandomBot", 2)};
  AgentSpec holmes;
  holmes.name = holmes.algorithm = std::string(kHolmesBot);
  config.pool.push_back(holmes);
  config.games_per_pairing = 10;
  return RunTournament(config, Execution::kParallel).AllTraces();
}

TEST(MetricsTest, SerialAndParallelReportsMatch) {
  const auto traces = TournamentTraces();
  MetricsConfig config;
  config.ci_formulas = 60;
  const MetricReport serial = ComputeMetricReport(traces, config, Execution::kSerial);
  const MetricReport parallel = ComputeMetricReport(traces, config, Execution::kParallel);
  EXPECT_EQ(serial.ToCsv(), parallel.ToCsv());
  config.granularity = Granularity::kGame;
  EXPECT_EQ(ComputeMetricReport(traces, config, Execution::kSerial).ToCsv(),
            ComputeMetricReport(traces, config, Execution::kParallel).ToCsv());
}

TEST(MetricsTest, ReportRowsAndCsvRoundTrip) {
  const auto traces = TournamentTraces();
  MetricsConfig config;
  config.ci_formulas = 40;
  const MetricReport report = ComputeMetricReport(traces, config, Execution::kParallel);
  ASSERT_EQ(report.rows.size(), 2u);
  const MetricRow& random = report.rows[0];
  EXPECT_EQ(random.agent, "RandomBot");
  EXPECT_TRUE(random.intra_xp.has_value());
  EXPECT_FALSE(report.rows[1].intra_xp.has_value());
  EXPECT_EQ(random.games, 80);  // 4 pairings among instances, 4 with HolmesBot
  const std::string csv = report.ToCsv();
  EXPECT_EQ(csv.substr(0, csv.find('\n')),
            "agent,algorithm,self_play_mean,self_play_std,intra_xp_mean,intra_xp_std,"
            "inter_xp_mean,inter_xp_std,ci_mean,ci_std,ic_mean,ic_std,ad_entropy_mean,"
            "ad_entropy_std,ard_entropy_mean,ard_entropy_std,g1_mean,g1_std,g2_mean,"
            "g2_std,g3_mean,g3_std,games,unit,config_hash");
  EXPECT_NE(csv.find(",nats,"), std::string::npos);
  const MetricReport back = MetricReport::FromCsv(csv);
  ASSERT_EQ(back.rows.size(), 2u);
  EXPECT_EQ(back.config_hash, report.config_hash);
  EXPECT_NEAR(back.rows[0].ad_entropy->mean, random.ad_entropy->mean, 1e-6);
  EXPECT_FALSE(back.rows[1].intra_xp.has_value());
  EXPECT_EQ(back.ToCsv().substr(0, 100), csv.substr(0, 100));
  EXPECT_THROW(MetricValue(random, "nope"), std::invalid_argument);
  EXPECT_TRUE(MetricValue(random, "g1").has_value());
}

TEST(MetricsTest, ConfigHashTracksInputs) {
  const auto traces = TournamentTraces();
  MetricsConfig config;
  config.ci_formulas = 20;
  const std::string h1 = ComputeMetricReport(traces, config, Execution::kParallel).config_hash;
  config.ci_seed = 8;
  const std::string h2 = ComputeMetricReport(traces, config, Execution::kParallel).config_hash;
  EXPECT_NE(h1, h2);
  std::vector<GameTrace> fewer(traces.begin(), traces.end() - 1);
  config.ci_seed = 7;
  EXPECT_NE(ComputeMetricReport(fewer, config, Execution::kParallel).config_hash, h1);
}

}  // namespace
}  // namespace hanabi_eval
