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


// Behavioural metrics computed from game traces: action and action-response
// entropies, instantaneous coordination, context independence and the
// dominated/dominant move frequencies.
//
// Entropy-style metrics are computed per block and summarized as mean and
// sample std across blocks. A block is every game one agent instance played
// against one partner instance (both seat orders). With Granularity::kGame
// each game is its own block.

#ifndef HANABI_EVAL_METRICS_H_
#define HANABI_EVAL_METRICS_H_

#include <array>
#include <cstdint>
#include <numbers>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "hanabi_eval/concepts.h"
#include "hanabi_eval/harness.h"
#include "hanabi_eval/summary.h"
#include "hanabi_eval/trace.h"
#include "json.hpp"

namespace hanabi_eval {

inline constexpr int kNumActionIds = kNumActions;
inline constexpr double kNatsBase = std::numbers::e;
inline constexpr double kBitsBase = 2.0;

enum class Granularity { kBlock, kGame };

struct MetricsConfig {
  Granularity granularity = Granularity::kBlock;
  // Logarithm base for entropies and mutual information.
  double log_base = kNatsBase;
  int ci_formulas = 500;
  int ci_max_depth = 3;
  uint64_t ci_seed = 7;

  nlohmann::json ToJson() const;
  std::string UnitName() const;
};

// Shannon entropy of a count vector. 0 log 0 = 0; an all-zero vector has
// entropy 0.
double Entropy(std::span<const int64_t> counts, double log_base);

// Plug-in mutual information of a row-major rows x cols joint count table.
double MutualInformation(std::span<const int64_t> joint, int rows, int cols,
                         double log_base);

// Context independence of one stream of (context, action) decisions.
// `concept_truth[f][i]` says whether formula f holds at decision i.
struct CiValue {
  std::optional<double> value;  // nullopt when every concept is vacuous
  int dropped = 0;              // concepts never true
};
CiValue ContextIndependence(const std::vector<std::vector<uint8_t>>& concept_truth,
                            std::span<const int> actions);

// One agent's share of a set of games.
struct Block {
  int agent_index = 0;    // pool index of the agent instance
  int partner_index = 0;
  struct Entry {
    const GameTrace* trace;
    uint8_t seats;  // bit s set when seat s is the agent
  };
  std::vector<Entry> entries;
};

// Blocks for every instance named `agent`, ordered by (agent, partner) index,
// or by game within that order for Granularity::kGame. Aborted games are
// skipped.
std::vector<Block> BlocksFor(const std::string& agent,
                             std::span<const GameTrace> traces,
                             Granularity granularity);

struct InfoMetric {
  std::optional<Summary> summary;
  int excluded_blocks = 0;   // blocks without data for this metric
  int degenerate_blocks = 0; // IC: fewer than two distinct agent actions
};

InfoMetric AdEntropy(const std::string& agent, std::span<const GameTrace> traces,
                     const MetricsConfig& config,
                     Execution execution = Execution::kParallel);
// Pairs (partner action at t, agent action at t + 1).
InfoMetric ArdEntropy(const std::string& agent, std::span<const GameTrace> traces,
                      const MetricsConfig& config,
                      Execution execution = Execution::kParallel);
// Pairs (agent action at t, partner action at t + 1).
InfoMetric InstantaneousCoordination(const std::string& agent,
                                     std::span<const GameTrace> traces,
                                     const MetricsConfig& config,
                                     Execution execution = Execution::kParallel);

struct CiMetric {
  std::optional<Summary> summary;
  int excluded_blocks = 0;
  int dropped_concepts = 0;  // formulas never true in any block
};
CiMetric ContextIndependenceMetric(const std::string& agent,
                                   std::span<const GameTrace> traces,
                                   const std::vector<Atom>& atoms,
                                   const std::vector<ConceptFormula>& formulas,
                                   const MetricsConfig& config,
                                   Execution execution = Execution::kParallel);

// Per-game fraction of the agent's own turns with each label, summarized
// across games. Index 0 = G1, 1 = G2, 2 = G3.
std::array<std::optional<Summary>, 3> DominanceFrequencies(
    const std::string& agent, std::span<const GameTrace> traces);

struct MetricRow {
  std::string agent;
  std::string algorithm;
  std::optional<Summary> self_play, intra_xp, inter_xp;
  std::optional<Summary> ci, ic, ad_entropy, ard_entropy;
  std::optional<Summary> g1, g2, g3;
  int games = 0;  // completed games with at least one instance seated
  int ci_dropped_concepts = 0;
  int ic_degenerate_blocks = 0;
};

struct MetricReport {
  std::vector<MetricRow> rows;
  std::string config_hash;
  nlohmann::json config;

  // Agent and algorithm columns followed by a mean/std pair per metric, a game
  // count, the unit and the config hash. Missing values are written as "NA".
  std::string ToCsv() const;
  static MetricReport FromCsv(const std::string& csv);
};

// Looks up a summary column by its CSV base name ("self_play", "g1", ...).
std::optional<Summary> MetricValue(const MetricRow& row, const std::string& name);

// Pool instances recovered from the traces, indexed by pool index.
std::vector<AgentSpec> PoolFromTraces(std::span<const GameTrace> traces);

std::vector<ConceptFormula> DefaultFormulas(const std::vector<Atom>& atoms,
                                            const MetricsConfig& config);
nlohmann::json FormulasSidecar(const std::vector<Atom>& atoms,
                               const std::vector<ConceptFormula>& formulas,
                               const MetricsConfig& config);

// Every metric for every algorithm in the traces. Blocks are processed in
// parallel under Execution::kParallel; results do not depend on scheduling.
MetricReport ComputeMetricReport(std::span<const GameTrace> traces,
                                 const MetricsConfig& config, Execution execution);

}  // namespace hanabi_eval

#endif  // HANABI_EVAL_METRICS_H_
