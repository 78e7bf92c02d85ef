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

// Decision contexts and the logical "concepts" evaluated over them for the
// context-independence metric.
//
// A context is a small vector of discretized features recorded at every
// decision. Atoms test one feature for one value; concepts are AND/OR trees
// over (possibly negated) atoms.

#ifndef HANABI_EVAL_CONCEPTS_H_
#define HANABI_EVAL_CONCEPTS_H_

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "hanabi_eval/engine.h"
#include "json.hpp"

namespace hanabi_eval {

enum Feature : int {
  kHintTokensBin,       // 0: {0}, 1: {1-3}, 2: {4-7}, 3: {8}
  kBombsRemaining,      // 1..3
  kDeckSizeBin,         // 0: {0}, 1: {1-9}, 2: {10-29}, 3: {30-40}
  kPartnerHasKnownPlayable,
  kLastPartnerAction,   // 0 none, 1 play, 2 discard, 3 hint color, 4 hint rank
  kOwnNewestJustHinted,
  kOwnHasKnownPlayable,
  kOwnOldestUnhinted,
  kFireworksTotalBin,   // 0: {0-5}, 1: {6-15}, 2: {16-25}
  kLastPlayedWasRankOne,
  kNumFeatures,
};

using ContextFeatures = std::array<int8_t, kNumFeatures>;

// Features of the decision `obs.viewer` faces. `own_knowledge` is the
// knowledge used for "known playable" (with or without card counting);
// `last_played` is the most recent card played by either seat.
ContextFeatures ExtractContext(const Observation& obs,
                               const HandKnowledge& own_knowledge,
                               std::optional<Card> last_played);

struct Atom {
  Feature feature;
  int8_t value;
  std::string name;

  bool Eval(const ContextFeatures& ctx) const { return ctx[feature] == value; }
};

// Every binned category of every feature; booleans contribute their "true"
// atom only. The last-partner-action "none" case has no atom.
std::vector<Atom> DefaultAtomPool();

class ConceptFormula {
 public:
  enum class Op : uint8_t { kAtom, kAnd, kOr };

  struct Node {
    Op op = Op::kAtom;
    int atom = -1;  // index into the atom pool
    bool negated = false;
    int left = -1;
    int right = -1;
  };

  static ConceptFormula Literal(int atom, bool negated);
  static ConceptFormula Combine(Op op, const ConceptFormula& left,
                                const ConceptFormula& right);

  bool Eval(const std::vector<Atom>& pool, const ContextFeatures& ctx) const;
  // A bare literal has depth 1.
  int Depth() const;
  // Canonical text, e.g. "(hints=8 & !bombs=1)".
  std::string ToString(const std::vector<Atom>& pool) const;
  nlohmann::json ToJson(const std::vector<Atom>& pool) const;

  const std::vector<Node>& nodes() const { return nodes_; }

 private:
  bool EvalNode(int node, const std::vector<Atom>& pool,
                const ContextFeatures& ctx) const;
  int DepthOf(int node) const;
  std::string NodeString(int node, const std::vector<Atom>& pool) const;
  int Append(const ConceptFormula& other);

  std::vector<Node> nodes_;  // root is the last node
};

// `count` syntactically distinct formulas of depth <= max_depth. Each formula
// draws its depth uniformly in [1, max_depth]; internal nodes are AND/OR with
// equal probability; literals are negated with probability 1/2. Throws
// std::invalid_argument when the pool cannot yield `count` distinct formulas.
std::vector<ConceptFormula> SampleConceptFormulas(const std::vector<Atom>& pool,
                                                  int count, int max_depth,
                                                  uint64_t seed);

}  // namespace hanabi_eval

#endif  // HANABI_EVAL_CONCEPTS_H_
