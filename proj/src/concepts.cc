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

#include "hanabi_eval/concepts.h"

#include <algorithm>
#include <numeric>
#include <stdexcept>
#include <unordered_set>

#include "hanabi_eval/rng.h"

namespace hanabi_eval {

namespace {

int8_t HintTokensBin(int tokens) {
  if (tokens == 0) return 0;
  if (tokens <= 3) return 1;
  if (tokens <= 7) return 2;
  return 3;
}

int8_t DeckSizeBin(int size) {
  if (size == 0) return 0;
  if (size <= 9) return 1;
  if (size <= 29) return 2;
  return 3;
}

int8_t FireworksTotalBin(int total) {
  if (total <= 5) return 0;
  if (total <= 15) return 1;
  return 2;
}

int8_t ActionCategory(const Move& m) {
  switch (m.kind) {
    case MoveKind::kPlay:
      return 1;
    case MoveKind::kDiscard:
      return 2;
    case MoveKind::kHintColor:
      return 3;
    case MoveKind::kHintRank:
      return 4;
  }
  return 0;
}

}  // namespace

ContextFeatures ExtractContext(const Observation& obs,
                               const HandKnowledge& own_knowledge,
                               std::optional<Card> last_played) {
  const Fireworks& fw = obs.fireworks;
  ContextFeatures ctx{};
  ctx[kHintTokensBin] = HintTokensBin(obs.hint_tokens);
  ctx[kBombsRemaining] = static_cast<int8_t>(obs.bombs_remaining);
  ctx[kDeckSizeBin] = DeckSizeBin(obs.deck_size);

  const HandKnowledge partner = ApplyCardCounting(
      obs.partner_knowledge, VisibleCounts(fw, obs.discards, {}));
  ctx[kPartnerHasKnownPlayable] = std::any_of(
      partner.begin(), partner.end(),
      [&](const CardKnowledge& k) { return IsKnownPlayable(k, fw); });

  const bool partner_moved_last =
      obs.last_event && obs.last_event->seat != obs.viewer;
  ctx[kLastPartnerAction] =
      partner_moved_last ? ActionCategory(obs.last_event->move) : 0;
  ctx[kOwnNewestJustHinted] =
      partner_moved_last && obs.last_event->move.IsHint() && obs.own_hand_size > 0 &&
      ((obs.last_event->touched >> (obs.own_hand_size - 1)) & 1u);

  ctx[kOwnHasKnownPlayable] = std::any_of(
      own_knowledge.begin(), own_knowledge.end(),
      [&](const CardKnowledge& k) { return IsKnownPlayable(k, fw); });
  ctx[kOwnOldestUnhinted] =
      !own_knowledge.empty() && !own_knowledge.front().DirectlyHinted();
  ctx[kFireworksTotalBin] =
      FireworksTotalBin(std::accumulate(fw.begin(), fw.end(), 0));
  ctx[kLastPlayedWasRankOne] = last_played && last_played->rank == 1;
  return ctx;
}

std::vector<Atom> DefaultAtomPool() {
  std::vector<Atom> pool;
  auto add = [&](Feature f, int8_t v, std::string name) {
    pool.push_back(Atom{f, v, std::move(name)});
  };
  add(kHintTokensBin, 0, "hints=0");
  add(kHintTokensBin, 1, "hints=1-3");
  add(kHintTokensBin, 2, "hints=4-7");
  add(kHintTokensBin, 3, "hints=8");
  add(kBombsRemaining, 1, "bombs=1");
  add(kBombsRemaining, 2, "bombs=2");
  add(kBombsRemaining, 3, "bombs=3");
  add(kDeckSizeBin, 0, "deck=0");
  add(kDeckSizeBin, 1, "deck=1-9");
  add(kDeckSizeBin, 2, "deck=10-29");
  add(kDeckSizeBin, 3, "deck=30-40");
  add(kPartnerHasKnownPlayable, 1, "partner_has_known_playable");
  add(kLastPartnerAction, 1, "partner_last=play");
  add(kLastPartnerAction, 2, "partner_last=discard");
  add(kLastPartnerAction, 3, "partner_last=hint_color");
  add(kLastPartnerAction, 4, "partner_last=hint_rank");
  add(kOwnNewestJustHinted, 1, "own_newest_just_hinted");
  add(kOwnHasKnownPlayable, 1, "own_has_known_playable");
  add(kOwnOldestUnhinted, 1, "own_oldest_unhinted");
  add(kFireworksTotalBin, 0, "fireworks=0-5");
  add(kFireworksTotalBin, 1, "fireworks=6-15");
  add(kFireworksTotalBin, 2, "fireworks=16-25");
  add(kLastPlayedWasRankOne, 1, "last_played_rank1");
  return pool;
}

ConceptFormula ConceptFormula::Literal(int atom, bool negated) {
  ConceptFormula f;
  f.nodes_.push_back(Node{Op::kAtom, atom, negated, -1, -1});
  return f;
}

int ConceptFormula::Append(const ConceptFormula& other) {
  const int offset = static_cast<int>(nodes_.size());
  for (Node n : other.nodes_) {
    if (n.left >= 0) n.left += offset;
    if (n.right >= 0) n.right += offset;
    nodes_.push_back(n);
  }
  return static_cast<int>(nodes_.size()) - 1;
}

ConceptFormula ConceptFormula::Combine(Op op, const ConceptFormula& left,
                                       const ConceptFormula& right) {
  ConceptFormula f;
  const int l = f.Append(left);
  const int r = f.Append(right);
  f.nodes_.push_back(Node{op, -1, false, l, r});
  return f;
}

bool ConceptFormula::EvalNode(int node, const std::vector<Atom>& pool,
                              const ContextFeatures& ctx) const {
  const Node& n = nodes_[node];
  switch (n.op) {
    case Op::kAtom:
      return pool[n.atom].Eval(ctx) != n.negated;
    case Op::kAnd:
      return EvalNode(n.left, pool, ctx) && EvalNode(n.right, pool, ctx);
    case Op::kOr:
      return EvalNode(n.left, pool, ctx) || EvalNode(n.right, pool, ctx);
  }
  return false;
}

bool ConceptFormula::Eval(const std::vector<Atom>& pool,
                          const ContextFeatures& ctx) const {
  return EvalNode(static_cast<int>(nodes_.size()) - 1, pool, ctx);
}

int ConceptFormula::DepthOf(int node) const {
  const Node& n = nodes_[node];
  if (n.op == Op::kAtom) return 1;
  return 1 + std::max(DepthOf(n.left), DepthOf(n.right));
}

int ConceptFormula::Depth() const {
  return DepthOf(static_cast<int>(nodes_.size()) - 1);
}

std::string ConceptFormula::NodeString(int node,
                                       const std::vector<Atom>& pool) const {
  const Node& n = nodes_[node];
  if (n.op == Op::kAtom) return (n.negated ? "!" : "") + pool[n.atom].name;
  return "(" + NodeString(n.left, pool) + (n.op == Op::kAnd ? " & " : " | ") +
         NodeString(n.right, pool) + ")";
}

std::string ConceptFormula::ToString(const std::vector<Atom>& pool) const {
  return NodeString(static_cast<int>(nodes_.size()) - 1, pool);
}

nlohmann::json ConceptFormula::ToJson(const std::vector<Atom>& pool) const {
  return nlohmann::json{{"formula", ToString(pool)}, {"depth", Depth()}};
}

namespace {

ConceptFormula SampleTree(const std::vector<Atom>& pool, int depth, Rng& rng) {
  if (depth == 1) {
    const int atom = rng.UniformInt(static_cast<int>(pool.size()));
    return ConceptFormula::Literal(atom, rng.UniformInt(2) == 1);
  }
  const auto op =
      rng.UniformInt(2) == 0 ? ConceptFormula::Op::kAnd : ConceptFormula::Op::kOr;
  ConceptFormula deep = SampleTree(pool, depth - 1, rng);
  ConceptFormula other = SampleTree(pool, 1 + rng.UniformInt(depth - 1), rng);
  if (rng.UniformInt(2) == 0) return ConceptFormula::Combine(op, deep, other);
  return ConceptFormula::Combine(op, other, deep);
}

}  // namespace

std::vector<ConceptFormula> SampleConceptFormulas(const std::vector<Atom>& pool,
                                                  int count, int max_depth,
                                                  uint64_t seed) {
  if (pool.empty()) throw std::invalid_argument("empty predicate pool");
  if (max_depth < 1) throw std::invalid_argument("max_depth must be >= 1");
  if (count < 0) throw std::invalid_argument("negative formula count");
  Rng rng(seed);
  std::vector<ConceptFormula> formulas;
  std::unordered_set<std::string> seen;
  const long max_attempts = 1000L * std::max(count, 1) + 10000;
  for (long attempt = 0;
       static_cast<int>(formulas.size()) < count && attempt < max_attempts;
       ++attempt) {
    const int depth = 1 + rng.UniformInt(max_depth);
    ConceptFormula f = SampleTree(pool, depth, rng);
    if (seen.insert(f.ToString(pool)).second) formulas.push_back(std::move(f));
  }
  if (static_cast<int>(formulas.size()) < count) {
    throw std::invalid_argument(
        "predicate pool too small for " + std::to_string(count) +
        " distinct formulas (found " + std::to_string(formulas.size()) + ")");
  }
  return formulas;
}

}  // namespace hanabi_eval
