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
#include <map>
#include <sstream>
#include <stdexcept>
#include <unordered_map>

#include "hanabi_eval/hash.h"

namespace hanabi_eval {

using nlohmann::json;

namespace {

template <typename F>
void ForEachIndex(int n, Execution execution, F&& body) {
  if (execution == Execution::kSerial) {
    for (int i = 0; i < n; ++i) body(i);
  } else {
#pragma omp parallel for schedule(dynamic)
    for (int i = 0; i < n; ++i) body(i);
  }
}

// Runs `per_block` on every block (in parallel when allowed) and summarizes
// the values that are present.
template <typename F>
InfoMetric SummarizeBlocks(const std::vector<Block>& blocks, Execution execution,
                           F&& per_block) {
  const int n = static_cast<int>(blocks.size());
  std::vector<std::optional<double>> values(n);
  std::vector<uint8_t> degenerate(n, 0);
  ForEachIndex(n, execution, [&](int i) {
    bool flag = false;
    values[i] = per_block(blocks[i], flag);
    degenerate[i] = flag;
  });
  InfoMetric metric;
  std::vector<double> present;
  for (int i = 0; i < n; ++i) {
    if (values[i]) {
      present.push_back(*values[i]);
    } else {
      ++metric.excluded_blocks;
    }
    metric.degenerate_blocks += degenerate[i];
  }
  metric.summary = Summarize(present);
  return metric;
}

bool IsAgentSeat(const Block::Entry& e, int seat) { return (e.seats >> seat) & 1; }

uint64_t PackContext(const ContextFeatures& ctx) {
  uint64_t key = 0;
  for (int8_t v : ctx) key = (key << 4) | static_cast<uint8_t>(v & 0xf);
  return key;
}

std::string FormatValue(double v) {
  std::ostringstream out;
  out.precision(6);
  out << std::fixed << v;
  return out.str();
}

std::vector<std::string> SplitCsvLine(const std::string& line) {
  std::vector<std::string> cells;
  std::string cell;
  std::istringstream in(line);
  while (std::getline(in, cell, ',')) cells.push_back(cell);
  if (!line.empty() && line.back() == ',') cells.emplace_back();
  return cells;
}

const char* const kSummaryColumns[] = {"self_play", "intra_xp",   "inter_xp",
                                       "ci",        "ic",         "ad_entropy",
                                       "ard_entropy", "g1",       "g2",
                                       "g3"};

std::array<std::optional<Summary>*, 10> SummaryFields(MetricRow& row) {
  return {&row.self_play, &row.intra_xp,   &row.inter_xp,    &row.ci, &row.ic,
          &row.ad_entropy, &row.ard_entropy, &row.g1, &row.g2, &row.g3};
}

}  // namespace

json MetricsConfig::ToJson() const {
  return json{{"granularity", granularity == Granularity::kBlock ? "block" : "game"},
              {"log_base", log_base},
              {"unit", UnitName()},
              {"ci_formulas", ci_formulas},
              {"ci_max_depth", ci_max_depth},
              {"ci_seed", ci_seed}};
}

std::string MetricsConfig::UnitName() const {
  if (log_base == kNatsBase) return "nats";
  if (log_base == kBitsBase) return "bits";
  return "log" + FormatValue(log_base);
}

double Entropy(std::span<const int64_t> counts, double log_base) {
  int64_t total = 0;
  for (int64_t c : counts) {
    if (c < 0) throw std::invalid_argument("negative count");
    total += c;
  }
  if (total == 0) return 0.0;
  double h = 0.0;
  for (int64_t c : counts) {
    if (c == 0) continue;
    const double p = static_cast<double>(c) / total;
    h -= p * std::log(p);
  }
  return std::max(0.0, h / std::log(log_base));
}

double MutualInformation(std::span<const int64_t> joint, int rows, int cols,
                         double log_base) {
  if (static_cast<int>(joint.size()) != rows * cols) {
    throw std::invalid_argument("joint table size mismatch");
  }
  std::vector<int64_t> row_sum(rows, 0), col_sum(cols, 0);
  int64_t total = 0;
  for (int r = 0; r < rows; ++r) {
    for (int c = 0; c < cols; ++c) {
      const int64_t v = joint[r * cols + c];
      row_sum[r] += v;
      col_sum[c] += v;
      total += v;
    }
  }
  if (total == 0) return 0.0;
  double mi = 0.0;
  for (int r = 0; r < rows; ++r) {
    for (int c = 0; c < cols; ++c) {
      const int64_t v = joint[r * cols + c];
      if (v == 0) continue;
      mi += static_cast<double>(v) / total *
            std::log(static_cast<double>(v) * total /
                     (static_cast<double>(row_sum[r]) * col_sum[c]));
    }
  }
  return std::max(0.0, mi / std::log(log_base));
}

CiValue ContextIndependence(const std::vector<std::vector<uint8_t>>& concept_truth,
                            std::span<const int> actions) {
  std::array<int64_t, kNumActionIds> message_count{};
  for (int a : actions) ++message_count.at(a);
  CiValue result;
  double sum = 0.0;
  int used = 0;
  for (const std::vector<uint8_t>& truth : concept_truth) {
    if (truth.size() != actions.size()) {
      throw std::invalid_argument("concept truth length mismatch");
    }
    std::array<int64_t, kNumActionIds> joint{};
    int64_t concept_count = 0;
    for (size_t i = 0; i < actions.size(); ++i) {
      if (!truth[i]) continue;
      ++concept_count;
      ++joint[actions[i]];
    }
    if (concept_count == 0) {
      ++result.dropped;
      continue;
    }
    // Most likely message given the concept; ties go to the lower id.
    const int best = static_cast<int>(
        std::max_element(joint.begin(), joint.end()) - joint.begin());
    const double p_m_given_c = static_cast<double>(joint[best]) / concept_count;
    const double p_c_given_m = static_cast<double>(joint[best]) / message_count[best];
    sum += p_m_given_c * p_c_given_m;
    ++used;
  }
  if (used > 0) result.value = sum / used;
  return result;
}

std::vector<Block> BlocksFor(const std::string& agent,
                             std::span<const GameTrace> traces,
                             Granularity granularity) {
  std::map<std::pair<int, int>, Block> by_pair;
  std::vector<Block> per_game;
  for (const GameTrace& t : traces) {
    if (t.aborted) continue;
    // One entry per agent instance present in this game.
    for (int s = 0; s < kNumPlayers; ++s) {
      if (t.seats[s].name != agent) continue;
      const int other = 1 - s;
      const bool same_instance = t.pool_index[s] == t.pool_index[other];
      if (same_instance && s == 1) continue;  // already covered by seat 0
      const uint8_t seats =
          same_instance ? 0b11 : static_cast<uint8_t>(1u << s);
      Block::Entry entry{&t, seats};
      if (granularity == Granularity::kGame) {
        Block b;
        b.agent_index = t.pool_index[s];
        b.partner_index = t.pool_index[other];
        b.entries.push_back(entry);
        per_game.push_back(std::move(b));
      } else {
        Block& b = by_pair[{t.pool_index[s], t.pool_index[other]}];
        b.agent_index = t.pool_index[s];
        b.partner_index = t.pool_index[other];
        b.entries.push_back(entry);
      }
    }
  }
  if (granularity == Granularity::kGame) return per_game;
  std::vector<Block> blocks;
  for (auto& [key, b] : by_pair) blocks.push_back(std::move(b));
  return blocks;
}

InfoMetric AdEntropy(const std::string& agent, std::span<const GameTrace> traces,
                     const MetricsConfig& config, Execution execution) {
  return SummarizeBlocks(BlocksFor(agent, traces, config.granularity), execution,
                         [&](const Block& b, bool&) -> std::optional<double> {
                           std::vector<int64_t> counts(kNumActionIds, 0);
                           int64_t n = 0;
                           for (const Block::Entry& e : b.entries) {
                             for (const TurnRecord& t : e.trace->turns) {
                               if (!IsAgentSeat(e, t.seat)) continue;
                               ++counts[t.action_id];
                               ++n;
                             }
                           }
                           if (n == 0) return std::nullopt;
                           return Entropy(counts, config.log_base);
                         });
}

InfoMetric ArdEntropy(const std::string& agent, std::span<const GameTrace> traces,
                     const MetricsConfig& config, Execution execution) {
  return SummarizeBlocks(
      BlocksFor(agent, traces, config.granularity), execution,
      [&](const Block& b, bool&) -> std::optional<double> {
        std::vector<int64_t> counts(kNumActionIds * kNumActionIds, 0);
        int64_t n = 0;
        for (const Block::Entry& e : b.entries) {
          const auto& turns = e.trace->turns;
          for (size_t i = 1; i < turns.size(); ++i) {
            if (!IsAgentSeat(e, turns[i].seat)) continue;
            ++counts[turns[i - 1].action_id * kNumActionIds + turns[i].action_id];
            ++n;
          }
        }
        if (n == 0) return std::nullopt;
        return Entropy(counts, config.log_base);
      });
}

InfoMetric InstantaneousCoordination(const std::string& agent,
                                     std::span<const GameTrace> traces,
                                     const MetricsConfig& config,
                                     Execution execution) {
  return SummarizeBlocks(
      BlocksFor(agent, traces, config.granularity), execution,
      [&](const Block& b, bool& degenerate) -> std::optional<double> {
        std::vector<int64_t> joint(kNumActionIds * kNumActionIds, 0);
        std::array<bool, kNumActionIds> seen{};
        int64_t n = 0;
        for (const Block::Entry& e : b.entries) {
          const auto& turns = e.trace->turns;
          for (size_t i = 0; i + 1 < turns.size(); ++i) {
            if (!IsAgentSeat(e, turns[i].seat)) continue;
            ++joint[turns[i].action_id * kNumActionIds + turns[i + 1].action_id];
            seen[turns[i].action_id] = true;
            ++n;
          }
        }
        if (n == 0) return std::nullopt;
        if (std::count(seen.begin(), seen.end(), true) < 2) {
          degenerate = true;
          return 0.0;
        }
        return MutualInformation(joint, kNumActionIds, kNumActionIds,
                                 config.log_base);
      });
}

CiMetric ContextIndependenceMetric(const std::string& agent,
                                   std::span<const GameTrace> traces,
                                   const std::vector<Atom>& atoms,
                                   const std::vector<ConceptFormula>& formulas,
                                   const MetricsConfig& config,
                                   Execution execution) {
  const std::vector<Block> blocks = BlocksFor(agent, traces, config.granularity);
  const int num_formulas = static_cast<int>(formulas.size());
  std::vector<uint8_t> ever_true(num_formulas, 0);
  std::vector<std::vector<uint8_t>> block_ever_true(blocks.size());
  const InfoMetric info = SummarizeBlocks(
      blocks, execution, [&](const Block& b, bool&) -> std::optional<double> {
        // Formula values depend only on the context, so evaluate each
        // distinct context once.
        std::unordered_map<uint64_t, std::vector<uint8_t>> cache;
        std::vector<const std::vector<uint8_t>*> rows;
        std::vector<int> actions;
        for (const Block::Entry& e : b.entries) {
          for (const TurnRecord& t : e.trace->turns) {
            if (!IsAgentSeat(e, t.seat)) continue;
            auto [it, inserted] = cache.try_emplace(PackContext(t.context));
            if (inserted) {
              it->second.resize(num_formulas);
              for (int f = 0; f < num_formulas; ++f) {
                it->second[f] = formulas[f].Eval(atoms, t.context);
              }
            }
            rows.push_back(&it->second);
            actions.push_back(t.action_id);
          }
        }
        if (actions.empty()) return std::nullopt;
        std::vector<std::vector<uint8_t>> truth(num_formulas,
                                                std::vector<uint8_t>(actions.size()));
        for (size_t i = 0; i < rows.size(); ++i) {
          for (int f = 0; f < num_formulas; ++f) truth[f][i] = (*rows[i])[f];
        }
        std::vector<uint8_t>& seen = block_ever_true[&b - blocks.data()];
        seen.assign(num_formulas, 0);
        for (const auto& [key, values] : cache) {
          for (int f = 0; f < num_formulas; ++f) seen[f] |= values[f];
        }
        return ContextIndependence(truth, actions).value;
      });
  for (const std::vector<uint8_t>& seen : block_ever_true) {
    for (size_t f = 0; f < seen.size(); ++f) ever_true[f] |= seen[f];
  }
  CiMetric metric;
  metric.summary = info.summary;
  metric.excluded_blocks = info.excluded_blocks;
  metric.dropped_concepts =
      static_cast<int>(std::count(ever_true.begin(), ever_true.end(), 0));
  return metric;
}

std::array<std::optional<Summary>, 3> DominanceFrequencies(
    const std::string& agent, std::span<const GameTrace> traces) {
  std::array<std::vector<double>, 3> fractions;
  for (const Block& game : BlocksFor(agent, traces, Granularity::kGame)) {
    const Block::Entry& e = game.entries.front();
    std::array<int, 3> moves{};
    int own_turns = 0;
    for (const TurnRecord& t : e.trace->turns) {
      if (!IsAgentSeat(e, t.seat)) continue;
      ++own_turns;
      switch (t.label) {
        case DominanceLabel::kG1DiscardPlayable: ++moves[0]; break;
        case DominanceLabel::kG2PlayUnplayable: ++moves[1]; break;
        case DominanceLabel::kG3PlayPlayable: ++moves[2]; break;
        case DominanceLabel::kNone: break;
      }
    }
    if (own_turns == 0) continue;
    for (int k = 0; k < 3; ++k) {
      fractions[k].push_back(static_cast<double>(moves[k]) / own_turns);
    }
  }
  return {Summarize(fractions[0]), Summarize(fractions[1]), Summarize(fractions[2])};
}

std::string MetricReport::ToCsv() const {
  std::ostringstream out;
  out << "agent,algorithm";
  for (const char* c : kSummaryColumns) out << ',' << c << "_mean," << c << "_std";
  out << ",games,unit,config_hash\n";
  const std::string unit = config.value("unit", std::string("NA"));
  for (const MetricRow& row : rows) {
    if (row.agent.find_first_of(",\n\"") != std::string::npos ||
        row.algorithm.find_first_of(",\n\"") != std::string::npos) {
      throw std::invalid_argument("agent names may not contain ',', '\"' or newlines");
    }
    MetricRow copy = row;
    out << row.agent << ',' << row.algorithm;
    for (std::optional<Summary>* s : SummaryFields(copy)) {
      if (*s) {
        out << ',' << FormatValue((*s)->mean) << ',' << FormatValue((*s)->std);
      } else {
        out << ",NA,NA";
      }
    }
    out << ',' << row.games << ',' << unit << ',' << config_hash << '\n';
  }
  return out.str();
}

MetricReport MetricReport::FromCsv(const std::string& csv) {
  std::istringstream in(csv);
  std::string line;
  if (!std::getline(in, line)) throw std::invalid_argument("empty metrics CSV");
  const std::vector<std::string> header = SplitCsvLine(line);
  auto column = [&](const std::string& name) {
    auto it = std::find(header.begin(), header.end(), name);
    if (it == header.end()) {
      throw std::invalid_argument("metrics CSV lacks column " + name);
    }
    return static_cast<size_t>(it - header.begin());
  };
  const size_t agent_col = column("agent");
  const size_t algorithm_col = column("algorithm");
  const size_t games_col = column("games");
  const size_t unit_col = column("unit");
  const size_t hash_col = column("config_hash");
  MetricReport report;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const std::vector<std::string> cells = SplitCsvLine(line);
    if (cells.size() != header.size()) {
      throw std::invalid_argument("ragged metrics CSV row: " + line);
    }
    MetricRow row;
    row.agent = cells[agent_col];
    row.algorithm = cells[algorithm_col];
    auto fields = SummaryFields(row);
    for (size_t k = 0; k < fields.size(); ++k) {
      const std::string base = kSummaryColumns[k];
      const std::string& mean = cells[column(base + "_mean")];
      const std::string& sd = cells[column(base + "_std")];
      if (mean == "NA") continue;
      *fields[k] = Summary{std::stod(mean), sd == "NA" ? 0.0 : std::stod(sd), 0};
    }
    row.games = std::stoi(cells[games_col]);
    report.config["unit"] = cells[unit_col];
    report.config_hash = cells[hash_col];
    report.rows.push_back(row);
  }
  return report;
}

std::optional<Summary> MetricValue(const MetricRow& row, const std::string& name) {
  MetricRow copy = row;
  const auto fields = SummaryFields(copy);
  for (size_t k = 0; k < fields.size(); ++k) {
    if (name == kSummaryColumns[k]) return *fields[k];
  }
  throw std::invalid_argument("unknown metric " + name);
}

std::vector<AgentSpec> PoolFromTraces(std::span<const GameTrace> traces) {
  std::map<int, AgentSpec> by_index;
  for (const GameTrace& t : traces) {
    for (int s = 0; s < kNumPlayers; ++s) {
      auto [it, inserted] = by_index.emplace(t.pool_index[s], t.seats[s]);
      if (!inserted && !(it->second == t.seats[s])) {
        throw std::invalid_argument("traces disagree on pool index " +
                                    std::to_string(t.pool_index[s]));
      }
    }
  }
  std::vector<AgentSpec> pool;
  for (auto& [index, spec] : by_index) pool.push_back(spec);
  return pool;
}

std::vector<ConceptFormula> DefaultFormulas(const std::vector<Atom>& atoms,
                                            const MetricsConfig& config) {
  return SampleConceptFormulas(atoms, config.ci_formulas, config.ci_max_depth,
                               config.ci_seed);
}

json FormulasSidecar(const std::vector<Atom>& atoms,
                     const std::vector<ConceptFormula>& formulas,
                     const MetricsConfig& config) {
  json atom_list = json::array();
  for (const Atom& a : atoms) {
    atom_list.push_back({{"name", a.name},
                         {"feature", static_cast<int>(a.feature)},
                         {"value", static_cast<int>(a.value)}});
  }
  json formula_list = json::array();
  for (const ConceptFormula& f : formulas) {
    formula_list.push_back({{"text", f.ToString(atoms)},
                            {"depth", f.Depth()},
                            {"tree", f.ToJson(atoms)}});
  }
  return json{{"schema", 1},
              {"count", config.ci_formulas},
              {"max_depth", config.ci_max_depth},
              {"seed", config.ci_seed},
              {"atoms", atom_list},
              {"formulas", formula_list}};
}

MetricReport ComputeMetricReport(std::span<const GameTrace> traces,
                                 const MetricsConfig& config, Execution execution) {
  const std::vector<AgentSpec> pool = PoolFromTraces(traces);
  const std::vector<Atom> atoms = DefaultAtomPool();
  const std::vector<ConceptFormula> formulas = DefaultFormulas(atoms, config);
  const std::vector<ScoreReport> scores = ScoreReports(pool, traces);

  MetricReport report;
  uint64_t digest = Fnv1a64("traces");
  for (const GameTrace& t : traces) digest = Fnv1a64(TraceToJson(t).dump(), digest);
  report.config = config.ToJson();
  report.config["traces_digest"] = HashHex(digest);
  report.config_hash = ConfigHash(report.config);

  for (const ScoreReport& s : scores) {
    MetricRow row;
    row.agent = s.name;
    row.algorithm = std::find_if(pool.begin(), pool.end(), [&](const AgentSpec& a) {
                      return a.name == s.name;
                    })->algorithm;
    row.self_play = s.self_play;
    row.intra_xp = s.intra_xp;
    row.inter_xp = s.inter_xp;
    const InfoMetric ad = AdEntropy(s.name, traces, config, execution);
    const InfoMetric ard = ArdEntropy(s.name, traces, config, execution);
    const InfoMetric ic = InstantaneousCoordination(s.name, traces, config, execution);
    const CiMetric ci = ContextIndependenceMetric(s.name, traces, atoms, formulas, config,
                                                    execution);
    row.ad_entropy = ad.summary;
    row.ard_entropy = ard.summary;
    row.ic = ic.summary;
    row.ic_degenerate_blocks = ic.degenerate_blocks;
    row.ci = ci.summary;
    row.ci_dropped_concepts = ci.dropped_concepts;
    const auto g = DominanceFrequencies(s.name, traces);
    row.g1 = g[0];
    row.g2 = g[1];
    row.g3 = g[2];
    row.games = static_cast<int>(
        std::count_if(traces.begin(), traces.end(), [&](const GameTrace& t) {
          return !t.aborted &&
                 (t.seats[0].name == s.name || t.seats[1].name == s.name);
        }));
    report.rows.push_back(row);
  }
  return report;
}

}  // namespace hanabi_eval
