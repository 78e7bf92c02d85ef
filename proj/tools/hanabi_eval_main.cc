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


// Command-line entry point.
//
//   hanabi_eval tournament    run every pairing of an agent pool
//   hanabi_eval metrics       compute the metric table from traces
//   hanabi_eval regress       regress ratings on the metric table
//   hanabi_eval synth-ratings draw synthetic ratings with a planted slope
//   hanabi_eval serve         run the experiment HTTP service
//   hanabi_eval export        rebuild the experiment dataset from its log
//
// Failures print {"error": {"code": ..., "message": ...}} on stderr and
// exit nonzero.

#include <signal.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <thread>

#include "CLI11.hpp"
#include "hanabi_eval/experiment.h"
#include "hanabi_eval/harness.h"
#include "hanabi_eval/http_server.h"
#include "hanabi_eval/metrics.h"
#include "hanabi_eval/stats.h"
#include "hanabi_eval/trace.h"
#include "json.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace hanabi_eval {
namespace {

struct CliError : std::runtime_error {
  CliError(std::string c, const std::string& message)
      : std::runtime_error(message), code(std::move(c)) {}
  std::string code;
};

std::string ReadFile(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw CliError("io_error", "cannot read " + path.string());
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

void WriteFile(const fs::path& path, const std::string& content) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  out << content;
  if (!out) throw CliError("io_error", "cannot write " + path.string());
}

json ReadJson(const fs::path& path) {
  try {
    return json::parse(ReadFile(path));
  } catch (const json::parse_error& e) {
    throw CliError("bad_config", path.string() + ": " + e.what());
  }
}

std::vector<AgentSpec> ReadPool(const fs::path& path) {
  const json j = ReadJson(path);
  const json& list = j.is_array() ? j : j.at("pool");
  std::vector<AgentSpec> pool;
  for (const json& entry : list) pool.push_back(AgentSpecFromJson(entry));
  for (const AgentSpec& spec : pool) {
    if (!IsKnownAlgorithm(spec.algorithm)) {
      throw CliError("bad_pool", "unknown algorithm " + spec.algorithm);
    }
  }
  return pool;
}

// Accepts a trace file or a directory of *.ndjson files (read in name order).
std::vector<GameTrace> LoadTraces(const fs::path& path) {
  std::vector<fs::path> files;
  if (fs::is_directory(path)) {
    for (const auto& entry : fs::directory_iterator(path)) {
      if (entry.path().extension() == ".ndjson") files.push_back(entry.path());
    }
    std::sort(files.begin(), files.end());
  } else if (fs::exists(path)) {
    files.push_back(path);
  }
  if (files.empty()) throw CliError("no_traces", "no trace files at " + path.string());
  std::vector<GameTrace> traces;
  for (const fs::path& f : files) {
    auto part = ReadTraces(f);
    traces.insert(traces.end(), part.begin(), part.end());
  }
  return traces;
}

struct TournamentArgs {
  std::string config;
  std::string pool;
  std::optional<int> games;
  std::optional<uint64_t> seed;
  std::string out = "out";
  bool serial = false;
};

void RunTournamentCommand(const TournamentArgs& a) {
  TournamentConfig config = a.config.empty() ? DefaultTournamentConfig()
                                             : TournamentConfig::FromJson(ReadJson(a.config));
  if (!a.pool.empty()) config.pool = ReadPool(a.pool);
  if (a.games) {
    if (*a.games < 1) throw CliError("bad_argument", "--games must be >= 1");
    config.games_per_pairing = *a.games;
  }
  if (a.seed) config.base_seed = *a.seed;
  const TournamentResult result =
      RunTournament(config, a.serial ? Execution::kSerial : Execution::kParallel);
  const fs::path out(a.out);
  fs::create_directories(out);
  WriteTraces(out / "traces.ndjson", result.AllTraces());
  WriteFile(out / "tournament.json", TournamentSummaryJson(result).dump(2) + "\n");
  WriteFile(out / "config.json", config.ToJson().dump(2) + "\n");
  int aborted = 0;
  for (const PairingResult& p : result.pairings) aborted += p.AbortedGames();
  std::cout << json{{"games", result.AllTraces().size()},
                    {"aborted", aborted},
                    {"out", out.string()}}
                   .dump()
            << '\n';
}

struct MetricsArgs {
  std::string traces = "out";
  std::string out = "out";
  int ci_formulas = 500;
  uint64_t ci_seed = 7;
  std::string log_base = "e";
  std::string granularity = "block";
  bool serial = false;
};

void RunMetricsCommand(const MetricsArgs& a) {
  MetricsConfig config;
  config.ci_formulas = a.ci_formulas;
  config.ci_seed = a.ci_seed;
  config.log_base = a.log_base == "2" ? kBitsBase : kNatsBase;
  config.granularity = a.granularity == "game" ? Granularity::kGame : Granularity::kBlock;
  const std::vector<GameTrace> traces = LoadTraces(a.traces);
  const MetricReport report =
      ComputeMetricReport(traces, config, a.serial ? Execution::kSerial : Execution::kParallel);
  const fs::path out(a.out);
  WriteFile(out / "metrics.csv", report.ToCsv());
  const std::vector<Atom> atoms = DefaultAtomPool();
  json sidecar = FormulasSidecar(atoms, DefaultFormulas(atoms, config), config);
  sidecar["config_hash"] = report.config_hash;
  WriteFile(out / "ci_formulas.json", sidecar.dump(2) + "\n");
  WriteFile(out / "metrics_config.json", report.config.dump(2) + "\n");
  std::cout << json{{"agents", report.rows.size()},
                    {"config_hash", report.config_hash},
                    {"out", out.string()}}
                   .dump()
            << '\n';
}

struct RegressArgs {
  std::string metrics;
  std::string ratings;
  std::vector<std::string> cohorts;
  std::string out = "out";
  double alpha = 0.05;
};

void RunRegressCommand(const RegressArgs& a) {
  const MetricReport report = MetricReport::FromCsv(ReadFile(a.metrics));
  const std::vector<RatingRecord> ratings = ReadRatingsCsv(ReadFile(a.ratings));
  std::vector<Cohort> cohorts;
  for (const std::string& name : a.cohorts) {
    auto c = CohortFromName(name);
    if (!c) throw CliError("bad_argument", "unknown cohort " + name);
    cohorts.push_back(*c);
  }
  if (cohorts.empty()) cohorts = {Cohort::kAll, Cohort::kNoRandom};
  const RegressionTable table = CohortRegressions(report, ratings, cohorts, a.alpha);
  const fs::path out(a.out);
  WriteFile(out / "regressions.csv", table.ToCsv());
  WriteFile(out / "rating_letter_values.csv", LetterValuesCsv(ratings));
  std::cout << json{{"linear_fits", table.linear.size()},
                    {"parabolic_fits", table.parabolic.size()},
                    {"bonferroni_k", table.comparisons},
                    {"threshold", table.threshold},
                    {"out", out.string()}}
                   .dump()
            << '\n';
}

struct SynthArgs {
  std::string metrics;
  std::string out = "out/ratings.csv";
  SyntheticRatingsConfig config;
};

void RunSynthCommand(const SynthArgs& a) {
  const MetricReport report = MetricReport::FromCsv(ReadFile(a.metrics));
  WriteFile(a.out, WriteRatingsCsv(SynthesizeRatings(report, a.config)));
}

struct ServeArgs {
  std::string config;
  std::string pool;
  std::string data = "experiment-data";
  std::string host = "127.0.0.1";
  int port = 8080;
  std::optional<uint64_t> seed;
};

void RunServeCommand(const ServeArgs& a) {
  ExperimentConfig config;
  if (!a.config.empty()) config = ExperimentConfig::FromJson(ReadJson(a.config));
  if (!a.pool.empty()) config.pool = ReadPool(a.pool);
  if (config.pool.empty()) config.pool = DefaultTournamentConfig().pool;
  if (config.data_dir.empty()) config.data_dir = a.data;
  if (a.seed) {
    config.seed = *a.seed;
  } else if (a.config.empty()) {
    std::random_device rd;
    config.seed = (static_cast<uint64_t>(rd()) << 32) ^ rd();
  }
  ExperimentService service(config);
  ExperimentHttpServer server(service);

  sigset_t signals;
  sigemptyset(&signals);
  sigaddset(&signals, SIGINT);
  sigaddset(&signals, SIGTERM);
  pthread_sigmask(SIG_BLOCK, &signals, nullptr);
  std::thread waiter([&] {
    int sig = 0;
    sigwait(&signals, &sig);
    server.Stop();
  });
  std::cerr << json{{"listening", a.host + ":" + std::to_string(a.port)},
                    {"event_log", service.log_path().string()}}
                   .dump()
            << std::endl;
  const bool ok = server.Listen(a.host, a.port);
  if (!ok) {
    pthread_kill(waiter.native_handle(), SIGTERM);
    waiter.join();
    throw CliError("bind_failed", "cannot listen on " + a.host + ":" +
                                      std::to_string(a.port));
  }
  waiter.join();
  service.Flush();
}

struct ExportArgs {
  std::string data = "experiment-data";
  std::string out = "out";
  int item_offset = -1;
};

void RunExportCommand(const ExportArgs& a) {
  const fs::path log = fs::path(a.data) / "events.jsonl";
  if (!fs::exists(log)) throw CliError("no_log", "no event log at " + log.string());
  ItemCoding coding;
  coding.offset = a.item_offset;
  const Dataset d = ExportDataset(ReadEventLog(log), coding);
  const fs::path out(a.out);
  WriteFile(out / "ratings.csv", d.ratings_csv);
  WriteFile(out / "ratings.jsonl", d.ratings_jsonl);
  WriteFile(out / "games.csv", d.games_csv);
  WriteFile(out / "comparisons.csv", d.comparisons_csv);
  WriteFile(out / "attribution.csv", d.attribution_csv);
}

void PrintError(const std::string& code, const std::string& message) {
  std::cerr << json{{"error", {{"code", code}, {"message", message}}}}.dump() << '\n';
}

int Main(int argc, char** argv) {
  CLI::App app{"Hanabi agent evaluation workbench"};
  app.require_subcommand(1);

  TournamentArgs ta;
  auto* tournament = app.add_subcommand("tournament", "Run every pairing of an agent pool");
  tournament->add_option("--config", ta.config, "Tournament config JSON");
  tournament->add_option("--pool", ta.pool, "Agent pool JSON (overrides the config's)");
  tournament->add_option("--games", ta.games, "Games per pairing");
  tournament->add_option("--seed", ta.seed, "Base deck seed");
  tournament->add_option("--out", ta.out, "Output directory");
  tournament->add_flag("--serial", ta.serial, "Use the serial reference loop");

  MetricsArgs ma;
  auto* metrics = app.add_subcommand("metrics", "Compute the metric table from traces");
  metrics->add_option("--traces,--config", ma.traces, "Trace file or directory");
  metrics->add_option("--out", ma.out, "Output directory");
  metrics->add_option("--ci-formulas", ma.ci_formulas, "Number of CI concept formulas")
      ->check(CLI::PositiveNumber);
  metrics->add_option("--ci-seed", ma.ci_seed, "CI formula sampling seed");
  metrics->add_option("--log-base", ma.log_base, "Entropy base: e or 2")
      ->check(CLI::IsMember({"e", "2"}));
  metrics->add_option("--granularity", ma.granularity, "block or game")
      ->check(CLI::IsMember({"block", "game"}));
  metrics->add_flag("--serial", ma.serial, "Use the serial reference loop");

  RegressArgs ra;
  auto* regress = app.add_subcommand("regress", "Regress ratings on metrics");
  regress->add_option("--metrics", ra.metrics, "metrics.csv")->required();
  regress->add_option("--ratings", ra.ratings, "Ratings CSV")->required();
  regress->add_option("--cohort", ra.cohorts, "all and/or no-random (default both)")
      ->check(CLI::IsMember({"all", "no-random"}));
  regress->add_option("--alpha", ra.alpha, "Family-wise significance level");
  regress->add_option("--out", ra.out, "Output directory");

  SynthArgs sa;
  auto* synth = app.add_subcommand("synth-ratings", "Synthetic ratings with a planted slope");
  synth->add_option("--metrics", sa.metrics, "metrics.csv")->required();
  synth->add_option("--metric", sa.config.metric, "Metric the ratings depend on");
  synth->add_option("--slope", sa.config.slope, "Planted slope");
  synth->add_option("--intercept", sa.config.intercept, "Planted intercept");
  synth->add_option("--noise", sa.config.noise_sd, "Noise standard deviation");
  synth->add_option("--per-bot", sa.config.per_bot, "Ratings per bot");
  synth->add_option("--seed", sa.config.seed, "Noise seed");
  synth->add_option("--out", sa.out, "Output CSV");

  ServeArgs sv;
  auto* serve = app.add_subcommand("serve", "Run the experiment HTTP service");
  serve->add_option("--config", sv.config, "Experiment config JSON");
  serve->add_option("--pool", sv.pool, "Agent pool JSON");
  serve->add_option("--data", sv.data, "Data directory for the event log");
  serve->add_option("--host", sv.host, "Bind address");
  serve->add_option("--port", sv.port, "Port")->check(CLI::Range(1, 65535));
  serve->add_option("--seed", sv.seed, "Session seed");

  ExportArgs ea;
  auto* exp = app.add_subcommand("export", "Rebuild the experiment dataset from its log");
  exp->add_option("--data", ea.data, "Data directory of the service");
  exp->add_option("--out", ea.out, "Output directory");
  exp->add_option("--item-offset", ea.item_offset, "-1 codes items 0-6, 0 codes 1-7");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    PrintError("usage", e.what());
    return 2;
  }

  try {
    if (*tournament) RunTournamentCommand(ta);
    if (*metrics) RunMetricsCommand(ma);
    if (*regress) RunRegressCommand(ra);
    if (*synth) RunSynthCommand(sa);
    if (*serve) RunServeCommand(sv);
    if (*exp) RunExportCommand(ea);
  } catch (const CliError& e) {
    PrintError(e.code, e.what());
    return 1;
  } catch (const std::exception& e) {
    PrintError("failed", e.what());
    return 1;
  }
  return 0;
}

}  // namespace
}  // namespace hanabi_eval

int main(int argc, char** argv) { return hanabi_eval::Main(argc, argv); }
