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


// Serial reference loops against their OpenMP counterparts.

#include <benchmark/benchmark.h>

#include "hanabi_eval/harness.h"
#include "hanabi_eval/metrics.h"

namespace hanabi_eval {
namespace {

TournamentConfig BenchConfig(int games) {
  TournamentConfig config = DefaultTournamentConfig();
  config.games_per_pairing = games;
  return config;
}

void BM_Tournament(benchmark::State& state, Execution execution) {
  const TournamentConfig config = BenchConfig(static_cast<int>(state.range(0)));
  int64_t games = 0;
  for (auto _ : state) {
    TournamentResult result = RunTournament(config, execution);
    games += static_cast<int64_t>(result.pairings.size()) * config.games_per_pairing;
    benchmark::DoNotOptimize(result);
  }
  state.counters["games/s"] = benchmark::Counter(games, benchmark::Counter::kIsRate);
}
BENCHMARK_CAPTURE(BM_Tournament, serial, Execution::kSerial)
    ->Arg(8)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK_CAPTURE(BM_Tournament, parallel, Execution::kParallel)
    ->Arg(8)->Unit(benchmark::kMillisecond)->UseRealTime();

void BM_Metrics(benchmark::State& state, Execution execution) {
  static const std::vector<GameTrace> traces =
      RunTournament(BenchConfig(16), Execution::kParallel).AllTraces();
  MetricsConfig config;
  config.ci_formulas = static_cast<int>(state.range(0));
  for (auto _ : state) {
    MetricReport report = ComputeMetricReport(traces, config, execution);
    benchmark::DoNotOptimize(report);
  }
}
BENCHMARK_CAPTURE(BM_Metrics, serial, Execution::kSerial)
    ->Arg(100)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK_CAPTURE(BM_Metrics, parallel, Execution::kParallel)
    ->Arg(100)->Unit(benchmark::kMillisecond)->UseRealTime();

}  // namespace
}  // namespace hanabi_eval

BENCHMARK_MAIN();
