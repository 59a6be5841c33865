// Copyright 2026 The AcuRank Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <random>

#include <benchmark/benchmark.h>

#include "acurank/corpus_io.h"
#include "acurank/engine.h"
#include "acurank/rank_belief.h"
#include "acurank/trueskill.h"

namespace acurank {
namespace {

void BM_Rate(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  std::mt19937_64 rng(1);
  GameOutcome game;
  for (int i = 0; i < n; ++i) {
    game.participants.push_back(
        {"d" + std::to_string(i), Rating{std::uniform_real_distribution<double>(10, 40)(rng), 5.0}});
    game.ranks.push_back(i);
  }
  const Environment env;
  for (auto _ : state) benchmark::DoNotOptimize(rate(game, env));
}
BENCHMARK(BM_Rate)->Arg(2)->Arg(10)->Arg(20);

void BM_SolveThreshold(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  std::mt19937_64 rng(2);
  BeliefState beliefs;
  beliefs.k = 10;
  for (int i = 0; i < n; ++i) {
    beliefs.doc_ids.push_back("d" + std::to_string(i));
    beliefs.ratings.push_back({std::uniform_real_distribution<double>(0, 30)(rng), 3.0});
  }
  for (auto _ : state) benchmark::DoNotOptimize(solve_threshold(beliefs, 10));
}
BENCHMARK(BM_SolveThreshold)->Arg(100)->Arg(1000);

void BM_RunAcuRank(benchmark::State& state) {
  SyntheticSpec spec;
  spec.n_queries = 1;
  const auto data = generate_synthetic(spec);
  const NoisyReranker backend(1.0, 3);
  SchedulerConfig cfg;
  cfg.max_calls = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(run_acurank(data.tasks[0], cfg, backend));
}
BENCHMARK(BM_RunAcuRank)->Arg(9)->Arg(20);

}  // namespace
}  // namespace acurank

BENCHMARK_MAIN();
