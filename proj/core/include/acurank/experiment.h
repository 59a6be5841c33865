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

#ifndef ACURANK_EXPERIMENT_H_
#define ACURANK_EXPERIMENT_H_

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "acurank/baselines.h"
#include "acurank/corpus_io.h"
#include "acurank/engine.h"

namespace acurank {

enum class Method { kAcuRank, kSlidingWindow, kTourRank, kTrueSkillStatic };

std::string_view to_string(Method method);
// Accepts acurank, sliding-window (sw), tourrank, trueskill-static (ts).
Method parse_method(std::string_view name);

// A fully configured reranking strategy.
struct MethodSpec {
  Method method = Method::kAcuRank;
  std::string label;         // e.g. "acurank-h", "sliding-window"
  std::string budget_label;  // e.g. "9", "2", "5-2-2-1", "-"
  SchedulerConfig scheduler;
  SlidingWindowConfig sliding_window;
  TourRankConfig tourrank;
  StaticStagePlan static_plan;
};

// Parses `name[:budget]` where name is one of acurank, acurank-h,
// acurank-hh, sliding-window, tourrank, trueskill-static. The budget is
// max_calls for AcuRank, passes for sliding windows, tournaments for
// TourRank and a dash-separated plan (5-2-2-1) for TrueSkill-Static.
MethodSpec parse_method_spec(std::string_view text);

// Parses "5-2-2-1" or "5,2,2,1".
std::vector<int> parse_plan(std::string_view text);

RerankOutcome run_method(const MethodSpec& spec, const QueryTask& task,
                         const Reranker& backend);

// WIG of the task's retrieval scores after the same non-negative shift that
// belief initialization applies.
double retrieval_wig(const QueryTask& task, int window_k = 50);

struct QueryResult {
  std::string query_id;
  RerankOutcome outcome;
  double ndcg = 0.0;
  double wig = 0.0;
  double temperature = 0.0;
};

// Runs `spec` on every synthetic query with a Plackett-Luce backend at the
// query's temperature. The backend seed depends only on (seed, query id), so
// different methods face the same reranker. Results are in query-id order
// regardless of `jobs`.
std::vector<QueryResult> simulate_method(const MethodSpec& spec,
                                         const SyntheticDataset& data,
                                         std::uint64_t seed, int jobs = 1);

struct SimulationRow {
  std::string method;
  std::string budget;
  double mean_ndcg = 0.0;
  double mean_calls = 0.0;
  double spearman_temperature_calls = 0.0;
  double spearman_p = 1.0;
};

SimulationRow summarize(const MethodSpec& spec,
                        const std::vector<QueryResult>& results);

// CSV with header method,budget,mean_ndcg@10,mean_calls,
// spearman_temperature_calls,spearman_p.
std::string simulation_csv(const std::vector<SimulationRow>& rows);

}  // namespace acurank

#endif  // ACURANK_EXPERIMENT_H_
