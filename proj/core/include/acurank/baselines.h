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

#ifndef ACURANK_BASELINES_H_
#define ACURANK_BASELINES_H_

#include <cstdint>
#include <vector>

#include "acurank/engine.h"
#include "acurank/reranker.h"

namespace acurank {

struct SlidingWindowConfig {
  int window = 20;
  int stride = 10;
  int passes = 1;

  void validate() const;
};

// [begin, end) positions of the windows of one pass, in processing order
// (bottom of the list first). Windows shorter than two documents are
// dropped.
std::vector<std::pair<std::size_t, std::size_t>> sliding_windows(
    std::size_t n, const SlidingWindowConfig& cfg);

// Bottom-up overlapping windows over the retrieval order, repeated `passes`
// times. A failed window keeps its previous order.
RerankOutcome run_sliding_window(const QueryTask& task,
                                 const SlidingWindowConfig& cfg,
                                 const Reranker& backend);

struct TourRankConfig {
  int tournaments = 1;
  // Pool size entering each stage plus the final survivor count.
  std::vector<int> stage_plan = {100, 50, 20, 10, 5, 2};
  // Groups formed at each stage transition (|stage_plan| - 1 entries).
  std::vector<int> groups_per_stage = {5, 5, 1, 1, 1};
  // Points given to the survivors of each stage; empty = stage number
  // (1, 2, ...).
  std::vector<double> stage_points;
  std::uint64_t seed = 0;
  int max_parallel_calls = 1;

  void validate() const;
};

// Number of calls one tournament makes on n documents.
int tourrank_calls_per_tournament(std::size_t n, const TourRankConfig& cfg);

// Multi-stage elimination tournaments; documents are ranked by summed stage
// points, ties by retrieval order.
RerankOutcome run_tourrank(const QueryTask& task, const TourRankConfig& cfg,
                           const Reranker& backend);

struct StaticStagePlan {
  std::vector<int> c = {5, 2, 2, 1};  // batches per stage

  void validate() const;
};

// TrueSkill without uncertainty selection: stage j reranks the current
// top-(m * c_j) by mu in c_j sequential batches.
RerankOutcome run_trueskill_static(const QueryTask& task,
                                   const StaticStagePlan& plan,
                                   const SchedulerConfig& cfg,
                                   const Reranker& backend,
                                   const Environment& env = {});

}  // namespace acurank

#endif  // ACURANK_BASELINES_H_
