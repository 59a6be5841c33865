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

#ifndef ACURANK_ENGINE_H_
#define ACURANK_ENGINE_H_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "acurank/rank_belief.h"
#include "acurank/reranker.h"
#include "acurank/trueskill.h"

namespace acurank {

enum class StopRule { kUncertainCount, kTopkStability, kBudgetOnly };
enum class PartitionRule { kSequential, kRandom };
enum class InitRule { kRetrievalScores, kDefaultTrueSkill };

std::string_view to_string(StopRule rule);
std::string_view to_string(PartitionRule rule);
std::string_view to_string(InitRule rule);

struct SchedulerConfig {
  int k = 10;
  int m = 20;
  double epsilon = 0.01;
  int tau = 10;
  std::optional<int> max_calls;
  int max_iterations = 100;
  StopRule stop_rule = StopRule::kUncertainCount;
  int stability_window = 2;
  PartitionRule partition_rule = PartitionRule::kSequential;
  InitRule init_rule = InitRule::kRetrievalScores;
  std::uint64_t seed = 0;
  // Batches of one iteration are disjoint and may be reranked concurrently.
  int max_parallel_calls = 1;

  void validate() const;

  // "default", "h" (epsilon 1e-4) or "hh" (epsilon 1e-4, tau 5).
  static SchedulerConfig variant(std::string_view name);
};

struct Candidate {
  std::string doc_id;
  double retrieval_score = 0.0;
};

// One query with its first-stage results, best first. passages[i] belongs to
// candidates[i].
struct QueryTask {
  std::string query_id;
  std::string query;
  std::vector<Candidate> candidates;
  std::vector<Passage> passages;

  void validate() const;
};

struct IterationRecord {
  std::size_t selected_count = 0;
  std::vector<std::size_t> batch_sizes;
  double threshold = 0.0;
  int failed_calls = 0;
  std::optional<std::string> stop_reason;
};

struct RunTrace {
  std::string strategy;
  int calls_made = 0;
  int failed_calls = 0;
  int iterations = 0;
  std::vector<IterationRecord> per_iteration;
  std::string stop_reason;
  std::vector<std::string> failures;  // backend error messages, in order
  std::vector<std::string> final_ranking;
};

struct RerankOutcome {
  std::vector<std::string> ranking;
  RunTrace trace;
};

using Batch = std::vector<std::size_t>;  // document indices, presented order

// Retrieval-score mode sets mu_i to the (shifted) score and sigma_i = mu_i/3
// and derives beta = mean(sigma)/2; default mode uses (25, 25/3) and keeps
// env. Throws DomainError on an empty candidate list.
BeliefState initialize_beliefs(const QueryTask& task,
                               const SchedulerConfig& cfg,
                               const Environment& env = {});

// Sorts candidates by mu descending (sigma ascending, then retrieval rank) or
// shuffles them with `shuffle_seed`, then slices into batches of at most m.
std::vector<Batch> partition(std::span<const std::size_t> candidates,
                             const BeliefState& state,
                             const SchedulerConfig& cfg,
                             std::uint64_t shuffle_seed = 0);

// Keeps the `remaining_budget` batches with the highest mean mu.
std::vector<Batch> budget_schedule(std::vector<Batch> batches,
                                   int remaining_budget,
                                   const BeliefState& state);

// Document indices ordered by mu descending, sigma ascending, retrieval rank.
std::vector<std::size_t> order_by_mean(const BeliefState& state);

// Result of reranking one batch; `ordering` empty when the call failed.
struct BatchOutcome {
  Batch batch;
  std::vector<std::string> ordering;
};

// Rates every successful batch against the current beliefs. Batches must be
// disjoint, which makes the result independent of their order.
void apply_outcomes(BeliefState& state, std::span<const BatchOutcome> outcomes);

// Builds the request for one batch of `task`.
RerankRequest make_request(const QueryTask& task, const Batch& batch,
                           std::uint64_t call_seed);

// Calls the backend on each batch (concurrently up to `max_parallel`).
// Failed calls yield an empty ordering and their message in `failures`.
std::vector<BatchOutcome> rerank_batches(const QueryTask& task,
                                         std::span<const Batch> batches,
                                         const Reranker& backend,
                                         std::uint64_t seed_base,
                                         int max_parallel,
                                         std::vector<std::string>& failures);

// Uncertainty-driven adaptive reranking of one query.
RerankOutcome run_acurank(const QueryTask& task, const SchedulerConfig& cfg,
                          const Reranker& backend,
                          const Environment& env = {});

}  // namespace acurank

#endif  // ACURANK_ENGINE_H_
