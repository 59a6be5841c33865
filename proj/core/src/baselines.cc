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

#include "acurank/baselines.h"

#include <algorithm>
#include <numeric>
#include <random>

#include "acurank/error.h"
#include "acurank/normal.h"

namespace acurank {
namespace {

std::vector<std::string> ids_of(const QueryTask& task,
                                std::span<const std::size_t> order) {
  std::vector<std::string> ids;
  ids.reserve(order.size());
  for (std::size_t i : order) ids.push_back(task.candidates[i].doc_id);
  return ids;
}

std::size_t index_of(const QueryTask& task, const std::string& doc_id) {
  for (std::size_t i = 0; i < task.candidates.size(); ++i) {
    if (task.candidates[i].doc_id == doc_id) return i;
  }
  throw ContractError("unknown doc id " + doc_id);
}

}  // namespace

void SlidingWindowConfig::validate() const {
  if (window < 2) throw ConfigError("sliding window: window must be >= 2");
  if (stride < 1 || stride > window) {
    throw ConfigError("sliding window: stride must lie in [1, window]");
  }
  if (passes < 1) throw ConfigError("sliding window: passes must be >= 1");
}

std::vector<std::pair<std::size_t, std::size_t>> sliding_windows(
    std::size_t n, const SlidingWindowConfig& cfg) {
  cfg.validate();
  std::vector<std::pair<std::size_t, std::size_t>> windows;
  const auto window = static_cast<std::size_t>(cfg.window);
  const auto stride = static_cast<std::size_t>(cfg.stride);
  std::size_t end = n;
  while (end >= 2) {
    const std::size_t begin = end > window ? end - window : 0;
    windows.emplace_back(begin, end);
    if (begin == 0) break;
    end -= stride;
  }
  return windows;
}

RerankOutcome run_sliding_window(const QueryTask& task,
                                 const SlidingWindowConfig& cfg,
                                 const Reranker& backend) {
  cfg.validate();
  task.validate();
  const std::size_t n = task.candidates.size();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});

  RunTrace trace;
  trace.strategy = "sliding-window";
  const std::uint64_t query_seed = derive_seed(0, task.query_id);
  const auto windows = sliding_windows(n, cfg);
  std::uint64_t call = 0;
  for (int pass = 0; pass < cfg.passes; ++pass) {
    IterationRecord record;
    record.selected_count = n;
    // Windows overlap, so they run strictly one after another.
    for (const auto& [begin, end] : windows) {
      Batch batch(order.begin() + begin, order.begin() + end);
      const std::size_t failures_before = trace.failures.size();
      auto outcome = rerank_batches(task, std::span<const Batch>(&batch, 1), backend,
                                    mix_seed(query_seed, call++), 1, trace.failures);
      ++trace.calls_made;
      record.batch_sizes.push_back(batch.size());
      if (trace.failures.size() != failures_before) {
        ++record.failed_calls;
        continue;
      }
      for (std::size_t j = 0; j < outcome[0].ordering.size(); ++j) {
        order[begin + j] = index_of(task, outcome[0].ordering[j]);
      }
    }
    trace.failed_calls += record.failed_calls;
    trace.per_iteration.push_back(std::move(record));
    trace.iterations = pass + 1;
  }
  trace.stop_reason = "fixed";
  trace.final_ranking = ids_of(task, order);
  return RerankOutcome{trace.final_ranking, std::move(trace)};
}

void TourRankConfig::validate() const {
  if (tournaments < 1) throw ConfigError("tourrank: tournaments must be >= 1");
  if (stage_plan.size() < 2) throw ConfigError("tourrank: stage plan too short");
  for (std::size_t j = 1; j < stage_plan.size(); ++j) {
    if (stage_plan[j] >= stage_plan[j - 1] || stage_plan[j] < 1) {
      throw ConfigError("tourrank: stage sizes must be strictly decreasing");
    }
  }
  if (groups_per_stage.size() + 1 != stage_plan.size()) {
    throw ConfigError("tourrank: need one group count per stage transition");
  }
  for (std::size_t j = 0; j < groups_per_stage.size(); ++j) {
    if (groups_per_stage[j] < 1 || groups_per_stage[j] > stage_plan[j + 1]) {
      throw ConfigError("tourrank: group counts must lie in [1, survivors]");
    }
  }
  if (!stage_points.empty() && stage_points.size() + 1 != stage_plan.size()) {
    throw ConfigError("tourrank: need one point value per stage");
  }
  if (max_parallel_calls < 1) throw ConfigError("tourrank: max_parallel_calls >= 1");
}

namespace {

// Index-modulo grouping: group g takes pool[g], pool[g + G], ... while the
// index stays in range.
std::vector<Batch> modulo_groups(const std::vector<std::size_t>& pool, int groups) {
  std::vector<Batch> out(groups);
  const std::size_t g_count = static_cast<std::size_t>(groups);
  for (std::size_t row = 0; row * g_count < pool.size(); ++row) {
    for (std::size_t g = 0; g < g_count; ++g) {
      const std::size_t idx = row * g_count + g;
      if (idx < pool.size()) out[g].push_back(pool[idx]);
    }
  }
  return out;
}

// Survivors requested from each group: target / G, remainder to the first.
std::vector<std::size_t> quotas(int target, int groups) {
  std::vector<std::size_t> q(groups, target / groups);
  for (int g = 0; g < target % groups; ++g) ++q[g];
  return q;
}

}  // namespace

int tourrank_calls_per_tournament(std::size_t n, const TourRankConfig& cfg) {
  cfg.validate();
  std::size_t pool = std::min<std::size_t>(n, cfg.stage_plan.front());
  int calls = 0;
  for (std::size_t j = 0; j + 1 < cfg.stage_plan.size(); ++j) {
    const auto target = static_cast<std::size_t>(cfg.stage_plan[j + 1]);
    if (pool <= target) continue;
    const int groups = cfg.groups_per_stage[j];
    const auto q = quotas(cfg.stage_plan[j + 1], groups);
    std::vector<std::size_t> dummy(pool);
    std::iota(dummy.begin(), dummy.end(), std::size_t{0});
    std::size_t survivors = 0;
    const auto grouped = modulo_groups(dummy, groups);
    for (std::size_t g = 0; g < grouped.size(); ++g) {
      if (grouped[g].size() > q[g] && grouped[g].size() >= 2) ++calls;
      survivors += std::min(grouped[g].size(), q[g]);
    }
    pool = survivors;
  }
  return calls;
}

RerankOutcome run_tourrank(const QueryTask& task, const TourRankConfig& cfg,
                           const Reranker& backend) {
  cfg.validate();
  task.validate();
  const std::size_t n = task.candidates.size();
  const std::size_t entrants = std::min<std::size_t>(n, cfg.stage_plan.front());
  std::vector<double> points(n, 0.0);

  RunTrace trace;
  trace.strategy = "tourrank";
  const std::uint64_t query_seed = derive_seed(cfg.seed, task.query_id);

  for (int t = 0; t < cfg.tournaments; ++t) {
    std::mt19937_64 rng(mix_seed(query_seed, 2 * static_cast<std::uint64_t>(t)));
    std::vector<std::size_t> pool(entrants);
    std::iota(pool.begin(), pool.end(), std::size_t{0});
    for (std::size_t j = 0; j + 1 < cfg.stage_plan.size(); ++j) {
      const double award =
          cfg.stage_points.empty() ? static_cast<double>(j + 1) : cfg.stage_points[j];
      const auto target = static_cast<std::size_t>(cfg.stage_plan[j + 1]);
      if (pool.size() <= target) {
        // Stage skipped: everyone left advances.
        for (std::size_t i : pool) points[i] += award;
        continue;
      }
      const int group_count = cfg.groups_per_stage[j];
      const auto q = quotas(cfg.stage_plan[j + 1], group_count);
      const auto groups = modulo_groups(pool, group_count);

      std::vector<Batch> contested;
      std::vector<std::size_t> contested_group;
      std::vector<std::size_t> survivors;
      for (std::size_t g = 0; g < groups.size(); ++g) {
        if (groups[g].size() <= q[g] || groups[g].size() < 2) {
          survivors.insert(survivors.end(), groups[g].begin(), groups[g].end());
          continue;
        }
        Batch shown = groups[g];
        std::shuffle(shown.begin(), shown.end(), rng);
        contested.push_back(std::move(shown));
        contested_group.push_back(g);
      }

      IterationRecord record;
      record.selected_count = pool.size();
      for (const auto& b : contested) record.batch_sizes.push_back(b.size());
      const std::size_t failures_before = trace.failures.size();
      const auto outcomes = rerank_batches(
          task, contested, backend,
          mix_seed(query_seed, 2 * static_cast<std::uint64_t>(t) + 1 + 2 * 1000 * j),
          cfg.max_parallel_calls, trace.failures);
      trace.calls_made += static_cast<int>(contested.size());
      record.failed_calls = static_cast<int>(trace.failures.size() - failures_before);
      trace.failed_calls += record.failed_calls;

      for (std::size_t c = 0; c < outcomes.size(); ++c) {
        const std::size_t g = contested_group[c];
        if (outcomes[c].ordering.empty()) {
          // Failed call: the group's retrieval order decides.
          survivors.insert(survivors.end(), groups[g].begin(), groups[g].begin() + q[g]);
          continue;
        }
        for (std::size_t r = 0; r < q[g]; ++r) {
          survivors.push_back(index_of(task, outcomes[c].ordering[r]));
        }
      }
      std::sort(survivors.begin(), survivors.end());
      for (std::size_t i : survivors) points[i] += award;
      pool = std::move(survivors);
      trace.per_iteration.push_back(std::move(record));
    }
  }
  trace.iterations = static_cast<int>(trace.per_iteration.size());
  trace.stop_reason = "fixed";

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return points[a] > points[b]; });
  trace.final_ranking = ids_of(task, order);
  return RerankOutcome{trace.final_ranking, std::move(trace)};
}

void StaticStagePlan::validate() const {
  if (c.empty()) throw ConfigError("trueskill-static: empty stage plan");
  for (int calls : c) {
    if (calls < 1) throw ConfigError("trueskill-static: stage counts must be >= 1");
  }
}

RerankOutcome run_trueskill_static(const QueryTask& task,
                                   const StaticStagePlan& plan,
                                   const SchedulerConfig& cfg,
                                   const Reranker& backend,
                                   const Environment& env) {
  plan.validate();
  cfg.validate();
  BeliefState state = initialize_beliefs(task, cfg, env);
  RunTrace trace;
  trace.strategy = "trueskill-static";
  const std::uint64_t query_seed = derive_seed(cfg.seed, task.query_id);

  for (std::size_t stage = 0; stage < plan.c.size(); ++stage) {
    const std::size_t want = static_cast<std::size_t>(cfg.m) * plan.c[stage];
    std::vector<std::size_t> top = order_by_mean(state);
    top.resize(std::min(top.size(), want));

    SchedulerConfig sequential = cfg;
    sequential.partition_rule = PartitionRule::kSequential;
    std::vector<Batch> batches = partition(top, state, sequential);
    std::erase_if(batches, [](const Batch& b) { return b.size() < 2; });

    IterationRecord record;
    record.selected_count = top.size();
    for (const auto& b : batches) record.batch_sizes.push_back(b.size());
    const std::size_t failures_before = trace.failures.size();
    const auto outcomes = rerank_batches(task, batches, backend,
                                         mix_seed(query_seed, stage),
                                         cfg.max_parallel_calls, trace.failures);
    trace.calls_made += static_cast<int>(batches.size());
    record.failed_calls = static_cast<int>(trace.failures.size() - failures_before);
    trace.failed_calls += record.failed_calls;
    apply_outcomes(state, outcomes);
    trace.per_iteration.push_back(std::move(record));
  }
  trace.iterations = static_cast<int>(plan.c.size());
  trace.stop_reason = "fixed";
  std::vector<std::size_t> order = order_by_mean(state);
  trace.final_ranking.reserve(order.size());
  for (std::size_t i : order) trace.final_ranking.push_back(state.doc_ids[i]);
  return RerankOutcome{trace.final_ranking, std::move(trace)};
}

}  // namespace acurank
