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

#include "acurank/engine.h"

#include <algorithm>
#include <cmath>
#include <future>
#include <numeric>
#include <random>
#include <unordered_set>

#include "acurank/error.h"
#include "acurank/normal.h"

namespace acurank {
namespace {

constexpr double kMinPositiveScore = 0.1;

std::vector<std::string> ids_in_order(const BeliefState& state,
                                      std::span<const std::size_t> order) {
  std::vector<std::string> ids;
  ids.reserve(order.size());
  for (std::size_t i : order) ids.push_back(state.doc_ids[i]);
  return ids;
}

std::vector<std::size_t> top_k(const BeliefState& state) {
  auto order = order_by_mean(state);
  order.resize(std::min<std::size_t>(order.size(), state.k));
  return order;
}

}  // namespace

std::string_view to_string(StopRule rule) {
  switch (rule) {
    case StopRule::kUncertainCount: return "uncertain_count";
    case StopRule::kTopkStability: return "topk_stability";
    case StopRule::kBudgetOnly: return "budget_only";
  }
  return "?";
}

std::string_view to_string(PartitionRule rule) {
  return rule == PartitionRule::kSequential ? "sequential" : "random";
}

std::string_view to_string(InitRule rule) {
  return rule == InitRule::kRetrievalScores ? "retrieval_scores"
                                            : "default_trueskill";
}

void SchedulerConfig::validate() const {
  if (!(epsilon > 0.0 && epsilon < 0.5)) {
    throw ConfigError("epsilon must lie in (0, 0.5)");
  }
  if (tau < 1) throw ConfigError("tau must be at least 1");
  if (m < 2) throw ConfigError("m must be at least 2");
  if (k < 1) throw ConfigError("k must be at least 1");
  if (max_calls && *max_calls < 0) throw ConfigError("max_calls must be >= 0");
  if (max_iterations < 1) throw ConfigError("max_iterations must be >= 1");
  if (stability_window < 1) throw ConfigError("stability_window must be >= 1");
  if (max_parallel_calls < 1) throw ConfigError("max_parallel_calls must be >= 1");
}

SchedulerConfig SchedulerConfig::variant(std::string_view name) {
  SchedulerConfig cfg;
  if (name == "default" || name.empty()) return cfg;
  if (name == "h") {
    cfg.epsilon = 1e-4;
    return cfg;
  }
  if (name == "hh") {
    cfg.epsilon = 1e-4;
    cfg.tau = 5;
    return cfg;
  }
  throw ConfigError("unknown variant '" + std::string(name) +
                    "' (expected default, h or hh)");
}

void QueryTask::validate() const {
  if (passages.size() != candidates.size()) {
    throw DataError("query " + query_id + ": passages and candidates differ");
  }
  std::unordered_set<std::string> seen;
  for (std::size_t i = 0; i < candidates.size(); ++i) {
    const auto& c = candidates[i];
    if (!std::isfinite(c.retrieval_score)) {
      throw DataError("query " + query_id + ": non-finite score for " + c.doc_id);
    }
    if (!seen.insert(c.doc_id).second) {
      throw DataError("query " + query_id + ": duplicate doc " + c.doc_id);
    }
    if (i > 0 && c.retrieval_score > candidates[i - 1].retrieval_score) {
      throw DataError("query " + query_id + ": candidates not sorted by score");
    }
    if (passages[i].doc_id != c.doc_id) {
      throw DataError("query " + query_id + ": passage order does not match");
    }
  }
}

BeliefState initialize_beliefs(const QueryTask& task, const SchedulerConfig& cfg,
                               const Environment& env) {
  if (task.candidates.empty()) {
    throw DomainError("query " + task.query_id + " has no candidates");
  }
  task.validate();
  BeliefState state;
  state.env = env;
  state.k = std::min<int>(cfg.k, static_cast<int>(task.candidates.size()));
  for (const auto& c : task.candidates) state.doc_ids.push_back(c.doc_id);

  if (cfg.init_rule == InitRule::kDefaultTrueSkill) {
    state.ratings.assign(task.candidates.size(), Rating{25.0, 25.0 / 3.0});
    return state;
  }

  double min_score = task.candidates.front().retrieval_score;
  for (const auto& c : task.candidates) min_score = std::min(min_score, c.retrieval_score);
  const double shift = min_score <= 0.0 ? kMinPositiveScore - min_score : 0.0;
  double sigma_sum = 0.0;
  for (const auto& c : task.candidates) {
    const double mu = c.retrieval_score + shift;
    state.ratings.push_back(Rating{mu, mu / 3.0});
    sigma_sum += mu / 3.0;
  }
  // Keep TrueSkill's sigma:beta = 2:1 ratio on the retrieval score scale.
  state.env.beta = 0.5 * sigma_sum / static_cast<double>(task.candidates.size());
  return state;
}

std::vector<std::size_t> order_by_mean(const BeliefState& state) {
  std::vector<std::size_t> order(state.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    const Rating& ra = state.ratings[a];
    const Rating& rb = state.ratings[b];
    if (ra.mu != rb.mu) return ra.mu > rb.mu;
    if (ra.sigma != rb.sigma) return ra.sigma < rb.sigma;
    return a < b;
  });
  return order;
}

std::vector<Batch> partition(std::span<const std::size_t> candidates,
                             const BeliefState& state, const SchedulerConfig& cfg,
                             std::uint64_t shuffle_seed) {
  std::vector<std::size_t> order(candidates.begin(), candidates.end());
  if (cfg.partition_rule == PartitionRule::kSequential) {
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
      const Rating& ra = state.ratings[a];
      const Rating& rb = state.ratings[b];
      if (ra.mu != rb.mu) return ra.mu > rb.mu;
      if (ra.sigma != rb.sigma) return ra.sigma < rb.sigma;
      return a < b;
    });
  } else {
    std::sort(order.begin(), order.end());
    std::mt19937_64 rng(shuffle_seed);
    std::shuffle(order.begin(), order.end(), rng);
  }
  std::vector<Batch> batches;
  const std::size_t m = static_cast<std::size_t>(cfg.m);
  for (std::size_t begin = 0; begin < order.size(); begin += m) {
    const std::size_t end = std::min(order.size(), begin + m);
    batches.emplace_back(order.begin() + begin, order.begin() + end);
  }
  return batches;
}

std::vector<Batch> budget_schedule(std::vector<Batch> batches,
                                   int remaining_budget,
                                   const BeliefState& state) {
  if (remaining_budget <= 0) return {};
  if (batches.size() <= static_cast<std::size_t>(remaining_budget)) return batches;
  std::vector<double> mean(batches.size(), 0.0);
  for (std::size_t b = 0; b < batches.size(); ++b) {
    for (std::size_t i : batches[b]) mean[b] += state.ratings[i].mu;
    mean[b] /= static_cast<double>(std::max<std::size_t>(batches[b].size(), 1));
  }
  std::vector<std::size_t> order(batches.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return mean[a] > mean[b]; });
  std::vector<Batch> kept;
  for (int i = 0; i < remaining_budget; ++i) kept.push_back(std::move(batches[order[i]]));
  return kept;
}

void apply_outcomes(BeliefState& state, std::span<const BatchOutcome> outcomes) {
  for (const auto& outcome : outcomes) {
    if (outcome.ordering.empty()) continue;
    std::vector<Participant> players;
    players.reserve(outcome.batch.size());
    for (std::size_t i : outcome.batch) {
      players.push_back(Participant{state.doc_ids[i], state.ratings[i]});
    }
    const auto posterior = rate(transform_outcome(players, outcome.ordering), state.env);
    for (std::size_t j = 0; j < outcome.batch.size(); ++j) {
      state.ratings[outcome.batch[j]] = posterior[j];
    }
  }
}

RerankRequest make_request(const QueryTask& task, const Batch& batch,
                           std::uint64_t call_seed) {
  RerankRequest request;
  request.query = task.query;
  request.call_seed = call_seed;
  request.passages.reserve(batch.size());
  for (std::size_t i : batch) request.passages.push_back(task.passages[i]);
  return request;
}

std::vector<BatchOutcome> rerank_batches(const QueryTask& task,
                                         std::span<const Batch> batches,
                                         const Reranker& backend,
                                         std::uint64_t seed_base, int max_parallel,
                                         std::vector<std::string>& failures) {
  std::vector<BatchOutcome> outcomes(batches.size());
  std::vector<std::string> errors(batches.size());
  auto call = [&](std::size_t b) {
    outcomes[b].batch = batches[b];
    try {
      auto result = backend.rerank(make_request(task, batches[b], mix_seed(seed_base, b)));
      // Validate the returned ids against the batch before trusting them.
      std::vector<Participant> players;
      for (std::size_t i : batches[b]) players.push_back({task.candidates[i].doc_id, {}});
      transform_outcome(players, result.ordering);
      outcomes[b].ordering = std::move(result.ordering);
    } catch (const std::exception& e) {
      errors[b] = e.what();
      if (errors[b].empty()) errors[b] = "backend failure";
    }
  };
  if (max_parallel <= 1 || batches.size() <= 1) {
    for (std::size_t b = 0; b < batches.size(); ++b) call(b);
  } else {
    for (std::size_t start = 0; start < batches.size(); start += max_parallel) {
      std::vector<std::future<void>> inflight;
      const std::size_t end = std::min(batches.size(), start + max_parallel);
      for (std::size_t b = start; b < end; ++b) {
        inflight.push_back(std::async(std::launch::async, call, b));
      }
      for (auto& f : inflight) f.get();
    }
  }
  for (const auto& e : errors) {
    if (!e.empty()) failures.push_back(e);
  }
  return outcomes;
}

RerankOutcome run_acurank(const QueryTask& task, const SchedulerConfig& cfg,
                          const Reranker& backend, const Environment& env) {
  cfg.validate();
  BeliefState state = initialize_beliefs(task, cfg, env);
  RunTrace trace;
  trace.strategy = "acurank";

  const std::uint64_t query_seed = derive_seed(cfg.seed, task.query_id);
  std::vector<std::size_t> previous_top = top_k(state);
  int stable_iterations = 0;

  for (int iteration = 0;; ++iteration) {
    const TopKProbabilities probs = topk_probabilities(state);
    const std::vector<std::size_t> uncertain = select_uncertain(probs, cfg.epsilon);

    // Convergence tests apply from the second pass on, hard limits always.
    std::string stop;
    if (iteration > 0 && cfg.stop_rule == StopRule::kUncertainCount &&
        uncertain.size() < static_cast<std::size_t>(cfg.tau)) {
      stop = "uncertain_count";
    } else if (iteration > 0 && cfg.stop_rule == StopRule::kTopkStability &&
               stable_iterations >= cfg.stability_window) {
      stop = "topk_stable";
    } else if (cfg.max_calls && trace.calls_made >= *cfg.max_calls) {
      stop = "budget";
    } else if (iteration >= cfg.max_iterations) {
      stop = "max_iterations";
    } else if (uncertain.size() < 2) {
      stop = "no_uncertain";
    }
    if (!stop.empty()) {
      trace.stop_reason = stop;
      if (!trace.per_iteration.empty()) trace.per_iteration.back().stop_reason = stop;
      break;
    }

    std::vector<Batch> batches =
        partition(uncertain, state, cfg, mix_seed(query_seed, 2 * iteration + 1));
    // A single leftover document cannot form a listwise game.
    std::erase_if(batches, [](const Batch& b) { return b.size() < 2; });
    if (cfg.max_calls) {
      batches = budget_schedule(std::move(batches), *cfg.max_calls - trace.calls_made, state);
    }

    IterationRecord record;
    record.selected_count = uncertain.size();
    record.threshold = probs.threshold;
    for (const auto& b : batches) record.batch_sizes.push_back(b.size());

    const std::size_t failures_before = trace.failures.size();
    const auto outcomes =
        rerank_batches(task, batches, backend, mix_seed(query_seed, 2 * iteration),
                       cfg.max_parallel_calls, trace.failures);
    record.failed_calls = static_cast<int>(trace.failures.size() - failures_before);
    trace.calls_made += static_cast<int>(batches.size());
    trace.failed_calls += record.failed_calls;
    apply_outcomes(state, outcomes);

    trace.per_iteration.push_back(std::move(record));
    trace.iterations = iteration + 1;

    std::vector<std::size_t> current_top = top_k(state);
    stable_iterations = current_top == previous_top ? stable_iterations + 1 : 0;
    previous_top = std::move(current_top);
  }

  const auto order = order_by_mean(state);
  trace.final_ranking = ids_in_order(state, order);
  return RerankOutcome{trace.final_ranking, std::move(trace)};
}

}  // namespace acurank
