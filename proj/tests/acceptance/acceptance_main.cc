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

// Runs every acceptance criterion and prints one PASS/FAIL line for each.
// Usage: acceptance [criterion numbers...]

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <numeric>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "acurank/baselines.h"
#include "acurank/corpus_io.h"
#include "acurank/engine.h"
#include "acurank/experiment.h"
#include "acurank/metrics.h"
#include "acurank/rank_belief.h"
#include "acurank/trueskill.h"
#include "oracles/oracles.h"
#include "support/fixtures.h"

namespace acurank {
namespace {

using Clock = std::chrono::steady_clock;

struct Verdict {
  bool pass = false;
  std::string detail;
};

std::string fmt(const char* format, double a, double b = 0, double c = 0, double d = 0) {
  char buf[512];
  std::snprintf(buf, sizeof(buf), format, a, b, c, d);
  return buf;
}

double mean(const std::vector<double>& xs) {
  return std::accumulate(xs.begin(), xs.end(), 0.0) / static_cast<double>(xs.size());
}

// Bootstrap distribution of the mean of `xs`.
std::vector<double> bootstrap_means(const std::vector<double>& xs, int resamples,
                                    std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::size_t> pick(0, xs.size() - 1);
  std::vector<double> means(resamples);
  for (double& m : means) {
    double sum = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) sum += xs[pick(rng)];
    m = sum / static_cast<double>(xs.size());
  }
  std::sort(means.begin(), means.end());
  return means;
}

double stddev(const std::vector<double>& xs) {
  const double m = mean(xs);
  double ss = 0.0;
  for (double x : xs) ss += (x - m) * (x - m);
  return std::sqrt(ss / static_cast<double>(xs.size() - 1));
}

// The shared synthetic suite: 200 queries of 100 documents with reranker
// temperature drawn from U(0.5, 2.0).
SyntheticDataset suite(std::uint64_t seed) {
  SyntheticSpec spec;
  spec.n_queries = 200;
  spec.n_docs_per_query = 100;
  spec.temperature_range = {0.5, 2.0};
  spec.seed = seed;
  return generate_synthetic(spec);
}

constexpr std::uint64_t kSuiteSeeds[] = {0, 1, 2, 3, 4};

// Results of one method over every suite seed, cached across criteria.
const std::vector<std::vector<QueryResult>>& suite_results(const std::string& method) {
  static std::map<std::string, std::vector<std::vector<QueryResult>>> cache;
  static std::map<std::uint64_t, SyntheticDataset> datasets;
  auto it = cache.find(method);
  if (it != cache.end()) return it->second;
  std::vector<std::vector<QueryResult>> per_seed;
  const MethodSpec spec = parse_method_spec(method);
  for (std::uint64_t seed : kSuiteSeeds) {
    if (!datasets.count(seed)) datasets.emplace(seed, suite(seed));
    per_seed.push_back(simulate_method(spec, datasets.at(seed), seed));
  }
  return cache.emplace(method, std::move(per_seed)).first->second;
}

std::vector<double> ndcgs(const std::vector<QueryResult>& results) {
  std::vector<double> out;
  for (const auto& r : results) out.push_back(r.ndcg);
  return out;
}

std::vector<double> calls(const std::vector<QueryResult>& results) {
  std::vector<double> out;
  for (const auto& r : results) out.push_back(r.outcome.trace.calls_made);
  return out;
}

template <typename F>
std::vector<double> pooled(const std::string& method, F field) {
  std::vector<double> out;
  for (const auto& results : suite_results(method)) {
    const auto xs = field(results);
    out.insert(out.end(), xs.begin(), xs.end());
  }
  return out;
}

Verdict call_counts() {
  const OracleReranker oracle;
  SyntheticSpec spec;
  spec.n_queries = 20;
  const auto data = generate_synthetic(spec);
  bool ok = true;
  std::ostringstream detail;
  for (int passes = 1; passes <= 3; ++passes) {
    SlidingWindowConfig sw;
    sw.passes = passes;
    std::set<int> seen;
    for (const auto& task : data.tasks) seen.insert(run_sliding_window(task, sw, oracle).trace.calls_made);
    ok &= seen == std::set<int>{9 * passes};
    detail << "SW-" << passes << "=" << *seen.begin() << " ";
  }
  std::set<int> tour, ts;
  int worst_acurank = 0;
  SchedulerConfig capped;
  capped.max_calls = 9;
  for (const auto& task : data.tasks) {
    tour.insert(run_tourrank(task, {}, oracle).trace.calls_made);
    ts.insert(run_trueskill_static(task, {{5, 2, 2, 1}}, SchedulerConfig{}, oracle).trace.calls_made);
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
      const NoisyReranker noisy(data.temperatures.at(task.query_id), seed);
      worst_acurank = std::max(worst_acurank, run_acurank(task, capped, noisy).trace.calls_made);
    }
    worst_acurank = std::max(worst_acurank, run_acurank(task, capped, oracle).trace.calls_made);
  }
  ok &= tour == std::set<int>{13} && ts == std::set<int>{10} && worst_acurank <= 9;
  detail << "TourRank-1=" << *tour.begin() << " TS[5-2-2-1]=" << *ts.begin()
         << " AcuRank-9 max=" << worst_acurank;
  return {ok, detail.str()};
}

Verdict trueskill_correctness() {
  const Environment env;
  GameOutcome game;
  game.participants = {{"a", Rating{}}, {"b", Rating{}}};
  game.ranks = {0, 1};
  const auto post = rate(game, env);
  const auto [winner, loser] =
      oracle::two_player_update({25.0, 25.0 / 3}, {25.0, 25.0 / 3}, env.beta, env.draw_probability);
  bool ok = std::abs(post[0].mu - 29.3958) < 1e-3 && std::abs(post[0].sigma - 7.1715) < 1e-3 &&
            std::abs(post[1].mu - 20.6042) < 1e-3 && std::abs(post[1].sigma - 7.1715) < 1e-3;
  ok &= std::abs(post[0].mu - winner.mu) < 1e-9 && std::abs(post[0].sigma - winner.sigma) < 1e-9 &&
        std::abs(post[1].mu - loser.mu) < 1e-9 && std::abs(post[1].sigma - loser.sigma) < 1e-9;

  std::mt19937_64 rng(2024);
  int sigma_violations = 0;
  int order_violations = 0;
  for (int g = 0; g < 1000; ++g) {
    const int n = 2 + static_cast<int>(rng() % 19);
    GameOutcome fuzz;
    GameOutcome equal;
    std::vector<int> ranks(n);
    std::iota(ranks.begin(), ranks.end(), 0);
    std::shuffle(ranks.begin(), ranks.end(), rng);
    for (int i = 0; i < n; ++i) {
      const Rating r{std::uniform_real_distribution<double>(0, 50)(rng),
                     std::uniform_real_distribution<double>(0.5, 10)(rng)};
      fuzz.participants.push_back({"p" + std::to_string(i), r});
      equal.participants.push_back({"p" + std::to_string(i), Rating{}});
    }
    fuzz.ranks = ranks;
    equal.ranks = ranks;
    const auto fp = rate(fuzz, env);
    for (int i = 0; i < n; ++i) {
      if (!(fp[i].sigma <= fuzz.participants[i].rating.sigma)) ++sigma_violations;
    }
    const auto ep = rate(equal, env);
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        if (ranks[i] < ranks[j] && !(ep[i].mu > ep[j].mu)) ++order_violations;
      }
    }
  }
  ok &= sigma_violations == 0 && order_violations == 0;
  return {ok, fmt("winner (%.4f, %.4f) loser (%.4f, %.4f)", post[0].mu, post[0].sigma,
                  post[1].mu, post[1].sigma) +
                  ", sigma violations " + std::to_string(sigma_violations) +
                  ", order violations " + std::to_string(order_violations)};
}

BeliefState random_state(std::mt19937_64& rng, int n, int k) {
  BeliefState state;
  state.k = k;
  state.env.beta = std::uniform_real_distribution<double>(0.2, 2.0)(rng);
  for (int i = 0; i < n; ++i) {
    state.doc_ids.push_back("d" + std::to_string(i));
    state.ratings.push_back({std::uniform_real_distribution<double>(0, 10)(rng),
                             std::uniform_real_distribution<double>(0.2, 3.0)(rng)});
  }
  return state;
}

// A belief state the engine can reach: retrieval-score initialization
// followed by a random number of rated batches with random orderings.
BeliefState reachable_state(std::mt19937_64& rng, int n, int k) {
  QueryTask task;
  task.query_id = "q";
  const double spread = std::uniform_real_distribution<double>(0.5, 5.0)(rng);
  std::vector<double> scores(n);
  for (double& x : scores) x = std::normal_distribution<double>(10.0, spread)(rng);
  std::sort(scores.rbegin(), scores.rend());
  for (int i = 0; i < n; ++i) {
    task.candidates.push_back({"d" + std::to_string(i), scores[i]});
    Passage passage;
    passage.doc_id = task.candidates.back().doc_id;
    task.passages.push_back(passage);
  }
  SchedulerConfig cfg;
  cfg.k = k;
  BeliefState state = initialize_beliefs(task, cfg);
  const int games = static_cast<int>(rng() % 21);
  for (int g = 0; g < games; ++g) {
    std::vector<std::size_t> idx(n);
    std::iota(idx.begin(), idx.end(), std::size_t{0});
    std::shuffle(idx.begin(), idx.end(), rng);
    const int m = 2 + static_cast<int>(rng() % (n - 1));
    std::vector<int> places(m);
    std::iota(places.begin(), places.end(), 0);
    std::shuffle(places.begin(), places.end(), rng);
    GameOutcome game;
    for (int j = 0; j < m; ++j) {
      game.participants.push_back({state.doc_ids[idx[j]], state.ratings[idx[j]]});
      game.ranks.push_back(places[j]);
    }
    const auto post = rate(game, state.env);
    for (int j = 0; j < m; ++j) state.ratings[idx[j]] = post[j];
  }
  return state;
}

double worst_topk_gap(const BeliefState& state, std::uint64_t seed) {
  const auto probs = topk_probabilities(state);
  const auto mc = mc_rank_oracle(state, state.k, 100000, seed);
  double worst = 0.0;
  for (std::size_t i = 0; i < state.size(); ++i) worst = std::max(worst, std::abs(probs.s[i] - mc[i]));
  return worst;
}

Verdict approximation() {
  std::mt19937_64 rng(7);
  double worst = 0.0;
  for (int s = 0; s < 50; ++s) {
    const auto state = reachable_state(rng, 20, 10);
    worst = std::max(worst, worst_topk_gap(state, rng()));
  }
  // Not gated: independent means, spreads and beta, which the engine never produces.
  double worst_unconstrained = 0.0;
  for (int s = 0; s < 50; ++s) {
    const auto state = random_state(rng, 20, 10);
    worst_unconstrained = std::max(worst_unconstrained, worst_topk_gap(state, rng()));
  }
  double worst_dp = 0.0;
  for (int s = 0; s < 30; ++s) {
    const int n = 2 + static_cast<int>(rng() % 7);
    const int r = 1 + static_cast<int>(rng() % n);
    const auto state = random_state(rng, n, r);
    std::vector<oracle::Gaussian> xs;
    for (int i = 0; i < n; ++i) xs.push_back({state.ratings[i].mu, state.effective_sigma(i)});
    const auto dp = oracle::rank_dp(xs, r);
    const auto mc = mc_rank_oracle(state, r, 100000, rng());
    for (int i = 0; i < n; ++i) worst_dp = std::max(worst_dp, std::abs(dp[i] - mc[i]));
  }
  return {worst <= 0.05 && worst_dp <= 0.01,
          fmt("max |s - MC| = %.4f (<= 0.05), max |DP - MC| = %.4f (<= 0.01); "
              "unconstrained states, not gated: %.4f",
              worst, worst_dp, worst_unconstrained)};
}

Verdict conservation() {
  std::mt19937_64 rng(99);
  double worst = 0.0;
  for (int s = 0; s < 10000; ++s) {
    const int n = 5 + static_cast<int>(rng() % 496);
    const int k = 1 + static_cast<int>(rng() % n);
    const auto state = random_state(rng, n, k);
    const auto probs = topk_probabilities(state);
    worst = std::max(worst, std::abs(std::accumulate(probs.s.begin(), probs.s.end(), 0.0) - k));
  }
  return {worst <= 1e-6, fmt("max |sum s - k| = %.3g over 10000 states", worst)};
}

Verdict perfect_oracle() {
  const OracleReranker oracle;
  SchedulerConfig cfg;
  cfg.k = 5;
  cfg.m = 10;
  int acurank_hits = 0;
  int sw_hits = 0;
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const auto task = testing::distinct_grade_task(30, 1.0, seed);
    acurank_hits += testing::sorted_prefix(run_acurank(task, cfg, oracle).ranking, 5) ==
                    testing::true_top(task, 5);
    sw_hits += testing::sorted_prefix(run_sliding_window(task, {}, oracle).ranking, 10) ==
               testing::true_top(task, 10);
  }
  return {acurank_hits >= 99 && sw_hits == 100,
          "AcuRank top-5 " + std::to_string(acurank_hits) + "/100, SW-1 top-10 " +
              std::to_string(sw_hits) + "/100"};
}

Verdict dominance() {
  const auto& acu = suite_results("acurank:18");
  const auto& sw = suite_results("sliding-window:2");
  bool ok = true;
  std::ostringstream detail;
  for (std::size_t s = 0; s < acu.size(); ++s) {
    const auto a = ndcgs(acu[s]);
    const auto b = ndcgs(sw[s]);
    std::vector<double> diff(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) diff[i] = a[i] - b[i];
    const auto boot = bootstrap_means(diff, 10000, 1000 + s);
    const double lower = boot[boot.size() / 20];
    const double acu_calls = mean(calls(acu[s]));
    ok &= mean(a) >= mean(b) && lower >= 0.0 && acu_calls <= 18.0;
    detail << fmt("seed %.0f: %.4f vs %.4f (5th pct %+.4f, ", static_cast<double>(kSuiteSeeds[s]),
                  mean(a), mean(b), lower)
           << fmt("calls %.1f); ", acu_calls);
  }
  return {ok, detail.str()};
}

Verdict adaptive_allocation() {
  const auto& results = suite_results("acurank");
  bool ok = true;
  std::ostringstream detail;
  for (std::size_t s = 0; s < results.size(); ++s) {
    std::vector<double> temperature, wigs;
    for (const auto& r : results[s]) {
      temperature.push_back(r.temperature);
      wigs.push_back(r.wig);
    }
    const auto c = calls(results[s]);
    const auto t = spearman(temperature, c);
    const auto w = spearman(wigs, c);
    ok &= t.rho > 0 && t.p_value < 0.01 && w.rho < 0 && w.p_value < 0.05;
    detail << fmt("seed %.0f: rho(T,calls)=%+.3f p=%.2g, ", static_cast<double>(kSuiteSeeds[s]),
                  t.rho, t.p_value)
           << fmt("rho(WIG,calls)=%+.3f p=%.2g; ", w.rho, w.p_value);
  }
  return {ok, detail.str()};
}

Verdict budget_scaling() {
  const std::vector<std::string> ladder = {"acurank:9", "acurank", "acurank-h", "acurank-hh"};
  std::vector<std::vector<double>> n, c;
  for (const auto& m : ladder) {
    n.push_back(pooled(m, ndcgs));
    c.push_back(pooled(m, calls));
  }
  bool ok = true;
  std::ostringstream detail;
  for (std::size_t i = 0; i < ladder.size(); ++i) {
    detail << ladder[i] << fmt(" ndcg %.4f calls %.2f; ", mean(n[i]), mean(c[i]));
  }
  for (std::size_t i = 1; i < ladder.size(); ++i) {
    std::vector<double> diff(n[i].size());
    for (std::size_t q = 0; q < diff.size(); ++q) diff[q] = n[i][q] - n[i - 1][q];
    const double se = stddev(bootstrap_means(diff, 2000, 77 + i));
    const bool ndcg_ok = mean(diff) >= -se;
    ok &= ndcg_ok;
    if (!ndcg_ok) detail << ladder[i] << fmt(" ndcg drop %.4f > SE %.4f; ", -mean(diff), se);
    if (i >= 2) {
      const bool calls_ok = mean(c[i]) > mean(c[i - 1]);
      ok &= calls_ok;
      if (!calls_ok) detail << ladder[i] << " calls not above " << ladder[i - 1] << "; ";
    }
  }
  return {ok, detail.str()};
}

std::string csv_bytes(std::uint64_t seed) {
  SyntheticSpec spec;
  spec.n_queries = 30;
  spec.seed = seed;
  const auto data = generate_synthetic(spec);
  std::vector<SimulationRow> rows;
  std::ostringstream traces;
  for (const char* m : {"acurank", "acurank:9", "sw:2", "tourrank", "ts"}) {
    const auto spec_m = parse_method_spec(m);
    const auto results = simulate_method(spec_m, data, seed, 2);
    rows.push_back(summarize(spec_m, results));
    for (const auto& r : results) {
      for (const auto& id : r.outcome.ranking) traces << id << ' ';
      traces << '\n';
    }
  }
  return simulation_csv(rows) + traces.str();
}

Verdict determinism() {
  const bool same = csv_bytes(42) == csv_bytes(42);
  const NoisyReranker noisy(1.0, 5);
  std::mt19937_64 rng(8);
  int mismatches = 0;
  for (int trial = 0; trial < 50; ++trial) {
    const auto task = testing::distinct_grade_task(100, 5.0, rng());
    const SchedulerConfig cfg;
    const auto state = initialize_beliefs(task, cfg);
    const auto batches = partition(select_uncertain(topk_probabilities(state), cfg.epsilon), state, cfg);
    std::vector<std::string> failures;
    auto outcomes = rerank_batches(task, batches, noisy, rng(), 1, failures);
    auto canonical = state;
    apply_outcomes(canonical, outcomes);
    for (int shuffle = 0; shuffle < 2; ++shuffle) {
      std::shuffle(outcomes.begin(), outcomes.end(), rng);
      auto shuffled = state;
      apply_outcomes(shuffled, outcomes);
      mismatches += !(shuffled.ratings == canonical.ratings);
    }
  }
  return {same && mismatches == 0,
          std::string("simulate output ") + (same ? "identical" : "differs") +
              ", shuffled update mismatches " + std::to_string(mismatches)};
}

Verdict metric_oracle() {
  std::mt19937_64 rng(31);
  double worst = 0.0;
  for (int trial = 0; trial < 100; ++trial) {
    std::map<std::string, int> judged;
    std::vector<std::string> ranking;
    const int pool = 5 + static_cast<int>(rng() % 100);
    for (int i = 0; i < pool; ++i) {
      const std::string id = "d" + std::to_string(i);
      if (rng() % 2) judged[id] = static_cast<int>(rng() % 4);
      if (rng() % 5) ranking.push_back(id);
    }
    judged["d0"] = 1 + static_cast<int>(rng() % 3);
    std::shuffle(ranking.begin(), ranking.end(), rng);
    Qrels qrels;
    qrels.judgments["q"] = judged;
    worst = std::max(worst, std::abs(ndcg_at_k(ranking, qrels, "q", 10) -
                                     oracle::reference_ndcg(ranking, judged, 10)));
  }
  // Dataset A has 43 queries, dataset B has 400; the macro mean ignores counts.
  std::vector<double> a(43), b(400);
  for (std::size_t i = 0; i < a.size(); ++i) a[i] = (i % 2 ? 50.3 : 58.3);
  for (std::size_t i = 0; i < b.size(); ++i) b[i] = (i % 2 ? 40.1 : 42.1);
  a.back() = 54.3 * 43 - std::accumulate(a.begin(), a.end() - 1, 0.0);
  const double macro = macro_average({{"A", mean(a)}, {"B", mean(b)}});
  const bool macro_ok = format_one_decimal(macro) == "47.7" &&
                        std::abs(macro - (mean(a) + mean(b)) / 2.0) == 0.0;
  return {worst <= 1e-6 && macro_ok,
          fmt("max |ndcg - reference| = %.3g, macro = %.4f", worst, macro)};
}

struct Criterion {
  int id;
  const char* name;
  double budget_seconds;
  std::function<Verdict()> run;
};

}  // namespace
}  // namespace acurank

int main(int argc, char** argv) {
  using namespace acurank;
  const std::vector<Criterion> criteria = {
      {1, "call-count reproduction", 1.0, call_counts},
      {2, "TrueSkill correctness", 10.0, trueskill_correctness},
      {3, "approximation validation", 120.0, approximation},
      {4, "conservation", 60.0, conservation},
      {5, "perfect-oracle end-to-end", 30.0, perfect_oracle},
      {6, "accuracy-efficiency dominance", 300.0, dominance},
      {7, "adaptive-allocation sign", 300.0, adaptive_allocation},
      {8, "budget scaling", 600.0, budget_scaling},
      {9, "determinism and update commutativity", 120.0, determinism},
      {10, "metric oracle", 10.0, metric_oracle},
  };
  std::set<int> selected;
  for (int i = 1; i < argc; ++i) selected.insert(std::atoi(argv[i]));

  int failures = 0;
  for (const auto& c : criteria) {
    if (!selected.empty() && !selected.count(c.id)) continue;
    const auto start = Clock::now();
    Verdict v;
    try {
      v = c.run();
    } catch (const std::exception& e) {
      v = {false, std::string("exception: ") + e.what()};
    }
    const double seconds = std::chrono::duration<double>(Clock::now() - start).count();
    const bool in_time = seconds <= c.budget_seconds;
    const bool pass = v.pass && in_time;
    failures += !pass;
    std::printf("%s [%d] %s: %s (%.2fs of %.0fs budget%s)\n", pass ? "PASS" : "FAIL", c.id,
                c.name, v.detail.c_str(), seconds, c.budget_seconds,
                in_time ? "" : ", over budget");
    std::fflush(stdout);
  }
  return failures == 0 ? 0 : 1;
}
