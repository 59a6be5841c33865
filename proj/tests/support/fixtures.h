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

#ifndef ACURANK_TESTS_SUPPORT_FIXTURES_H_
#define ACURANK_TESTS_SUPPORT_FIXTURES_H_

#include <algorithm>
#include <atomic>
#include <functional>
#include <numeric>
#include <random>
#include <string>
#include <vector>

#include "acurank/engine.h"
#include "acurank/error.h"
#include "acurank/reranker.h"

namespace acurank::testing {

// Task whose candidates carry the given grades, ordered by the given scores
// (descending). Doc ids are "d<original index>".
inline QueryTask make_task(const std::vector<int>& grades, const std::vector<double>& scores,
                           const std::string& query_id = "q1") {
  std::vector<std::size_t> order(grades.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return scores[a] > scores[b]; });
  QueryTask task;
  task.query_id = query_id;
  task.query = "query " + query_id;
  for (std::size_t i : order) {
    const std::string id = "d" + std::to_string(i);
    task.candidates.push_back({id, scores[i]});
    task.passages.push_back({id, std::nullopt, "text of " + id, grades[i]});
  }
  return task;
}

// n documents with distinct grades 0..n-1 and scores grade + noise * N(0,1).
inline QueryTask distinct_grade_task(int n, double noise, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<int> grades(n);
  std::iota(grades.begin(), grades.end(), 0);
  std::shuffle(grades.begin(), grades.end(), rng);
  std::normal_distribution<double> gauss(0.0, 1.0);
  std::vector<double> scores(n);
  for (int i = 0; i < n; ++i) scores[i] = grades[i] + noise * gauss(rng);
  return make_task(grades, scores, "q" + std::to_string(seed));
}

// Doc ids of the k highest grades.
inline std::vector<std::string> true_top(const QueryTask& task, int k) {
  std::vector<std::size_t> order(task.passages.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return *task.passages[a].true_relevance > *task.passages[b].true_relevance;
  });
  std::vector<std::string> ids;
  for (int i = 0; i < k && i < static_cast<int>(order.size()); ++i) {
    ids.push_back(task.passages[order[i]].doc_id);
  }
  std::sort(ids.begin(), ids.end());
  return ids;
}

inline std::vector<std::string> sorted_prefix(const std::vector<std::string>& ranking, int k) {
  std::vector<std::string> ids(ranking.begin(), ranking.begin() + std::min<std::size_t>(k, ranking.size()));
  std::sort(ids.begin(), ids.end());
  return ids;
}

// Wraps a backend, counting invocations and optionally failing some of them.
class CountingReranker final : public Reranker {
 public:
  explicit CountingReranker(const Reranker& inner,
                            std::function<bool(int)> fail = nullptr)
      : inner_(inner), fail_(std::move(fail)) {}

  RerankResult rerank(const RerankRequest& request) const override {
    const int call = calls_.fetch_add(1);
    if (fail_ && fail_(call)) throw TransportError("injected failure", 503);
    return inner_.rerank(request);
  }
  std::string name() const override { return "counting"; }
  int calls() const { return calls_.load(); }

 private:
  const Reranker& inner_;
  std::function<bool(int)> fail_;
  mutable std::atomic<int> calls_{0};
};

}  // namespace acurank::testing

#endif  // ACURANK_TESTS_SUPPORT_FIXTURES_H_
