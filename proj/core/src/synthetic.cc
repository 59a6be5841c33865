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

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include "acurank/corpus_io.h"
#include "acurank/error.h"
#include "acurank/normal.h"

namespace acurank {
namespace {

std::string padded(char prefix, int value, int width) {
  std::string digits = std::to_string(value);
  if (digits.size() < static_cast<std::size_t>(width)) {
    digits.insert(0, static_cast<std::size_t>(width) - digits.size(), '0');
  }
  return prefix + digits;
}

int digits(int n) {
  int d = 1;
  while (n >= 10) {
    n /= 10;
    ++d;
  }
  return std::max(d, 3);
}

}  // namespace

void SyntheticSpec::validate() const {
  if (n_queries < 1) throw ConfigError("n_queries must be >= 1");
  if (n_docs_per_query < 2) throw ConfigError("n_docs_per_query must be >= 2");
  if (grade_distribution.empty()) throw ConfigError("grade_distribution is empty");
  double total = 0.0;
  for (double p : grade_distribution) {
    if (!(p >= 0.0) || !std::isfinite(p)) {
      throw ConfigError("grade probabilities must be finite and >= 0");
    }
    total += p;
  }
  if (std::abs(total - 1.0) > 1e-6) {
    throw ConfigError("grade_distribution must sum to 1");
  }
  if (!(score_noise >= 0.0) || !std::isfinite(score_noise)) {
    throw ConfigError("score_noise must be >= 0");
  }
  const auto [lo, hi] = temperature_range;
  if (!(lo >= 0.0) || !(hi >= lo) || !std::isfinite(hi)) {
    throw ConfigError("temperature_range must satisfy 0 <= lo <= hi");
  }
}

SyntheticDataset generate_synthetic(const SyntheticSpec& spec) {
  spec.validate();
  SyntheticDataset data;
  const int qwidth = digits(spec.n_queries);
  const int dwidth = digits(spec.n_docs_per_query);
  for (int q = 1; q <= spec.n_queries; ++q) {
    const std::string qid = padded('q', q, qwidth);
    std::mt19937_64 rng(derive_seed(spec.seed, qid));
    std::uniform_real_distribution<double> temperature(spec.temperature_range.first,
                                                       spec.temperature_range.second);
    std::discrete_distribution<int> grade(spec.grade_distribution.begin(),
                                          spec.grade_distribution.end());
    std::normal_distribution<double> noise(0.0, 1.0);

    const double temp = temperature(rng);
    const int n = spec.n_docs_per_query;
    std::vector<int> grades(n);
    std::vector<double> scores(n);
    for (int d = 0; d < n; ++d) {
      grades[d] = grade(rng);
      scores[d] = grades[d] + spec.score_noise * noise(rng);
    }
    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](int a, int b) { return scores[a] > scores[b]; });

    data.queries[qid] = "synthetic query " + qid;
    data.temperatures[qid] = temp;
    QueryTask task;
    task.query_id = qid;
    task.query = data.queries[qid];
    auto& run = data.runs[qid];
    auto& judged = data.qrels.judgments[qid];
    for (int pos = 0; pos < n; ++pos) {
      const int d = order[pos];
      const std::string doc_id = qid + "_" + padded('d', d + 1, dwidth);
      Passage passage;
      passage.doc_id = doc_id;
      passage.text = "synthetic passage " + doc_id;
      passage.true_relevance = grades[d];
      data.corpus.docs[doc_id] = passage;
      judged[doc_id] = grades[d];
      run.push_back(ScoredDoc{doc_id, scores[d], pos + 1});
      task.candidates.push_back(Candidate{doc_id, scores[d]});
      task.passages.push_back(std::move(passage));
    }
    data.tasks.push_back(std::move(task));
  }
  return data;
}

}  // namespace acurank
