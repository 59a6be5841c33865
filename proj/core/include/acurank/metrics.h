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

#ifndef ACURANK_METRICS_H_
#define ACURANK_METRICS_H_

#include <map>
#include <span>
#include <string>
#include <vector>

namespace acurank {

// Graded judgments: query id -> doc id -> grade (>= 0).
struct Qrels {
  std::map<std::string, std::map<std::string, int>> judgments;

  bool has_query(const std::string& query_id) const;
  // Grade of (query, doc); unjudged documents count as 0.
  int grade(const std::string& query_id, const std::string& doc_id) const;
};

struct RunEntry {
  std::string query_id;
  std::string doc_id;
  int rank = 0;
  double score = 0.0;
  std::string tag;
};

// NDCG@k with gain 2^grade - 1 and discount log2(position + 1). Returns 0
// when the query has no relevant judgment. Throws EvaluationError on an
// unknown query or k < 1.
double ndcg_at_k(std::span<const std::string> ranking, const Qrels& qrels,
                 const std::string& query_id, int k);

// Unweighted mean of per-dataset means. Throws EvaluationError when empty.
double macro_average(const std::map<std::string, double>& per_dataset_means);

// Weighted information gain of a retrieval score list (descending, >= 0):
// mean of log(1+s) over the top `window_k` minus the mean over all scores.
double wig(std::span<const double> scores, int window_k = 50);

struct SpearmanResult {
  double rho = 0.0;
  double p_value = 1.0;
};

// Rank correlation with average ranks for ties; two-sided p from the
// t-approximation. Throws EvaluationError unless |xs| == |ys| >= 4.
SpearmanResult spearman(std::span<const double> xs, std::span<const double> ys);

// Average ranks (1-based), ties share the mean of their positions.
std::vector<double> average_ranks(std::span<const double> values);

// Fixed one-decimal rendering used in report tables ("55.46" -> "55.5").
std::string format_one_decimal(double value);

struct QueryMetrics {
  std::string query_id;
  double ndcg = 0.0;
  int calls = 0;
  double wig = 0.0;
};

struct DifficultyReport {
  std::map<std::string, QueryMetrics> per_query;
  double spearman_rho = 0.0;
  double p_value = 1.0;
};

// Spearman correlation between per-query WIG and reranker calls.
DifficultyReport difficulty_report(std::span<const QueryMetrics> queries);

}  // namespace acurank

#endif  // ACURANK_METRICS_H_
