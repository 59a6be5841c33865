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

#include "acurank/metrics.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numeric>

#include <boost/math/distributions/students_t.hpp>

#include "acurank/error.h"

namespace acurank {

bool Qrels::has_query(const std::string& query_id) const {
  return judgments.contains(query_id);
}

int Qrels::grade(const std::string& query_id, const std::string& doc_id) const {
  auto q = judgments.find(query_id);
  if (q == judgments.end()) return 0;
  auto d = q->second.find(doc_id);
  return d == q->second.end() ? 0 : d->second;
}

double ndcg_at_k(std::span<const std::string> ranking, const Qrels& qrels,
                 const std::string& query_id, int k) {
  if (k < 1) throw EvaluationError("ndcg: k must be >= 1");
  auto q = qrels.judgments.find(query_id);
  if (q == qrels.judgments.end()) {
    throw EvaluationError("ndcg: no judgments for query " + query_id);
  }
  auto gain = [](int grade) { return std::exp2(static_cast<double>(grade)) - 1.0; };

  std::vector<int> ideal;
  for (const auto& [doc, grade] : q->second) {
    if (grade > 0) ideal.push_back(grade);
  }
  std::sort(ideal.begin(), ideal.end(), std::greater<>());
  double idcg = 0.0;
  for (std::size_t i = 0; i < ideal.size() && i < static_cast<std::size_t>(k); ++i) {
    idcg += gain(ideal[i]) / std::log2(static_cast<double>(i) + 2.0);
  }
  if (idcg == 0.0) return 0.0;

  double dcg = 0.0;
  for (std::size_t i = 0; i < ranking.size() && i < static_cast<std::size_t>(k); ++i) {
    auto d = q->second.find(ranking[i]);
    if (d != q->second.end() && d->second > 0) {
      dcg += gain(d->second) / std::log2(static_cast<double>(i) + 2.0);
    }
  }
  return dcg / idcg;
}

double macro_average(const std::map<std::string, double>& per_dataset_means) {
  if (per_dataset_means.empty()) {
    throw EvaluationError("macro_average: no datasets");
  }
  double total = 0.0;
  for (const auto& [name, mean] : per_dataset_means) total += mean;
  return total / static_cast<double>(per_dataset_means.size());
}

double wig(std::span<const double> scores, int window_k) {
  if (window_k < 1 || scores.size() < static_cast<std::size_t>(window_k)) {
    throw EvaluationError("wig: need at least " + std::to_string(window_k) +
                          " scores, got " + std::to_string(scores.size()));
  }
  // Centring on the first value keeps the all-equal case exactly zero.
  const double pivot = std::log1p(scores[0]);
  double window = 0.0;
  double all = 0.0;
  for (std::size_t i = 0; i < scores.size(); ++i) {
    if (scores[i] < 0.0) throw EvaluationError("wig: scores must be non-negative");
    const double v = std::log1p(scores[i]) - pivot;
    all += v;
    if (i < static_cast<std::size_t>(window_k)) window += v;
  }
  return window / window_k - all / static_cast<double>(scores.size());
}

std::vector<double> average_ranks(std::span<const double> values) {
  const std::size_t n = values.size();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });
  std::vector<double> ranks(n);
  for (std::size_t i = 0; i < n;) {
    std::size_t j = i;
    while (j + 1 < n && values[order[j + 1]] == values[order[i]]) ++j;
    const double shared = 0.5 * static_cast<double>(i + j) + 1.0;
    for (std::size_t t = i; t <= j; ++t) ranks[order[t]] = shared;
    i = j + 1;
  }
  return ranks;
}

SpearmanResult spearman(std::span<const double> xs, std::span<const double> ys) {
  if (xs.size() != ys.size()) throw EvaluationError("spearman: length mismatch");
  if (xs.size() < 4) throw EvaluationError("spearman: need at least 4 pairs");
  const auto rx = average_ranks(xs);
  const auto ry = average_ranks(ys);
  const double n = static_cast<double>(xs.size());
  const double mean = (n + 1.0) / 2.0;
  double sxy = 0.0, sxx = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < rx.size(); ++i) {
    sxy += (rx[i] - mean) * (ry[i] - mean);
    sxx += (rx[i] - mean) * (rx[i] - mean);
    syy += (ry[i] - mean) * (ry[i] - mean);
  }
  SpearmanResult result;
  if (sxx == 0.0 || syy == 0.0) return result;  // constant input
  result.rho = std::clamp(sxy / std::sqrt(sxx * syy), -1.0, 1.0);
  if (std::abs(result.rho) >= 1.0) {
    result.p_value = 0.0;
    return result;
  }
  const double df = n - 2.0;
  const double t = result.rho * std::sqrt(df / (1.0 - result.rho * result.rho));
  const boost::math::students_t dist(df);
  result.p_value = std::clamp(2.0 * boost::math::cdf(boost::math::complement(dist, std::abs(t))),
                              0.0, 1.0);
  return result;
}

std::string format_one_decimal(double value) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.1f", value);
  return buf;
}

DifficultyReport difficulty_report(std::span<const QueryMetrics> queries) {
  DifficultyReport report;
  std::vector<double> wigs, calls;
  for (const auto& q : queries) {
    report.per_query[q.query_id] = q;
    wigs.push_back(q.wig);
    calls.push_back(static_cast<double>(q.calls));
  }
  const auto s = spearman(wigs, calls);
  report.spearman_rho = s.rho;
  report.p_value = s.p_value;
  return report;
}

}  // namespace acurank
