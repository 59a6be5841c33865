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

#ifndef ACURANK_RANK_BELIEF_H_
#define ACURANK_RANK_BELIEF_H_

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "acurank/trueskill.h"

namespace acurank {

// Beliefs over the n retrieved documents of one query. Document order is the
// first-stage retrieval order, so the index doubles as the retrieval rank.
struct BeliefState {
  std::vector<std::string> doc_ids;
  std::vector<Rating> ratings;
  Environment env;
  int k = 10;

  std::size_t size() const { return doc_ids.size(); }
  // Std-dev of the latent score x_i: sqrt(sigma_i^2 + beta^2).
  double effective_sigma(std::size_t i) const;
  // Throws DomainError unless 1 <= k <= n, ids are unique and sizes agree.
  void validate() const;
};

struct TopKProbabilities {
  std::vector<double> s;  // s_i = P(x_i > threshold)
  double threshold = 0.0;
};

// P(x_i > t) under the latent score distribution of document i.
double exceedance_probability(const BeliefState& state, std::size_t i,
                              double t);

// Expected number of documents whose latent score exceeds t.
double expected_exceedances(const BeliefState& state, double t);

// The t with expected_exceedances(t) == r, found by bisection.
// Throws DomainError unless 1 <= r <= n.
double solve_threshold(const BeliefState& state, int r);

// s_i = P(x_i > t(k)); sums to k by construction.
TopKProbabilities topk_probabilities(const BeliefState& state);

// Monte-Carlo estimate of P(rank_i <= r) per document. Samples are drawn in
// fixed-size chunks with per-chunk seeds, so the estimate does not depend on
// `workers` (0 = hardware concurrency). Throws ConfigError if samples < 1000.
std::vector<double> mc_rank_oracle(const BeliefState& state, int r,
                                   int samples, std::uint64_t seed,
                                   int workers = 1);

// Indices i with epsilon < s_i < 1 - epsilon, ascending.
// Throws ConfigError unless 0 < epsilon < 0.5.
std::vector<std::size_t> select_uncertain(const TopKProbabilities& probs,
                                          double epsilon);

}  // namespace acurank

#endif  // ACURANK_RANK_BELIEF_H_
