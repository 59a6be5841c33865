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

#ifndef ACURANK_TRUESKILL_H_
#define ACURANK_TRUESKILL_H_

#include <span>
#include <string>
#include <vector>

namespace acurank {

// Gaussian belief N(mu, sigma^2) over one document's latent relevance.
struct Rating {
  double mu = 25.0;
  double sigma = 25.0 / 3.0;

  friend bool operator==(const Rating&, const Rating&) = default;
};

// Global TrueSkill parameters. `beta` is the observation noise added to every
// latent score; `dynamics` is the per-update additive drift (kept at 0 for
// reranking). `draw_probability` only sets the draw margin of the win factor:
// reranker outputs are strict orderings, no draw is ever observed.
struct Environment {
  double beta = 25.0 / 6.0;
  double dynamics = 0.0;
  double draw_probability = 0.10;

  // Throws ConfigError unless beta > 0, dynamics >= 0, 0 <= p < 1.
  void validate() const;
  // Draw margin of a factor between two single-player teams.
  double draw_margin() const;
};

struct Participant {
  std::string id;
  Rating rating;
};

// One listwise reranker call seen as a free-for-all game. ranks[i] is the
// finishing place of participants[i], 0 = best; ranks are a permutation of
// 0..n-1.
struct GameOutcome {
  std::vector<Participant> participants;
  std::vector<int> ranks;

  // Throws InvalidOutcomeError on n < 2, duplicate ids, or ranks that are
  // not a permutation of 0..n-1.
  void validate() const;
};

// Additive correction of the win factor: v(t) = phi(t) / Phi(t).
double v_exceeds(double t);
// Multiplicative correction: w(t) = v(t) * (v(t) + t), in (0, 1).
double w_exceeds(double t);

// Posterior ratings after one game, in input order. Runs the TrueSkill
// factor graph for n single-player teams (adjacent-pair difference factors,
// iterated to convergence). Pure and thread-safe.
std::vector<Rating> rate(const GameOutcome& outcome, const Environment& env);

// Maps a reranked ordering of the batch onto finishing places: the rank of
// a participant is its position in `reranked`. Throws ContractError when
// `reranked` is not a permutation of the batch ids.
GameOutcome transform_outcome(std::span<const Participant> batch,
                              std::span<const std::string> reranked);

}  // namespace acurank

#endif  // ACURANK_TRUESKILL_H_
