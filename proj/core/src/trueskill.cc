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

#include "acurank/trueskill.h"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <numeric>
#include <unordered_map>
#include <unordered_set>

#include "acurank/error.h"
#include "acurank/normal.h"

namespace acurank {
namespace {

constexpr double kMinVariance = 1e-12;
constexpr double kMinDelta = 1e-9;
constexpr int kMaxSweeps = 100;
constexpr double kTailCutoff = -6.0;

// v(-x) - x for x > 6, from the continued fraction of the Mills ratio:
//   1 / R(x) = x + 1 / (x + 2 / (x + 3 / (x + ...)))
// so v(-x) - x = 1 / (x + 2 / (x + 3 / ...)), free of cancellation.
double tail_gap(double x) {
  double f = x;
  for (int k = 40; k >= 2; --k) f = x + k / f;
  return 1.0 / f;
}

// Gaussian message in natural parameters (precision, precision * mean).
struct Message {
  double pi = 0.0;
  double tau = 0.0;

  static Message from_mean_var(double mean, double var) {
    return {1.0 / var, mean / var};
  }
  double mean() const { return pi == 0.0 ? 0.0 : tau / pi; }
  double var() const {
    return pi == 0.0 ? std::numeric_limits<double>::infinity() : 1.0 / pi;
  }
  Message operator*(const Message& o) const { return {pi + o.pi, tau + o.tau}; }
  Message operator/(const Message& o) const { return {pi - o.pi, tau - o.tau}; }
};

// Relative change, so that rounding noise in large precisions cannot keep
// the schedule from settling.
double message_delta(const Message& a, const Message& b) {
  const double pi_delta = std::abs(a.pi - b.pi) / (1.0 + std::abs(b.pi));
  if (std::isinf(pi_delta) || std::isnan(pi_delta)) return 0.0;
  return std::max(std::abs(a.tau - b.tau) / (1.0 + std::abs(b.tau)), pi_delta);
}

// Chain of n performance variables sorted by finishing place with one
// difference factor (and its win truncation) per adjacent pair.
class ChainGraph {
 public:
  ChainGraph(std::vector<Message> likelihood, double draw_margin)
      : lik_(std::move(likelihood)),
        margin_(draw_margin),
        to_left_(lik_.size() - 1),
        to_right_(lik_.size() - 1),
        down_(lik_.size() - 1),
        trunc_(lik_.size() - 1) {}

  void run() {
    const std::size_t pairs = lik_.size() - 1;
    for (int sweep = 0; sweep < kMaxSweeps; ++sweep) {
      double delta = 0.0;
      if (pairs == 1) {
        send_down(0);
        delta = truncate(0);
      } else {
        for (std::size_t j = 0; j + 1 < pairs; ++j) {
          send_down(j);
          delta = std::max(delta, truncate(j));
          send_up_right(j);
        }
        for (std::size_t j = pairs - 1; j >= 1; --j) {
          send_down(j);
          delta = std::max(delta, truncate(j));
          send_up_left(j);
        }
      }
      if (delta <= kMinDelta) break;
    }
    send_up_left(0);
    send_up_right(pairs - 1);
  }

  // Product of the difference-factor messages reaching performance i.
  Message evidence(std::size_t i) const {
    Message m;
    if (i > 0) m = m * to_right_[i - 1];
    if (i + 1 < lik_.size()) m = m * to_left_[i];
    return m;
  }

 private:
  Message left_cavity(std::size_t j) const {
    return j > 0 ? lik_[j] * to_right_[j - 1] : lik_[j];
  }
  Message right_cavity(std::size_t j) const {
    return j + 1 < to_left_.size() ? lik_[j + 1] * to_left_[j + 1]
                                   : lik_[j + 1];
  }

  void send_down(std::size_t j) {
    const Message a = left_cavity(j);
    const Message b = right_cavity(j);
    down_[j] = Message::from_mean_var(a.mean() - b.mean(), a.var() + b.var());
  }

  double truncate(std::size_t j) {
    const Message& c = down_[j];
    const double sqrt_pi = std::sqrt(c.pi);
    const double t = c.tau / sqrt_pi - margin_ * sqrt_pi;
    const double v = v_exceeds(t);
    const double w = w_exceeds(t);
    const double denom = std::max(1.0 - w, std::numeric_limits<double>::epsilon());
    const Message updated{c.pi / denom, (c.tau + sqrt_pi * v) / denom};
    const Message previous = c * trunc_[j];
    trunc_[j] = updated / c;
    return message_delta(previous, updated);
  }

  void send_up_left(std::size_t j) {
    const Message& d = trunc_[j];
    const Message b = right_cavity(j);
    to_left_[j] = Message::from_mean_var(d.mean() + b.mean(), d.var() + b.var());
  }

  void send_up_right(std::size_t j) {
    const Message& d = trunc_[j];
    const Message a = left_cavity(j);
    to_right_[j] = Message::from_mean_var(a.mean() - d.mean(), a.var() + d.var());
  }

  std::vector<Message> lik_;
  double margin_;
  std::vector<Message> to_left_;
  std::vector<Message> to_right_;
  std::vector<Message> down_;
  std::vector<Message> trunc_;
};

}  // namespace

void Environment::validate() const {
  if (!(beta > 0.0) || !std::isfinite(beta)) {
    throw ConfigError("environment: beta must be positive and finite");
  }
  if (!(dynamics >= 0.0) || !std::isfinite(dynamics)) {
    throw ConfigError("environment: dynamics must be non-negative");
  }
  if (!(draw_probability >= 0.0 && draw_probability < 1.0)) {
    throw ConfigError("environment: draw_probability must lie in [0, 1)");
  }
}

double Environment::draw_margin() const {
  if (draw_probability == 0.0) return 0.0;
  return normal_ppf((draw_probability + 1.0) / 2.0) * std::sqrt(2.0) * beta;
}

void GameOutcome::validate() const {
  const std::size_t n = participants.size();
  if (n < 2) throw InvalidOutcomeError("a game needs at least 2 participants");
  if (ranks.size() != n) {
    throw InvalidOutcomeError("ranks and participants differ in length");
  }
  std::unordered_set<std::string> ids;
  for (const auto& p : participants) {
    if (!ids.insert(p.id).second) {
      throw InvalidOutcomeError("duplicate participant id: " + p.id);
    }
    if (!(p.rating.sigma > 0.0) || !std::isfinite(p.rating.sigma) ||
        !std::isfinite(p.rating.mu)) {
      throw InvalidOutcomeError("participant " + p.id + " has an invalid rating");
    }
  }
  std::vector<bool> seen(n, false);
  for (int r : ranks) {
    if (r < 0 || static_cast<std::size_t>(r) >= n || seen[r]) {
      throw InvalidOutcomeError("ranks must be a permutation of 0..n-1");
    }
    seen[r] = true;
  }
}

double v_exceeds(double t) {
  if (t < kTailCutoff) return -t + tail_gap(-t);
  return normal_pdf(t) / normal_cdf(t);
}

double w_exceeds(double t) {
  if (t < kTailCutoff) {
    const double gap = tail_gap(-t);
    return (-t + gap) * gap;
  }
  const double v = v_exceeds(t);
  return v * (v + t);
}

std::vector<Rating> rate(const GameOutcome& outcome, const Environment& env) {
  outcome.validate();
  env.validate();
  const std::size_t n = outcome.participants.size();

  std::vector<std::size_t> by_place(n);
  for (std::size_t i = 0; i < n; ++i) by_place[outcome.ranks[i]] = i;

  const double beta2 = env.beta * env.beta;
  const double drift2 = env.dynamics * env.dynamics;
  std::vector<Message> prior(n);
  std::vector<Message> likelihood(n);
  for (std::size_t p = 0; p < n; ++p) {
    const Rating& r = outcome.participants[by_place[p]].rating;
    const double var = r.sigma * r.sigma + drift2;
    prior[p] = Message::from_mean_var(r.mu, var);
    likelihood[p] = Message::from_mean_var(r.mu, var + beta2);
  }

  ChainGraph graph(likelihood, env.draw_margin());
  graph.run();

  std::vector<Rating> posterior(n);
  for (std::size_t p = 0; p < n; ++p) {
    // Performance -> skill through the beta^2 noise of the likelihood factor.
    const Message m = graph.evidence(p);
    const double a = 1.0 / (1.0 + beta2 * m.pi);
    const Message post = prior[p] * Message{a * m.pi, a * m.tau};
    const double var = std::max(1.0 / post.pi, kMinVariance);
    posterior[by_place[p]] = Rating{post.tau / post.pi, std::sqrt(var)};
  }
  return posterior;
}

GameOutcome transform_outcome(std::span<const Participant> batch,
                              std::span<const std::string> reranked) {
  if (reranked.size() != batch.size()) {
    throw ContractError("reranked ordering has " +
                        std::to_string(reranked.size()) + " ids, batch has " +
                        std::to_string(batch.size()));
  }
  std::unordered_map<std::string, int> place;
  for (std::size_t i = 0; i < reranked.size(); ++i) {
    if (!place.emplace(reranked[i], static_cast<int>(i)).second) {
      throw ContractError("reranked ordering repeats id " + reranked[i]);
    }
  }
  GameOutcome outcome;
  outcome.participants.assign(batch.begin(), batch.end());
  outcome.ranks.reserve(batch.size());
  for (const auto& p : batch) {
    auto it = place.find(p.id);
    if (it == place.end()) {
      throw ContractError("reranked ordering is missing id " + p.id);
    }
    outcome.ranks.push_back(it->second);
  }
  return outcome;
}

}  // namespace acurank
