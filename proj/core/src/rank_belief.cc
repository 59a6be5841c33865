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

#include "acurank/rank_belief.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <thread>
#include <unordered_set>

#include "acurank/error.h"
#include "acurank/normal.h"

namespace acurank {
namespace {

constexpr double kBracketWidth = 12.0;
constexpr double kCountTolerance = 1e-7;
constexpr int kMaxBisections = 2000;
constexpr int kChunkSamples = 1024;

}  // namespace

double BeliefState::effective_sigma(std::size_t i) const {
  const double s = ratings[i].sigma;
  return std::sqrt(s * s + env.beta * env.beta);
}

void BeliefState::validate() const {
  const std::size_t n = doc_ids.size();
  if (ratings.size() != n) {
    throw DomainError("belief state: ratings and doc ids differ in length");
  }
  if (k < 1 || static_cast<std::size_t>(k) > n) {
    throw DomainError("belief state: k must lie in [1, n]");
  }
  std::unordered_set<std::string> seen;
  for (const auto& id : doc_ids) {
    if (!seen.insert(id).second) {
      throw DomainError("belief state: duplicate doc id " + id);
    }
  }
}

double exceedance_probability(const BeliefState& state, std::size_t i,
                              double t) {
  return normal_sf((t - state.ratings[i].mu) / state.effective_sigma(i));
}

double expected_exceedances(const BeliefState& state, double t) {
  double total = 0.0;
  for (std::size_t i = 0; i < state.size(); ++i) {
    total += exceedance_probability(state, i, t);
  }
  return total;
}

double solve_threshold(const BeliefState& state, int r) {
  if (state.size() == 0 || r < 1 || static_cast<std::size_t>(r) > state.size()) {
    throw DomainError("solve_threshold: r must lie in [1, n]");
  }
  double min_mu = state.ratings[0].mu;
  double max_mu = min_mu;
  double max_sigma = 0.0;
  for (std::size_t i = 0; i < state.size(); ++i) {
    min_mu = std::min(min_mu, state.ratings[i].mu);
    max_mu = std::max(max_mu, state.ratings[i].mu);
    max_sigma = std::max(max_sigma, state.effective_sigma(i));
  }
  // The expected count decreases in t: it is ~n at lo and ~0 at hi.
  double lo = min_mu - kBracketWidth * max_sigma;
  double hi = max_mu + kBracketWidth * max_sigma;
  double f_lo = expected_exceedances(state, lo) - r;
  double f_hi = expected_exceedances(state, hi) - r;
  for (int i = 0; i < kMaxBisections; ++i) {
    const double mid = lo + 0.5 * (hi - lo);
    if (mid <= lo || mid >= hi) break;
    const double f_mid = expected_exceedances(state, mid) - r;
    if (std::abs(f_mid) <= kCountTolerance) return mid;
    if (f_mid > 0.0) {
      lo = mid;
      f_lo = f_mid;
    } else {
      hi = mid;
      f_hi = f_mid;
    }
  }
  return std::abs(f_lo) <= std::abs(f_hi) ? lo : hi;
}

TopKProbabilities topk_probabilities(const BeliefState& state) {
  state.validate();
  TopKProbabilities out;
  out.threshold = solve_threshold(state, state.k);
  out.s.resize(state.size());
  for (std::size_t i = 0; i < state.size(); ++i) {
    out.s[i] = exceedance_probability(state, i, out.threshold);
  }
  return out;
}

std::vector<double> mc_rank_oracle(const BeliefState& state, int r,
                                   int samples, std::uint64_t seed,
                                   int workers) {
  if (samples < 1000) {
    throw ConfigError("mc_rank_oracle: needs at least 1000 samples");
  }
  state.validate();
  const std::size_t n = state.size();
  if (r < 1 || static_cast<std::size_t>(r) > n) {
    throw DomainError("mc_rank_oracle: r must lie in [1, n]");
  }
  if (workers <= 0) {
    workers = std::max(1u, std::thread::hardware_concurrency());
  }
  const int chunks = (samples + kChunkSamples - 1) / kChunkSamples;
  workers = std::min(workers, chunks);

  std::vector<double> sigma(n);
  for (std::size_t i = 0; i < n; ++i) sigma[i] = state.effective_sigma(i);

  // Integer counts make the reduction independent of the worker split.
  std::vector<std::vector<long long>> counts(workers,
                                             std::vector<long long>(n, 0));
  auto work = [&](int worker) {
    std::vector<double> x(n);
    std::vector<std::size_t> idx(n);
    for (int chunk = worker; chunk < chunks; chunk += workers) {
      std::mt19937_64 rng(mix_seed(seed, static_cast<std::uint64_t>(chunk)));
      std::normal_distribution<double> z(0.0, 1.0);
      const int begin = chunk * kChunkSamples;
      const int end = std::min(samples, begin + kChunkSamples);
      for (int s = begin; s < end; ++s) {
        for (std::size_t i = 0; i < n; ++i) {
          x[i] = state.ratings[i].mu + sigma[i] * z(rng);
        }
        std::iota(idx.begin(), idx.end(), std::size_t{0});
        std::nth_element(idx.begin(), idx.begin() + (r - 1), idx.end(),
                         [&](std::size_t a, std::size_t b) { return x[a] > x[b]; });
        for (int j = 0; j < r; ++j) ++counts[worker][idx[j]];
      }
    }
  };
  if (workers == 1) {
    work(0);
  } else {
    std::vector<std::thread> threads;
    for (int w = 0; w < workers; ++w) threads.emplace_back(work, w);
    for (auto& t : threads) t.join();
  }

  std::vector<double> p(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    long long total = 0;
    for (const auto& c : counts) total += c[i];
    p[i] = static_cast<double>(total) / samples;
  }
  return p;
}

std::vector<std::size_t> select_uncertain(const TopKProbabilities& probs,
                                          double epsilon) {
  if (!(epsilon > 0.0 && epsilon < 0.5)) {
    throw ConfigError("select_uncertain: epsilon must lie in (0, 0.5)");
  }
  std::vector<std::size_t> selected;
  for (std::size_t i = 0; i < probs.s.size(); ++i) {
    if (probs.s[i] > epsilon && probs.s[i] < 1.0 - epsilon) selected.push_back(i);
  }
  return selected;
}

}  // namespace acurank
