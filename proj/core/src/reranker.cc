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

#include "acurank/reranker.h"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>
#include <unordered_set>

#include "acurank/error.h"
#include "acurank/normal.h"

namespace acurank {
namespace {

void require_grades(const RerankRequest& request, const char* who) {
  for (const auto& p : request.passages) {
    if (!p.true_relevance) {
      throw ConfigError(std::string(who) + ": passage " + p.doc_id +
                        " has no true_relevance");
    }
  }
}

bool is_space(char c) { return std::isspace(static_cast<unsigned char>(c)); }
bool is_digit(char c) { return c >= '0' && c <= '9'; }

// Reads "[digits]" at `pos`. On success advances `pos` and stores the value
// (saturated to INT_MAX so huge numbers are simply out of range).
bool read_bracketed(std::string_view text, std::size_t& pos, int& value) {
  if (pos >= text.size() || text[pos] != '[') return false;
  std::size_t i = pos + 1;
  long long v = 0;
  std::size_t digits = 0;
  while (i < text.size() && is_digit(text[i])) {
    v = std::min<long long>(v * 10 + (text[i] - '0'),
                            std::numeric_limits<int>::max());
    ++i;
    ++digits;
  }
  if (digits == 0 || i >= text.size() || text[i] != ']') return false;
  value = static_cast<int>(v);
  pos = i + 1;
  return true;
}

void skip_spaces(std::string_view text, std::size_t& pos) {
  while (pos < text.size() && is_space(text[pos])) ++pos;
}

// True when the whole text is "[a] > [b] > ..." with optional whitespace.
bool is_well_formed(std::string_view text) {
  std::size_t pos = 0;
  skip_spaces(text, pos);
  int value = 0;
  if (!read_bracketed(text, pos, value)) return false;
  while (true) {
    skip_spaces(text, pos);
    if (pos == text.size()) return true;
    if (text[pos] != '>') return false;
    ++pos;
    skip_spaces(text, pos);
    if (!read_bracketed(text, pos, value)) return false;
  }
}

}  // namespace

void RerankRequest::validate(std::size_t m_max) const {
  if (passages.size() < 2 || passages.size() > m_max) {
    throw ConfigError("rerank request must hold between 2 and " +
                      std::to_string(m_max) + " passages, got " +
                      std::to_string(passages.size()));
  }
  std::unordered_set<std::string> ids;
  for (const auto& p : passages) {
    if (p.doc_id.empty()) throw ConfigError("rerank request: empty doc id");
    if (!ids.insert(p.doc_id).second) {
      throw ConfigError("rerank request: duplicate doc id " + p.doc_id);
    }
  }
}

RerankResult rerank_oracle(const RerankRequest& request) {
  require_grades(request, "rerank_oracle");
  std::vector<std::size_t> order(request.passages.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return *request.passages[a].true_relevance >
           *request.passages[b].true_relevance;
  });
  RerankResult result;
  for (std::size_t i : order) result.ordering.push_back(request.passages[i].doc_id);
  return result;
}

RerankResult rerank_noisy(const RerankRequest& request, double temperature,
                          std::uint64_t seed) {
  if (!(temperature > 0.0) || !std::isfinite(temperature)) {
    throw ConfigError("rerank_noisy: temperature must be positive");
  }
  require_grades(request, "rerank_noisy");
  // Gumbel-max: sorting log-weights plus i.i.d. Gumbel noise draws a
  // Plackett-Luce permutation without ever forming exp(grade / T).
  std::mt19937_64 rng(seed);
  const std::size_t n = request.passages.size();
  std::vector<double> key(n);
  for (std::size_t i = 0; i < n; ++i) {
    double u = std::generate_canonical<double, 64>(rng);
    u = std::clamp(u, std::numeric_limits<double>::min(), 1.0 - 1e-16);
    key[i] = *request.passages[i].true_relevance / temperature -
             std::log(-std::log(u));
  }
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return key[a] > key[b]; });
  RerankResult result;
  for (std::size_t i : order) result.ordering.push_back(request.passages[i].doc_id);
  return result;
}

std::vector<int> repair_permutation(std::span<const int> parsed, int n) {
  std::vector<bool> used(static_cast<std::size_t>(std::max(n, 0)) + 1, false);
  std::vector<int> out;
  out.reserve(n);
  for (int idx : parsed) {
    if (idx < 1 || idx > n || used[idx]) continue;
    used[idx] = true;
    out.push_back(idx);
  }
  for (int idx = 1; idx <= n; ++idx) {
    if (!used[idx]) out.push_back(idx);
  }
  return out;
}

ParsedRanking parse_ranking(std::string_view response, int n) {
  std::vector<int> found;
  for (std::size_t pos = 0; pos < response.size();) {
    int value = 0;
    std::size_t probe = pos;
    if (read_bracketed(response, probe, value)) {
      found.push_back(value);
      pos = probe;
    } else {
      ++pos;
    }
  }
  ParsedRanking parsed;
  parsed.extracted = found.size();
  parsed.indices = repair_permutation(found, n);
  const bool complete = found.size() == static_cast<std::size_t>(n) &&
                        std::equal(found.begin(), found.end(),
                                   parsed.indices.begin());
  parsed.repaired = !(complete && is_well_formed(response));
  return parsed;
}

RerankResult OracleReranker::rerank(const RerankRequest& request) const {
  return rerank_oracle(request);
}

NoisyReranker::NoisyReranker(double temperature, std::uint64_t seed)
    : temperature_(temperature), seed_(seed) {
  if (!(temperature > 0.0)) {
    throw ConfigError("noisy reranker: temperature must be positive");
  }
}

RerankResult NoisyReranker::rerank(const RerankRequest& request) const {
  return rerank_noisy(request, temperature_, mix_seed(seed_, request.call_seed));
}

}  // namespace acurank
