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

#ifndef ACURANK_RERANKER_H_
#define ACURANK_RERANKER_H_

#include <chrono>
#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace acurank {

struct Passage {
  std::string doc_id;
  std::optional<std::string> title;
  std::string text;
  // Simulation only; never shown to real backends.
  std::optional<int> true_relevance;
};

// An ordered batch of passages for one listwise call.
struct RerankRequest {
  std::string query;
  std::vector<Passage> passages;
  int max_tokens_hint = 4096;
  // Per-call stream id chosen by the caller; simulated backends mix it into
  // their seed so repeated calls on the same batch draw fresh noise.
  std::uint64_t call_seed = 0;

  // Throws ConfigError unless 2 <= |passages| <= m_max with unique,
  // non-empty ids.
  void validate(std::size_t m_max = 20) const;
};

struct RerankResult {
  std::vector<std::string> ordering;  // most relevant first
  bool repaired = false;
  std::optional<std::string> raw_response;
};

// g(D'): one listwise reranker. Implementations must tolerate concurrent
// calls.
class Reranker {
 public:
  virtual ~Reranker() = default;
  virtual RerankResult rerank(const RerankRequest& request) const = 0;
  virtual std::string name() const = 0;
};

// Sorts by true_relevance descending, ties by input position.
// Throws ConfigError if any passage lacks true_relevance.
RerankResult rerank_oracle(const RerankRequest& request);

// Samples an ordering from a Plackett-Luce model with weights
// exp(true_relevance / temperature). Throws ConfigError on
// temperature <= 0 or missing true_relevance.
RerankResult rerank_noisy(const RerankRequest& request, double temperature,
                          std::uint64_t seed);

// Turns a parsed list of 1-based indices into a permutation of 1..n: keeps
// the first occurrence of each in-range index, then appends the missing
// ones in ascending order.
std::vector<int> repair_permutation(std::span<const int> parsed, int n);

struct ParsedRanking {
  std::vector<int> indices;      // permutation of 1..n
  std::size_t extracted = 0;     // bracketed indices found in the text
  bool repaired = false;
};

// Parses "[i] > [j] > ..." reranker output. Total: always yields a
// permutation. `repaired` is false only when the trimmed text is exactly a
// well-formed ranking over all n identifiers.
ParsedRanking parse_ranking(std::string_view response, int n);

struct PromptOptions {
  // Passage text is cut to this many whitespace-separated words.
  int max_words_per_passage = 300;
};

struct ChatMessage {
  std::string role;
  std::string content;
};

inline constexpr std::string_view kRankLlmSystemPrompt =
    "You are RankLLM, an intelligent assistant that can rank passages based "
    "on their relevancy to the query.";

// System + user messages of the listwise ranking prompt.
std::vector<ChatMessage> build_prompt(const RerankRequest& request,
                                      const PromptOptions& options = {});

class OracleReranker final : public Reranker {
 public:
  RerankResult rerank(const RerankRequest& request) const override;
  std::string name() const override { return "oracle"; }
};

class NoisyReranker final : public Reranker {
 public:
  NoisyReranker(double temperature, std::uint64_t seed);
  RerankResult rerank(const RerankRequest& request) const override;
  std::string name() const override { return "noisy"; }
  double temperature() const { return temperature_; }

 private:
  double temperature_;
  std::uint64_t seed_;
};

struct HttpRerankerConfig {
  // Full URL of a chat-completions endpoint, e.g.
  // http://localhost:8000/v1/chat/completions
  std::string endpoint;
  std::string model;
  std::chrono::milliseconds timeout{60000};
  // Name of the environment variable holding the API key. The key is sent as
  // a bearer token when the variable is set.
  std::string api_key_env = "OPENAI_API_KEY";
  bool require_api_key = false;
  int max_retries = 2;
  std::chrono::milliseconds backoff{500};
  int max_concurrency = 4;
  PromptOptions prompt;
};

// Client for a chat-completions style HTTP endpoint.
class HttpReranker final : public Reranker {
 public:
  explicit HttpReranker(HttpRerankerConfig config);
  ~HttpReranker() override;
  RerankResult rerank(const RerankRequest& request) const override;
  std::string name() const override { return "http"; }

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

// One attempt against the endpoint, no retries. Exposed for tests.
RerankResult rerank_http(const RerankRequest& request,
                         const HttpRerankerConfig& config);

}  // namespace acurank

#endif  // ACURANK_RERANKER_H_
