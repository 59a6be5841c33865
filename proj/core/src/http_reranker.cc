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

#include <cstdlib>
#include <limits>
#include <semaphore>
#include <string>
#include <thread>

#include "acurank/error.h"
#include "acurank/reranker.h"
#include "httplib.h"
#include "json.hpp"

namespace acurank {
namespace {

using nlohmann::json;

struct Endpoint {
  std::string origin;  // scheme://host[:port]
  std::string path;
};

Endpoint split_url(const std::string& url) {
  const auto scheme_end = url.find("://");
  if (scheme_end == std::string::npos) {
    throw ConfigError("endpoint must be an absolute http(s) URL: " + url);
  }
  const std::string scheme = url.substr(0, scheme_end);
  if (scheme != "http" && scheme != "https") {
    throw ConfigError("unsupported endpoint scheme: " + scheme);
  }
  const auto path_start = url.find('/', scheme_end + 3);
  if (path_start == std::string::npos) return {url, "/"};
  return {url.substr(0, path_start), url.substr(path_start)};
}

std::string api_key(const HttpRerankerConfig& config) {
  if (config.api_key_env.empty()) return {};
  const char* value = std::getenv(config.api_key_env.c_str());
  return value ? std::string(value) : std::string();
}

std::string extract_text(const std::string& body) {
  const json doc = json::parse(body, nullptr, /*allow_exceptions=*/false);
  if (doc.is_discarded() || !doc.contains("choices") ||
      !doc["choices"].is_array() || doc["choices"].empty()) {
    throw RerankerOutputError("response has no choices", body);
  }
  const json& choice = doc["choices"][0];
  if (choice.contains("message") && choice["message"].contains("content") &&
      choice["message"]["content"].is_string()) {
    return choice["message"]["content"].get<std::string>();
  }
  if (choice.contains("text") && choice["text"].is_string()) {
    return choice["text"].get<std::string>();
  }
  throw RerankerOutputError("first choice carries no text", body);
}

}  // namespace

RerankResult rerank_http(const RerankRequest& request,
                         const HttpRerankerConfig& config) {
  request.validate(std::numeric_limits<std::size_t>::max());
  const Endpoint endpoint = split_url(config.endpoint);

  json messages = json::array();
  for (const auto& m : build_prompt(request, config.prompt)) {
    messages.push_back({{"role", m.role}, {"content", m.content}});
  }
  const json body = {{"model", config.model},
                     {"messages", messages},
                     {"temperature", 0},
                     {"max_tokens", request.max_tokens_hint}};

  httplib::Client client(endpoint.origin);
  const auto seconds = std::chrono::duration_cast<std::chrono::seconds>(config.timeout);
  const auto micros = std::chrono::duration_cast<std::chrono::microseconds>(
      config.timeout - seconds);
  client.set_connection_timeout(seconds.count(), micros.count());
  client.set_read_timeout(seconds.count(), micros.count());
  client.set_write_timeout(seconds.count(), micros.count());

  httplib::Headers headers;
  if (const std::string key = api_key(config); !key.empty()) {
    headers.emplace("Authorization", "Bearer " + key);
  }
  auto response = client.Post(endpoint.path, headers, body.dump(), "application/json");
  if (!response) {
    throw TransportError("request to " + config.endpoint + " failed: " +
                             httplib::to_string(response.error()),
                         0);
  }
  if (response->status < 200 || response->status >= 300) {
    throw TransportError("HTTP " + std::to_string(response->status) + " from " +
                             config.endpoint,
                         response->status);
  }

  const std::string text = extract_text(response->body);
  const int n = static_cast<int>(request.passages.size());
  const ParsedRanking parsed = parse_ranking(text, n);
  if (parsed.extracted == 0) {
    throw RerankerOutputError("no ranking identifiers in reranker output", text);
  }
  RerankResult result;
  result.repaired = parsed.repaired;
  result.raw_response = text;
  for (int idx : parsed.indices) {
    result.ordering.push_back(request.passages[idx - 1].doc_id);
  }
  return result;
}

struct HttpReranker::Impl {
  explicit Impl(HttpRerankerConfig c)
      : config(std::move(c)), slots(std::max(1, config.max_concurrency)) {}
  HttpRerankerConfig config;
  mutable std::counting_semaphore<1024> slots;
};

HttpReranker::HttpReranker(HttpRerankerConfig config) {
  split_url(config.endpoint);
  if (config.model.empty()) throw ConfigError("http reranker: model is required");
  if (config.max_concurrency < 1 || config.max_concurrency > 1024) {
    throw ConfigError("http reranker: max_concurrency must lie in [1, 1024]");
  }
  if (config.max_retries < 0) {
    throw ConfigError("http reranker: max_retries must be non-negative");
  }
  if (config.require_api_key && api_key(config).empty()) {
    throw ConfigError("http reranker: environment variable " +
                      config.api_key_env + " is not set");
  }
  impl_ = std::make_unique<Impl>(std::move(config));
}

HttpReranker::~HttpReranker() = default;

RerankResult HttpReranker::rerank(const RerankRequest& request) const {
  const HttpRerankerConfig& config = impl_->config;
  for (int attempt = 0;; ++attempt) {
    impl_->slots.acquire();
    try {
      RerankResult result = rerank_http(request, config);
      impl_->slots.release();
      return result;
    } catch (const TransportError&) {
      impl_->slots.release();
      if (attempt >= config.max_retries) throw;
    } catch (...) {
      impl_->slots.release();
      throw;
    }
    std::this_thread::sleep_for(config.backoff * (1 << attempt));
  }
}

}  // namespace acurank
