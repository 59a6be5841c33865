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

#ifndef ACURANK_CONFIG_H_
#define ACURANK_CONFIG_H_

#include <filesystem>
#include <iosfwd>
#include <map>
#include <string>

#include "acurank/engine.h"
#include "acurank/reranker.h"

namespace acurank {

// Plain `key = value` file; '#' starts a comment. Recognised keys:
//
//   scheduler: k, m, epsilon, tau, max_calls (integer or "none"),
//              max_iterations, stop_rule (uncertain_count | topk_stability |
//              budget_only), stability_window, partition_rule (sequential |
//              random), init_rule (retrieval_scores | default_trueskill),
//              seed, max_parallel_calls
//   http:      endpoint, model, timeout_ms, api_key_env, require_api_key,
//              max_retries, backoff_ms, max_concurrency,
//              max_words_per_passage
//
// Unknown keys and malformed values raise ConfigError.
struct RerankConfig {
  SchedulerConfig scheduler;
  HttpRerankerConfig http;
};

std::map<std::string, std::string> parse_key_values(std::istream& in);

RerankConfig config_from_key_values(
    const std::map<std::string, std::string>& values,
    RerankConfig base = {});

RerankConfig load_config(const std::filesystem::path& path,
                         RerankConfig base = {});

StopRule parse_stop_rule(const std::string& text);
PartitionRule parse_partition_rule(const std::string& text);
InitRule parse_init_rule(const std::string& text);

}  // namespace acurank

#endif  // ACURANK_CONFIG_H_
