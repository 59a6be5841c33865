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

#include "acurank/config.h"

#include <charconv>
#include <fstream>
#include <istream>

#include "acurank/error.h"

namespace acurank {
namespace {

std::string trim(std::string_view s) {
  const auto begin = s.find_first_not_of(" \t\r");
  if (begin == std::string_view::npos) return {};
  const auto end = s.find_last_not_of(" \t\r");
  return std::string(s.substr(begin, end - begin + 1));
}

template <typename T>
T parse_value(const std::string& key, const std::string& text) {
  T value{};
  const char* end = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (ec != std::errc() || ptr != end || text.empty()) {
    throw ConfigError("invalid value '" + text + "' for " + key);
  }
  return value;
}

bool parse_bool(const std::string& key, const std::string& text) {
  if (text == "true" || text == "1" || text == "yes") return true;
  if (text == "false" || text == "0" || text == "no") return false;
  throw ConfigError("invalid boolean '" + text + "' for " + key);
}

}  // namespace

StopRule parse_stop_rule(const std::string& text) {
  if (text == "uncertain_count") return StopRule::kUncertainCount;
  if (text == "topk_stability") return StopRule::kTopkStability;
  if (text == "budget_only") return StopRule::kBudgetOnly;
  throw ConfigError("unknown stop_rule '" + text + "'");
}

PartitionRule parse_partition_rule(const std::string& text) {
  if (text == "sequential") return PartitionRule::kSequential;
  if (text == "random") return PartitionRule::kRandom;
  throw ConfigError("unknown partition_rule '" + text + "'");
}

InitRule parse_init_rule(const std::string& text) {
  if (text == "retrieval_scores") return InitRule::kRetrievalScores;
  if (text == "default_trueskill") return InitRule::kDefaultTrueSkill;
  throw ConfigError("unknown init_rule '" + text + "'");
}

std::map<std::string, std::string> parse_key_values(std::istream& in) {
  std::map<std::string, std::string> values;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    if (trim(line).empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw ConfigError("line " + std::to_string(line_no) + ": expected key = value");
    }
    const std::string key = trim(std::string_view(line).substr(0, eq));
    const std::string value = trim(std::string_view(line).substr(eq + 1));
    if (key.empty()) throw ConfigError("line " + std::to_string(line_no) + ": empty key");
    if (!values.emplace(key, value).second) {
      throw ConfigError("line " + std::to_string(line_no) + ": duplicate key " + key);
    }
  }
  return values;
}

RerankConfig config_from_key_values(const std::map<std::string, std::string>& values,
                                    RerankConfig base) {
  SchedulerConfig& s = base.scheduler;
  HttpRerankerConfig& h = base.http;
  for (const auto& [key, value] : values) {
    if (key == "k") {
      s.k = parse_value<int>(key, value);
    } else if (key == "m") {
      s.m = parse_value<int>(key, value);
    } else if (key == "epsilon") {
      s.epsilon = parse_value<double>(key, value);
    } else if (key == "tau") {
      s.tau = parse_value<int>(key, value);
    } else if (key == "max_calls") {
      if (value == "none") {
        s.max_calls.reset();
      } else {
        s.max_calls = parse_value<int>(key, value);
      }
    } else if (key == "max_iterations") {
      s.max_iterations = parse_value<int>(key, value);
    } else if (key == "stop_rule") {
      s.stop_rule = parse_stop_rule(value);
    } else if (key == "stability_window") {
      s.stability_window = parse_value<int>(key, value);
    } else if (key == "partition_rule") {
      s.partition_rule = parse_partition_rule(value);
    } else if (key == "init_rule") {
      s.init_rule = parse_init_rule(value);
    } else if (key == "seed") {
      s.seed = parse_value<std::uint64_t>(key, value);
    } else if (key == "max_parallel_calls") {
      s.max_parallel_calls = parse_value<int>(key, value);
    } else if (key == "endpoint") {
      h.endpoint = value;
    } else if (key == "model") {
      h.model = value;
    } else if (key == "timeout_ms") {
      h.timeout = std::chrono::milliseconds(parse_value<long>(key, value));
    } else if (key == "api_key_env") {
      h.api_key_env = value;
    } else if (key == "require_api_key") {
      h.require_api_key = parse_bool(key, value);
    } else if (key == "max_retries") {
      h.max_retries = parse_value<int>(key, value);
    } else if (key == "backoff_ms") {
      h.backoff = std::chrono::milliseconds(parse_value<long>(key, value));
    } else if (key == "max_concurrency") {
      h.max_concurrency = parse_value<int>(key, value);
    } else if (key == "max_words_per_passage") {
      h.prompt.max_words_per_passage = parse_value<int>(key, value);
    } else {
      throw ConfigError("unknown config key '" + key + "'");
    }
  }
  s.validate();
  if (h.max_retries < 0) throw ConfigError("max_retries must be >= 0");
  if (h.max_concurrency < 1) throw ConfigError("max_concurrency must be >= 1");
  if (h.prompt.max_words_per_passage < 1) {
    throw ConfigError("max_words_per_passage must be >= 1");
  }
  return base;
}

RerankConfig load_config(const std::filesystem::path& path, RerankConfig base) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config " + path.string());
  return config_from_key_values(parse_key_values(in), std::move(base));
}

}  // namespace acurank
