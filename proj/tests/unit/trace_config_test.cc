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

#include <sstream>

#include <gtest/gtest.h>

#include "acurank/config.h"
#include "acurank/error.h"
#include "acurank/trace.h"

namespace acurank {
namespace {

TraceRecord sample_record() {
  TraceRecord record;
  record.dataset = "dl19";
  record.method = "acurank:9";
  record.query_id = "q7";
  RunTrace& t = record.trace;
  t.strategy = "acurank";
  t.calls_made = 3;
  t.failed_calls = 1;
  t.iterations = 2;
  t.stop_reason = "budget";
  IterationRecord first;
  first.selected_count = 45;
  first.batch_sizes = {20, 20};
  first.threshold = 12.25;
  first.failed_calls = 1;
  IterationRecord second;
  second.selected_count = 12;
  second.batch_sizes = {12};
  second.threshold = 13.5;
  second.stop_reason = "budget";
  t.per_iteration = {first, second};
  t.failures = {"HTTP 503"};
  t.final_ranking = {"d2", "d1", "d3"};
  record.ndcg = 0.625;
  record.wig = 0.75;
  return record;
}

TEST(TraceTest, JsonLineRoundTrip) {
  const auto record = sample_record();
  const auto line = to_json_line(record);
  EXPECT_EQ(line.find('\n'), std::string::npos);
  const auto back = trace_from_json_line(line);
  EXPECT_EQ(back.dataset, "dl19");
  EXPECT_EQ(back.method, "acurank:9");
  EXPECT_EQ(back.trace.calls_made, 3);
  EXPECT_EQ(back.trace.failed_calls, 1);
  ASSERT_EQ(back.trace.per_iteration.size(), 2u);
  EXPECT_EQ(back.trace.per_iteration[0].batch_sizes, (std::vector<std::size_t>{20, 20}));
  EXPECT_EQ(back.trace.per_iteration[1].stop_reason, "budget");
  EXPECT_FALSE(back.trace.per_iteration[0].stop_reason.has_value());
  EXPECT_EQ(back.trace.final_ranking, record.trace.final_ranking);
  EXPECT_EQ(back.trace.failures, record.trace.failures);
  EXPECT_EQ(back.ndcg, 0.625);
  EXPECT_EQ(back.wig, 0.75);
  EXPECT_FALSE(back.temperature.has_value());
  EXPECT_EQ(to_json_line(back), line);
}

TEST(TraceTest, StreamRoundTripAndErrors) {
  std::ostringstream out;
  write_traces(out, {sample_record(), sample_record()});
  std::istringstream in(out.str() + "\n");
  EXPECT_EQ(read_traces(in).size(), 2u);

  std::istringstream bad(to_json_line(sample_record()) + "\n{broken\n");
  try {
    read_traces(bad);
    FAIL() << "expected ParseError";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 2u);
  }
  std::istringstream missing("{\"method\": \"x\"}\n");
  EXPECT_THROW(read_traces(missing), ParseError);
}

TEST(ConfigTest, ParsesKeyValuesWithComments) {
  std::istringstream in("# scheduler\nk = 5\n  epsilon=0.0001  # tighter\n\nstop_rule = topk_stability\n");
  const auto values = parse_key_values(in);
  EXPECT_EQ(values.at("k"), "5");
  EXPECT_EQ(values.at("epsilon"), "0.0001");
  EXPECT_EQ(values.at("stop_rule"), "topk_stability");
}

TEST(ConfigTest, MapsOntoSchedulerAndHttpSettings) {
  const auto cfg = config_from_key_values({{"k", "5"},
                                           {"m", "10"},
                                           {"epsilon", "0.0001"},
                                           {"tau", "5"},
                                           {"max_calls", "9"},
                                           {"max_iterations", "50"},
                                           {"stop_rule", "budget_only"},
                                           {"stability_window", "3"},
                                           {"partition_rule", "random"},
                                           {"init_rule", "default_trueskill"},
                                           {"seed", "42"},
                                           {"endpoint", "http://localhost:8000/v1/chat/completions"},
                                           {"model", "zephyr"},
                                           {"timeout_ms", "1500"},
                                           {"max_retries", "3"},
                                           {"max_concurrency", "2"},
                                           {"max_words_per_passage", "100"}});
  const auto& s = cfg.scheduler;
  EXPECT_EQ(s.k, 5);
  EXPECT_EQ(s.m, 10);
  EXPECT_DOUBLE_EQ(s.epsilon, 1e-4);
  EXPECT_EQ(s.tau, 5);
  EXPECT_EQ(s.max_calls, 9);
  EXPECT_EQ(s.max_iterations, 50);
  EXPECT_EQ(s.stop_rule, StopRule::kBudgetOnly);
  EXPECT_EQ(s.stability_window, 3);
  EXPECT_EQ(s.partition_rule, PartitionRule::kRandom);
  EXPECT_EQ(s.init_rule, InitRule::kDefaultTrueSkill);
  EXPECT_EQ(s.seed, 42u);
  EXPECT_EQ(cfg.http.model, "zephyr");
  EXPECT_EQ(cfg.http.timeout.count(), 1500);
  EXPECT_EQ(cfg.http.max_retries, 3);
  EXPECT_EQ(cfg.http.max_concurrency, 2);
  EXPECT_EQ(cfg.http.prompt.max_words_per_passage, 100);
}

TEST(ConfigTest, KeepsBaseValuesForAbsentKeys) {
  RerankConfig base;
  base.scheduler = SchedulerConfig::variant("hh");
  const auto cfg = config_from_key_values({{"k", "20"}}, base);
  EXPECT_EQ(cfg.scheduler.tau, 5);
  EXPECT_EQ(cfg.scheduler.k, 20);
  EXPECT_FALSE(config_from_key_values({{"max_calls", "none"}}).scheduler.max_calls.has_value());
}

TEST(ConfigTest, RejectsBadInput) {
  std::istringstream dup("k = 1\nk = 2\n");
  EXPECT_THROW(parse_key_values(dup), ConfigError);
  std::istringstream no_eq("just words\n");
  EXPECT_THROW(parse_key_values(no_eq), ConfigError);
  EXPECT_THROW(config_from_key_values({{"bogus", "1"}}), ConfigError);
  EXPECT_THROW(config_from_key_values({{"k", "ten"}}), ConfigError);
  EXPECT_THROW(config_from_key_values({{"epsilon", "0.7"}}), ConfigError);
  EXPECT_THROW(config_from_key_values({{"stop_rule", "never"}}), ConfigError);
  EXPECT_THROW(load_config("/nonexistent/acurank.conf"), ConfigError);
}

}  // namespace
}  // namespace acurank
