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

#include "acurank/experiment.h"

#include <gtest/gtest.h>

#include "acurank/error.h"

namespace acurank {
namespace {

SyntheticDataset small_suite(std::uint64_t seed, int queries = 20) {
  SyntheticSpec spec;
  spec.n_queries = queries;
  spec.seed = seed;
  return generate_synthetic(spec);
}

TEST(MethodSpecTest, ParsesNamesAndBudgets) {
  auto spec = parse_method_spec("acurank");
  EXPECT_EQ(spec.method, Method::kAcuRank);
  EXPECT_EQ(spec.budget_label, "-");
  EXPECT_FALSE(spec.scheduler.max_calls.has_value());

  spec = parse_method_spec("acurank:9");
  EXPECT_EQ(spec.scheduler.max_calls, 9);
  EXPECT_EQ(spec.budget_label, "9");

  spec = parse_method_spec("acurank-hh");
  EXPECT_DOUBLE_EQ(spec.scheduler.epsilon, 1e-4);
  EXPECT_EQ(spec.scheduler.tau, 5);
  EXPECT_EQ(spec.label, "acurank-hh");

  spec = parse_method_spec("sw:3");
  EXPECT_EQ(spec.method, Method::kSlidingWindow);
  EXPECT_EQ(spec.sliding_window.passes, 3);
  EXPECT_EQ(spec.label, "sliding-window");

  spec = parse_method_spec("tourrank:2");
  EXPECT_EQ(spec.tourrank.tournaments, 2);

  spec = parse_method_spec("trueskill-static:5-2-2-1");
  EXPECT_EQ(spec.static_plan.c, (std::vector<int>{5, 2, 2, 1}));
  EXPECT_EQ(spec.budget_label, "5-2-2-1");
  EXPECT_EQ(parse_method_spec("ts").budget_label, "5-2-2-1");
}

TEST(MethodSpecTest, RejectsBadSpecs) {
  EXPECT_THROW(parse_method_spec("bogus"), ConfigError);
  EXPECT_THROW(parse_method_spec("acurank:0"), ConfigError);
  EXPECT_THROW(parse_method_spec("sw:x"), ConfigError);
  EXPECT_THROW(parse_plan("5--2"), ConfigError);
  EXPECT_EQ(parse_plan("5,2,1"), (std::vector<int>{5, 2, 1}));
}

TEST(SimulateTest, NoiselessSpecIsPerfectForEveryMethod) {
  SyntheticSpec spec;
  spec.n_queries = 10;
  spec.score_noise = 0.0;
  spec.temperature_range = {0.0, 0.0};
  const auto data = generate_synthetic(spec);
  for (const char* m : {"acurank", "acurank:9", "sw", "sw:2", "tourrank", "ts"}) {
    const auto method = parse_method_spec(m);
    const auto row = summarize(method, simulate_method(method, data, 0));
    EXPECT_DOUBLE_EQ(row.mean_ndcg, 1.0) << m;
  }
}

TEST(SimulateTest, FixedSeedGivesIdenticalCsv) {
  const auto data = small_suite(3);
  std::vector<SimulationRow> a, b;
  for (const char* m : {"acurank:9", "sw:2", "tourrank"}) {
    const auto method = parse_method_spec(m);
    a.push_back(summarize(method, simulate_method(method, data, 11, 1)));
    b.push_back(summarize(method, simulate_method(method, data, 11, 3)));
  }
  EXPECT_EQ(simulation_csv(a), simulation_csv(b));
}

TEST(SimulateTest, FixedCallCountsOnHundredDocuments) {
  const auto data = small_suite(4, 5);
  const auto calls = [&](const char* m) {
    const auto method = parse_method_spec(m);
    return summarize(method, simulate_method(method, data, 0)).mean_calls;
  };
  EXPECT_EQ(calls("sw"), 9.0);
  EXPECT_EQ(calls("sw:2"), 18.0);
  EXPECT_EQ(calls("sw:3"), 27.0);
  EXPECT_EQ(calls("tourrank"), 13.0);
  EXPECT_EQ(calls("ts"), 10.0);
  EXPECT_LE(calls("acurank:9"), 9.0);
}

TEST(SimulationCsvTest, Format) {
  SimulationRow row{"acurank", "9", 0.5, 8.75, 0.25, 0.001};
  EXPECT_EQ(simulation_csv({row}),
            "method,budget,mean_ndcg@10,mean_calls,spearman_temperature_calls,spearman_p\n"
            "acurank,9,0.500000,8.7500,0.250000,0.001\n");
}

TEST(RetrievalWigTest, ShiftsAndShortLists) {
  QueryTask task;
  task.query_id = "q";
  for (int i = 0; i < 10; ++i) {
    task.candidates.push_back({"d" + std::to_string(i), 5.0});
    task.passages.push_back({"d" + std::to_string(i), std::nullopt, "t", std::nullopt});
  }
  EXPECT_EQ(retrieval_wig(task), 0.0);
  task.candidates.back().retrieval_score = -1.0;
  EXPECT_GT(retrieval_wig(task, 5), 0.0);
}

}  // namespace
}  // namespace acurank
