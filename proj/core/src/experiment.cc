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

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cstdio>
#include <memory>
#include <sstream>
#include <thread>

#include "acurank/error.h"
#include "acurank/metrics.h"
#include "acurank/normal.h"

namespace acurank {
namespace {

constexpr double kMinPositiveScore = 0.1;

int parse_positive(std::string_view text, std::string_view what) {
  int value = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size() || value < 1) {
    throw ConfigError("invalid " + std::string(what) + " '" + std::string(text) + "'");
  }
  return value;
}

std::string join_plan(const std::vector<int>& plan) {
  std::string out;
  for (int c : plan) out += (out.empty() ? "" : "-") + std::to_string(c);
  return out;
}

}  // namespace

std::string_view to_string(Method method) {
  switch (method) {
    case Method::kAcuRank: return "acurank";
    case Method::kSlidingWindow: return "sliding-window";
    case Method::kTourRank: return "tourrank";
    case Method::kTrueSkillStatic: return "trueskill-static";
  }
  return "?";
}

Method parse_method(std::string_view name) {
  if (name == "acurank") return Method::kAcuRank;
  if (name == "sliding-window" || name == "sw") return Method::kSlidingWindow;
  if (name == "tourrank") return Method::kTourRank;
  if (name == "trueskill-static" || name == "ts") return Method::kTrueSkillStatic;
  throw ConfigError("unknown method '" + std::string(name) +
                    "' (expected acurank, sliding-window, tourrank or trueskill-static)");
}

std::vector<int> parse_plan(std::string_view text) {
  std::vector<int> plan;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t end = text.find_first_of("-,", pos);
    if (end == std::string_view::npos) end = text.size();
    plan.push_back(parse_positive(text.substr(pos, end - pos), "plan entry"));
    pos = end + 1;
  }
  return plan;
}

MethodSpec parse_method_spec(std::string_view text) {
  const auto colon = text.find(':');
  const std::string_view name = text.substr(0, colon);
  const std::optional<std::string_view> budget =
      colon == std::string_view::npos ? std::nullopt
                                      : std::optional(text.substr(colon + 1));
  MethodSpec spec;
  spec.budget_label = "-";
  if (name == "acurank" || name == "acurank-h" || name == "acurank-hh") {
    spec.method = Method::kAcuRank;
    spec.label = std::string(name);
    spec.scheduler = SchedulerConfig::variant(
        name == "acurank" ? "default" : name.substr(std::string_view("acurank-").size()));
    if (budget) {
      spec.scheduler.max_calls = parse_positive(*budget, "call budget");
      spec.budget_label = std::to_string(*spec.scheduler.max_calls);
    }
    return spec;
  }
  spec.method = parse_method(name);
  spec.label = std::string(to_string(spec.method));
  switch (spec.method) {
    case Method::kSlidingWindow:
      if (budget) spec.sliding_window.passes = parse_positive(*budget, "pass count");
      spec.budget_label = std::to_string(spec.sliding_window.passes);
      break;
    case Method::kTourRank:
      if (budget) spec.tourrank.tournaments = parse_positive(*budget, "tournament count");
      spec.budget_label = std::to_string(spec.tourrank.tournaments);
      break;
    case Method::kTrueSkillStatic:
      if (budget) spec.static_plan.c = parse_plan(*budget);
      spec.static_plan.validate();
      spec.budget_label = join_plan(spec.static_plan.c);
      break;
    case Method::kAcuRank:
      break;
  }
  return spec;
}

RerankOutcome run_method(const MethodSpec& spec, const QueryTask& task,
                         const Reranker& backend) {
  switch (spec.method) {
    case Method::kAcuRank:
      return run_acurank(task, spec.scheduler, backend);
    case Method::kSlidingWindow:
      return run_sliding_window(task, spec.sliding_window, backend);
    case Method::kTourRank:
      return run_tourrank(task, spec.tourrank, backend);
    case Method::kTrueSkillStatic:
      return run_trueskill_static(task, spec.static_plan, spec.scheduler, backend);
  }
  throw ConfigError("unknown method");
}

double retrieval_wig(const QueryTask& task, int window_k) {
  if (task.candidates.empty()) return 0.0;
  double min_score = task.candidates.front().retrieval_score;
  for (const auto& c : task.candidates) min_score = std::min(min_score, c.retrieval_score);
  const double shift = min_score <= 0.0 ? kMinPositiveScore - min_score : 0.0;
  std::vector<double> scores;
  scores.reserve(task.candidates.size());
  for (const auto& c : task.candidates) scores.push_back(c.retrieval_score + shift);
  // Short lists use every score in the window.
  return wig(scores, std::min<int>(window_k, static_cast<int>(scores.size())));
}

std::vector<QueryResult> simulate_method(const MethodSpec& spec,
                                         const SyntheticDataset& data,
                                         std::uint64_t seed, int jobs) {
  MethodSpec seeded = spec;
  seeded.scheduler.seed = seed;
  seeded.tourrank.seed = seed;
  std::vector<QueryResult> results(data.tasks.size());
  std::vector<std::exception_ptr> errors(data.tasks.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < data.tasks.size(); i = next++) {
      try {
        const QueryTask& task = data.tasks[i];
        const double temperature = data.temperatures.at(task.query_id);
        std::unique_ptr<Reranker> backend;
        if (temperature > 0.0) {
          backend = std::make_unique<NoisyReranker>(temperature,
                                                    derive_seed(seed, task.query_id));
        } else {
          backend = std::make_unique<OracleReranker>();
        }
        QueryResult& r = results[i];
        r.query_id = task.query_id;
        r.temperature = temperature;
        r.outcome = run_method(seeded, task, *backend);
        r.ndcg = ndcg_at_k(r.outcome.ranking, data.qrels, task.query_id, 10);
        r.wig = retrieval_wig(task);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  const int threads = std::clamp<int>(jobs, 1, static_cast<int>(std::max<std::size_t>(1, data.tasks.size())));
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (int t = 0; t < threads; ++t) pool.emplace_back(worker);
  }
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  return results;
}

SimulationRow summarize(const MethodSpec& spec, const std::vector<QueryResult>& results) {
  SimulationRow row;
  row.method = spec.label;
  row.budget = spec.budget_label;
  if (results.empty()) return row;
  std::vector<double> temperatures, calls;
  for (const auto& r : results) {
    row.mean_ndcg += r.ndcg;
    row.mean_calls += r.outcome.trace.calls_made;
    temperatures.push_back(r.temperature);
    calls.push_back(r.outcome.trace.calls_made);
  }
  row.mean_ndcg /= static_cast<double>(results.size());
  row.mean_calls /= static_cast<double>(results.size());
  if (results.size() >= 4) {
    const auto s = spearman(temperatures, calls);
    row.spearman_temperature_calls = s.rho;
    row.spearman_p = s.p_value;
  }
  return row;
}

std::string simulation_csv(const std::vector<SimulationRow>& rows) {
  std::ostringstream out;
  out << "method,budget,mean_ndcg@10,mean_calls,spearman_temperature_calls,spearman_p\n";
  char buf[256];
  for (const auto& r : rows) {
    std::snprintf(buf, sizeof(buf), "%s,%s,%.6f,%.4f,%.6f,%.6g\n", r.method.c_str(),
                  r.budget.c_str(), r.mean_ndcg, r.mean_calls,
                  r.spearman_temperature_calls, r.spearman_p);
    out << buf;
  }
  return out.str();
}

}  // namespace acurank
