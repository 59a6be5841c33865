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

#include "cli.h"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <future>
#include <map>
#include <memory>
#include <optional>
#include <ostream>
#include <set>
#include <sstream>

#include "CLI11.hpp"
#include "acurank/config.h"
#include "acurank/corpus_io.h"
#include "acurank/error.h"
#include "acurank/experiment.h"
#include "acurank/metrics.h"
#include "acurank/trace.h"

namespace acurank::cli {
namespace {

namespace fs = std::filesystem;

struct RerankOptions {
  std::string run, corpus, queries, qrels, config, out, trace, dataset;
  std::string method = "acurank";
  std::string variant = "default";
  std::string backend = "oracle";
  std::string endpoint, model, plan;
  int max_calls = 0, k = 10, m = 20, tau = 10, window = 20, stride = 10;
  int passes = 1, tournaments = 1, jobs = 1, top_n = 100;
  double epsilon = 0.01, temperature = 1.0;
  std::uint64_t seed = 0;
  bool human = false;
};

struct SimulateOptions {
  std::vector<std::string> methods = {"acurank", "sliding-window"};
  int n_queries = 200, n_docs = 100, jobs = 1;
  double score_noise = 1.0, temp_min = 0.5, temp_max = 2.0;
  std::uint64_t seed = 0;
  std::string out, trace;
  bool human = false;
};

struct EvaluateOptions {
  std::string run, qrels;
  int k = 10;
  bool human = false;
};

struct CompareOptions {
  std::vector<std::string> traces;
  std::string out;
  bool human = false;
};

// Writes `text` to `path`, or to `out` when the path is empty.
void emit(const std::string& text, const std::string& path, std::ostream& out) {
  if (path.empty()) {
    out << text;
    return;
  }
  std::ofstream file(path);
  if (!file) throw DataError("cannot write " + path);
  file << text;
}

// Aligns comma-separated rows into space-padded columns.
std::string humanize(const std::string& csv) {
  std::vector<std::vector<std::string>> rows;
  std::istringstream in(csv);
  std::string line;
  std::vector<std::size_t> width;
  while (std::getline(in, line)) {
    std::vector<std::string> cells;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) cells.push_back(cell);
    if (width.size() < cells.size()) width.resize(cells.size(), 0);
    for (std::size_t i = 0; i < cells.size(); ++i) width[i] = std::max(width[i], cells[i].size());
    rows.push_back(std::move(cells));
  }
  std::ostringstream out;
  for (const auto& cells : rows) {
    for (std::size_t i = 0; i < cells.size(); ++i) {
      out << cells[i];
      if (i + 1 < cells.size()) out << std::string(width[i] - cells[i].size() + 2, ' ');
    }
    out << '\n';
  }
  return out.str();
}

std::string method_name(const MethodSpec& spec) {
  return spec.budget_label == "-" ? spec.label : spec.label + ":" + spec.budget_label;
}

MethodSpec rerank_method(const RerankOptions& o, const CLI::App& cmd) {
  auto given = [&](const char* name) { return cmd.count(name) > 0; };
  MethodSpec spec;
  spec.method = parse_method(o.method);
  spec.label = std::string(to_string(spec.method));
  spec.budget_label = "-";

  RerankConfig config;
  config.scheduler = SchedulerConfig::variant(o.variant);
  if (!o.config.empty()) config = load_config(o.config, config);
  SchedulerConfig& s = config.scheduler;
  if (given("--k")) s.k = o.k;
  if (given("--m")) s.m = o.m;
  if (given("--epsilon")) s.epsilon = o.epsilon;
  if (given("--tau")) s.tau = o.tau;
  if (given("--max-calls")) s.max_calls = o.max_calls;
  if (given("--seed") || !cmd.count("--config")) s.seed = o.seed;
  s.validate();
  spec.scheduler = s;

  switch (spec.method) {
    case Method::kAcuRank:
      if (o.variant != "default") spec.label += "-" + o.variant;
      if (s.max_calls) spec.budget_label = std::to_string(*s.max_calls);
      break;
    case Method::kSlidingWindow:
      spec.sliding_window = {o.window, o.stride, o.passes};
      spec.sliding_window.validate();
      spec.budget_label = std::to_string(o.passes);
      break;
    case Method::kTourRank:
      spec.tourrank.tournaments = o.tournaments;
      spec.tourrank.seed = s.seed;
      spec.tourrank.max_parallel_calls = s.max_parallel_calls;
      spec.tourrank.validate();
      spec.budget_label = std::to_string(o.tournaments);
      break;
    case Method::kTrueSkillStatic:
      if (!o.plan.empty()) spec.static_plan.c = parse_plan(o.plan);
      spec.static_plan.validate();
      spec.budget_label = parse_method_spec("trueskill-static:" +
                                            (o.plan.empty() ? std::string("5-2-2-1") : o.plan))
                              .budget_label;
      break;
  }
  return spec;
}

std::unique_ptr<Reranker> make_backend(const RerankOptions& o, const RerankConfig& config,
                                       bool have_qrels) {
  if (o.backend == "http") {
    HttpRerankerConfig http = config.http;
    if (!o.endpoint.empty()) http.endpoint = o.endpoint;
    if (!o.model.empty()) http.model = o.model;
    if (http.endpoint.empty()) throw ConfigError("--backend http needs --endpoint");
    return std::make_unique<HttpReranker>(http);
  }
  if (!have_qrels) {
    throw ConfigError("--backend " + o.backend + " simulates judgments and needs --qrels");
  }
  if (o.backend == "oracle") return std::make_unique<OracleReranker>();
  return std::make_unique<NoisyReranker>(o.temperature, o.seed);
}

int cmd_rerank(const RerankOptions& o, const CLI::App& cmd, std::ostream& out,
               std::ostream& err) {
  const MethodSpec spec = rerank_method(o, cmd);
  RerankConfig config;
  if (!o.config.empty()) config = load_config(o.config, {});

  std::vector<std::string> warnings;
  const RunMap run = load_run(o.run, &warnings);
  for (const auto& w : warnings) err << "warning: " << w << '\n';
  const Corpus corpus = load_corpus(o.corpus);
  const auto queries = load_queries(o.queries);
  std::optional<Qrels> qrels;
  if (!o.qrels.empty()) qrels = load_qrels(o.qrels);
  const std::vector<QueryTask> tasks =
      build_tasks(run, corpus, queries, static_cast<std::size_t>(o.top_n),
                  qrels ? &*qrels : nullptr);
  const auto backend = make_backend(o, config, qrels.has_value());

  const std::string dataset =
      o.dataset.empty() ? fs::path(o.run).stem().string() : o.dataset;
  const std::string trace_path = o.trace.empty() ? o.out + ".trace.jsonl" : o.trace;
  std::ofstream run_out(o.out);
  if (!run_out) throw DataError("cannot write " + o.out);
  std::ofstream trace_out(trace_path);
  if (!trace_out) throw DataError("cannot write " + trace_path);

  const std::string name = method_name(spec);
  double ndcg_sum = 0.0;
  double calls_sum = 0.0;
  std::size_t done = 0;
  bool backend_failed = false;
  int failed_calls = 0;
  const std::size_t jobs = static_cast<std::size_t>(std::max(o.jobs, 1));

  // Queries run in chunks of `jobs`; each chunk is flushed in query-id order
  // before the next starts, so completed work survives a later failure.
  for (std::size_t begin = 0; begin < tasks.size() && !backend_failed; begin += jobs) {
    const std::size_t end = std::min(tasks.size(), begin + jobs);
    std::vector<std::future<RerankOutcome>> futures;
    for (std::size_t i = begin; i < end; ++i) {
      futures.push_back(std::async(jobs > 1 ? std::launch::async : std::launch::deferred,
                                   [&, i] { return run_method(spec, tasks[i], *backend); }));
    }
    for (std::size_t i = begin; i < end; ++i) {
      const QueryTask& task = tasks[i];
      RerankOutcome outcome = futures[i - begin].get();
      const RunTrace& trace = outcome.trace;
      TraceRecord record{dataset, name, task.query_id, trace, std::nullopt,
                         retrieval_wig(task), std::nullopt};
      if (o.backend == "noisy") record.temperature = o.temperature;
      if (qrels && qrels->has_query(task.query_id)) {
        record.ndcg = ndcg_at_k(outcome.ranking, *qrels, task.query_id, 10);
        ndcg_sum += *record.ndcg;
      }
      trace_out << to_json_line(record) << '\n';
      RunMap reranked;
      auto& docs = reranked[task.query_id];
      const int n = static_cast<int>(outcome.ranking.size());
      for (int r = 0; r < n; ++r) docs.push_back(ScoredDoc{outcome.ranking[r], double(n - r), r + 1});
      write_run(run_out, reranked, name);
      calls_sum += trace.calls_made;
      ++done;
      failed_calls += trace.failed_calls;
      if (trace.failed_calls > 0) {
        err << "query " << task.query_id << ": " << trace.failed_calls << " of "
            << trace.calls_made << " reranker calls failed";
        if (!trace.failures.empty()) err << " (" << trace.failures.front() << ")";
        err << '\n';
        // A query whose every call failed signals a dead backend; stop here.
        if (trace.failed_calls == trace.calls_made) backend_failed = true;
      }
    }
    run_out.flush();
    trace_out.flush();
  }

  std::ostringstream summary;
  summary << "dataset,method,queries,ndcg@10,avg_calls\n";
  const double mean_calls = done ? calls_sum / done : 0.0;
  summary << dataset << ',' << name << ',' << done << ',';
  if (qrels && done) {
    summary << format_one_decimal(100.0 * ndcg_sum / done);
  } else {
    summary << '-';
  }
  summary << ',' << format_one_decimal(mean_calls) << '\n';
  out << (o.human ? humanize(summary.str()) : summary.str());

  if (backend_failed) {
    err << "backend failure: stopped after " << done << " of " << tasks.size()
        << " queries\n";
    return kExitBackend;
  }
  return failed_calls > 0 ? kExitBackend : kExitOk;
}

int cmd_simulate(const SimulateOptions& o, std::ostream& out) {
  SyntheticSpec spec;
  spec.n_queries = o.n_queries;
  spec.n_docs_per_query = o.n_docs;
  spec.score_noise = o.score_noise;
  spec.temperature_range = {o.temp_min, o.temp_max};
  spec.seed = o.seed;
  const SyntheticDataset data = generate_synthetic(spec);

  std::vector<MethodSpec> methods;
  for (const auto& m : o.methods) methods.push_back(parse_method_spec(m));

  std::vector<SimulationRow> rows;
  std::vector<TraceRecord> records;
  for (const auto& method : methods) {
    const auto results = simulate_method(method, data, o.seed, o.jobs);
    rows.push_back(summarize(method, results));
    if (o.trace.empty()) continue;
    for (const auto& r : results) {
      records.push_back(TraceRecord{"synthetic", method_name(method), r.query_id,
                                    r.outcome.trace, r.ndcg, r.wig, r.temperature});
    }
  }
  if (!o.trace.empty()) {
    std::ofstream trace(o.trace);
    if (!trace) throw DataError("cannot write " + o.trace);
    write_traces(trace, records);
  }
  const std::string csv = simulation_csv(rows);
  emit(o.human ? humanize(csv) : csv, o.out, out);
  return kExitOk;
}

int cmd_evaluate(const EvaluateOptions& o, std::ostream& out, std::ostream& err) {
  std::vector<std::string> warnings;
  const RunMap run = load_run(o.run, &warnings);
  for (const auto& w : warnings) err << "warning: " << w << '\n';
  const Qrels qrels = load_qrels(o.qrels);
  const std::string metric = "ndcg@" + std::to_string(o.k);
  std::ostringstream csv;
  csv << "query_id," << metric << '\n';
  char buf[64];
  double sum = 0.0;
  std::size_t count = 0;
  for (const auto& [qid, docs] : run) {
    if (!qrels.has_query(qid)) {
      err << "warning: query " << qid << " has no judgments, skipped\n";
      continue;
    }
    std::vector<std::string> ranking;
    for (const auto& d : docs) ranking.push_back(d.doc_id);
    const double value = ndcg_at_k(ranking, qrels, qid, o.k);
    std::snprintf(buf, sizeof(buf), "%.4f", value);
    csv << qid << ',' << buf << '\n';
    sum += value;
    ++count;
  }
  if (count == 0) throw EvaluationError("no judged queries in run");
  std::snprintf(buf, sizeof(buf), "%.4f", sum / count);
  csv << "mean," << buf << '\n';
  out << (o.human ? humanize(csv.str()) : csv.str());
  return kExitOk;
}

int cmd_compare(const CompareOptions& o, std::ostream& out) {
  struct Cell {
    double ndcg = 0.0;
    std::size_t judged = 0;
    double calls = 0.0;
    std::size_t queries = 0;
  };
  std::vector<std::string> method_order;
  std::set<std::string> datasets;
  std::map<std::string, std::map<std::string, Cell>> cells;
  for (const auto& path : o.traces) {
    for (const auto& r : load_traces(path)) {
      if (!cells.count(r.method)) method_order.push_back(r.method);
      Cell& c = cells[r.method][r.dataset];
      datasets.insert(r.dataset);
      if (r.ndcg) {
        c.ndcg += *r.ndcg;
        ++c.judged;
      }
      c.calls += r.trace.calls_made;
      ++c.queries;
    }
  }
  std::ostringstream csv;
  csv << "method";
  for (const auto& d : datasets) csv << ',' << d;
  csv << ",avg,calls\n";
  for (const auto& method : method_order) {
    csv << method;
    std::map<std::string, double> means;
    double calls = 0.0;
    std::size_t with_calls = 0;
    for (const auto& d : datasets) {
      auto it = cells[method].find(d);
      if (it == cells[method].end() || it->second.judged == 0) {
        csv << ",-";
      } else {
        const double mean = 100.0 * it->second.ndcg / it->second.judged;
        means[d] = mean;
        csv << ',' << format_one_decimal(mean);
      }
      if (it != cells[method].end()) {
        calls += it->second.calls / it->second.queries;
        ++with_calls;
      }
    }
    csv << ',' << (means.empty() ? "-" : format_one_decimal(macro_average(means)));
    csv << ',' << format_one_decimal(with_calls ? calls / with_calls : 0.0) << '\n';
  }
  const std::string text = o.human ? humanize(csv.str()) : csv.str();
  emit(text, o.out, out);
  return kExitOk;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Adaptive listwise reranking with TrueSkill beliefs", "acurank"};
  app.require_subcommand(1);

  RerankOptions ro;
  auto* rerank = app.add_subcommand("rerank", "Rerank a first-stage TREC run");
  rerank->add_option("--run", ro.run, "First-stage TREC run")->required();
  rerank->add_option("--corpus", ro.corpus, "Corpus JSON lines")->required();
  rerank->add_option("--queries", ro.queries, "Queries TSV (qid<TAB>text)")->required();
  rerank->add_option("--qrels", ro.qrels, "Qrels; enables NDCG and simulated backends");
  rerank->add_option("--out", ro.out, "Output TREC run")->required();
  rerank->add_option("--trace", ro.trace, "Trace JSON lines (default <out>.trace.jsonl)");
  rerank->add_option("--dataset", ro.dataset, "Dataset label (default run file stem)");
  rerank->add_option("--method", ro.method, "acurank, sliding-window, tourrank, trueskill-static");
  rerank->add_option("--variant", ro.variant)->check(CLI::IsMember({"default", "h", "hh"}));
  rerank->add_option("--config", ro.config, "key = value scheduler/http config");
  rerank->add_option("--max-calls", ro.max_calls)->check(CLI::PositiveNumber);
  rerank->add_option("--epsilon", ro.epsilon);
  rerank->add_option("--tau", ro.tau);
  rerank->add_option("--k", ro.k);
  rerank->add_option("--m", ro.m);
  rerank->add_option("--window", ro.window);
  rerank->add_option("--stride", ro.stride);
  rerank->add_option("--passes", ro.passes);
  rerank->add_option("--tournaments", ro.tournaments);
  rerank->add_option("--plan", ro.plan, "TrueSkill-Static batches per stage, e.g. 5-2-2-1");
  rerank->add_option("--top-n", ro.top_n, "Candidates kept per query")->check(CLI::PositiveNumber);
  rerank->add_option("--backend", ro.backend)->check(CLI::IsMember({"oracle", "noisy", "http"}));
  rerank->add_option("--temperature", ro.temperature, "Noisy backend temperature");
  rerank->add_option("--endpoint", ro.endpoint, "Chat-completions URL");
  rerank->add_option("--model", ro.model);
  rerank->add_option("--jobs", ro.jobs)->check(CLI::PositiveNumber);
  rerank->add_option("--seed", ro.seed);
  rerank->add_flag("--human", ro.human, "Aligned table instead of CSV");

  SimulateOptions so;
  auto* simulate = app.add_subcommand("simulate", "Compare methods on synthetic queries");
  simulate->add_option("--methods", so.methods,
                       "name[:budget] list, e.g. acurank acurank:9 sliding-window:2")
      ->delimiter(',');
  simulate->add_option("--n-queries", so.n_queries)->check(CLI::PositiveNumber);
  simulate->add_option("--n-docs", so.n_docs)->check(CLI::Range(2, 100000));
  simulate->add_option("--score-noise", so.score_noise);
  simulate->add_option("--temp-min", so.temp_min);
  simulate->add_option("--temp-max", so.temp_max);
  simulate->add_option("--jobs", so.jobs)->check(CLI::PositiveNumber);
  simulate->add_option("--seed", so.seed);
  simulate->add_option("--out", so.out, "CSV path (default stdout)");
  simulate->add_option("--trace", so.trace, "Per-query trace JSON lines");
  simulate->add_flag("--human", so.human);

  EvaluateOptions eo;
  auto* evaluate = app.add_subcommand("evaluate", "NDCG@k of a TREC run");
  evaluate->add_option("--run", eo.run)->required();
  evaluate->add_option("--qrels", eo.qrels)->required();
  evaluate->add_option("--k", eo.k)->check(CLI::PositiveNumber);
  evaluate->add_flag("--human", eo.human);

  CompareOptions co;
  auto* compare = app.add_subcommand("compare", "Method x dataset NDCG@10 table from traces");
  compare->add_option("traces", co.traces, "Trace JSON lines files")->required();
  compare->add_option("--out", co.out, "CSV path (default stdout)");
  compare->add_flag("--human", co.human);

  std::vector<const char*> argv{"acurank"};
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kExitConfig;
  }

  try {
    if (*rerank) return cmd_rerank(ro, *rerank, out, err);
    if (*simulate) return cmd_simulate(so, out);
    if (*evaluate) return cmd_evaluate(eo, out, err);
    if (*compare) return cmd_compare(co, out);
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const DataError& e) {
    err << "data error: " << e.what() << '\n';
    return kExitData;
  } catch (const EvaluationError& e) {
    err << "evaluation error: " << e.what() << '\n';
    return kExitData;
  } catch (const TransportError& e) {
    err << "backend error: " << e.what() << '\n';
    return kExitBackend;
  } catch (const RerankerOutputError& e) {
    err << "backend error: " << e.what() << '\n';
    return kExitBackend;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitInternal;
  }
  return kExitInternal;
}

}  // namespace acurank::cli
