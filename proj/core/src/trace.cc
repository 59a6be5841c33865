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

#include "acurank/trace.h"

#include <fstream>
#include <ostream>

#include "acurank/error.h"
#include "json.hpp"

namespace acurank {
namespace {

using nlohmann::json;

json iteration_to_json(const IterationRecord& r) {
  json j = {{"selected_count", r.selected_count},
            {"batch_sizes", r.batch_sizes},
            {"threshold", r.threshold},
            {"failed_calls", r.failed_calls}};
  if (r.stop_reason) j["stop_reason"] = *r.stop_reason;
  return j;
}

IterationRecord iteration_from_json(const json& j) {
  IterationRecord r;
  r.selected_count = j.at("selected_count").get<std::size_t>();
  r.batch_sizes = j.at("batch_sizes").get<std::vector<std::size_t>>();
  r.threshold = j.at("threshold").get<double>();
  r.failed_calls = j.value("failed_calls", 0);
  if (j.contains("stop_reason")) r.stop_reason = j["stop_reason"].get<std::string>();
  return r;
}

template <typename T>
void put_optional(json& j, const char* key, const std::optional<T>& value) {
  if (value) j[key] = *value;
}

template <typename T>
std::optional<T> get_optional(const json& j, const char* key) {
  if (!j.contains(key) || j[key].is_null()) return std::nullopt;
  return j[key].get<T>();
}

}  // namespace

std::string to_json_line(const TraceRecord& record) {
  const RunTrace& t = record.trace;
  json per_iteration = json::array();
  for (const auto& r : t.per_iteration) per_iteration.push_back(iteration_to_json(r));
  json j = {{"dataset", record.dataset},
            {"method", record.method},
            {"query_id", record.query_id},
            {"strategy", t.strategy},
            {"calls_made", t.calls_made},
            {"failed_calls", t.failed_calls},
            {"iterations", t.iterations},
            {"stop_reason", t.stop_reason},
            {"per_iteration", per_iteration},
            {"failures", t.failures},
            {"final_ranking", t.final_ranking}};
  put_optional(j, "ndcg@10", record.ndcg);
  put_optional(j, "wig", record.wig);
  put_optional(j, "temperature", record.temperature);
  return j.dump();
}

TraceRecord trace_from_json_line(const std::string& line) {
  const json j = json::parse(line);
  TraceRecord record;
  record.dataset = j.value("dataset", "");
  record.method = j.at("method").get<std::string>();
  record.query_id = j.at("query_id").get<std::string>();
  RunTrace& t = record.trace;
  t.strategy = j.value("strategy", record.method);
  t.calls_made = j.at("calls_made").get<int>();
  t.failed_calls = j.value("failed_calls", 0);
  t.iterations = j.value("iterations", 0);
  t.stop_reason = j.value("stop_reason", "");
  if (j.contains("per_iteration")) {
    for (const auto& r : j["per_iteration"]) t.per_iteration.push_back(iteration_from_json(r));
  }
  if (j.contains("failures")) t.failures = j["failures"].get<std::vector<std::string>>();
  t.final_ranking = j.at("final_ranking").get<std::vector<std::string>>();
  record.ndcg = get_optional<double>(j, "ndcg@10");
  record.wig = get_optional<double>(j, "wig");
  record.temperature = get_optional<double>(j, "temperature");
  return record;
}

void write_traces(std::ostream& out, const std::vector<TraceRecord>& records) {
  for (const auto& r : records) out << to_json_line(r) << '\n';
}

std::vector<TraceRecord> read_traces(std::istream& in) {
  std::vector<TraceRecord> records;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    try {
      records.push_back(trace_from_json_line(line));
    } catch (const json::exception& e) {
      throw ParseError(line_no, e.what());
    }
  }
  return records;
}

std::vector<TraceRecord> load_traces(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open " + path.string());
  return read_traces(in);
}

}  // namespace acurank
