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

#ifndef ACURANK_TRACE_H_
#define ACURANK_TRACE_H_

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "acurank/engine.h"

namespace acurank {

// One JSON-lines record per (query, method).
struct TraceRecord {
  std::string dataset;
  std::string method;
  std::string query_id;
  RunTrace trace;
  std::optional<double> ndcg;  // NDCG@10 when qrels were available
  std::optional<double> wig;
  std::optional<double> temperature;  // simulated reranker noise
};

std::string to_json_line(const TraceRecord& record);
TraceRecord trace_from_json_line(const std::string& line);

void write_traces(std::ostream& out, const std::vector<TraceRecord>& records);
// Throws ParseError naming the offending line.
std::vector<TraceRecord> read_traces(std::istream& in);
std::vector<TraceRecord> load_traces(const std::filesystem::path& path);

}  // namespace acurank

#endif  // ACURANK_TRACE_H_
