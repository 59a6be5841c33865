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

#ifndef ACURANK_CORPUS_IO_H_
#define ACURANK_CORPUS_IO_H_

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "acurank/engine.h"
#include "acurank/metrics.h"
#include "acurank/reranker.h"

namespace acurank {

struct Corpus {
  std::map<std::string, Passage> docs;

  const Passage* find(const std::string& doc_id) const;
};

// JSON lines, one {"docid", "title"?, "text"} object per line.
Corpus load_corpus(const std::filesystem::path& path);
Corpus read_corpus(std::istream& in);
void write_corpus(std::ostream& out, const Corpus& corpus);

struct ScoredDoc {
  std::string doc_id;
  double score = 0.0;
  int rank = 0;
};

// query id -> documents sorted by rank.
using RunMap = std::map<std::string, std::vector<ScoredDoc>>;

// TREC run format `qid Q0 docid rank score tag`. Lines whose ranks are out of
// order are re-sorted; a note is appended to `warnings` when given. Throws
// ParseError for malformed lines and DataError for duplicate (qid, docid).
RunMap load_run(const std::filesystem::path& path,
                std::vector<std::string>* warnings = nullptr);
RunMap read_run(std::istream& in, std::vector<std::string>* warnings = nullptr);

void write_run(std::ostream& out, const RunMap& run, const std::string& tag);
void write_run(const std::filesystem::path& path, const RunMap& run,
               const std::string& tag);

// Qrels format `qid 0 docid grade`.
Qrels load_qrels(const std::filesystem::path& path);
Qrels read_qrels(std::istream& in);
void write_qrels(std::ostream& out, const Qrels& qrels);

// Tab-separated `qid<TAB>query text`.
std::map<std::string, std::string> load_queries(
    const std::filesystem::path& path);
std::map<std::string, std::string> read_queries(std::istream& in);

// Throws DataError listing every run doc id absent from the corpus.
void check_referential_integrity(const RunMap& run, const Corpus& corpus);

// Assembles one task per query in `run`, keeping the top `top_n` documents.
// When `qrels` is given its grades become the passages' true_relevance
// (unjudged = 0) for the simulated backends.
std::vector<QueryTask> build_tasks(const RunMap& run, const Corpus& corpus,
                                   const std::map<std::string, std::string>& queries,
                                   std::size_t top_n,
                                   const Qrels* qrels = nullptr);

struct SyntheticSpec {
  int n_queries = 200;
  int n_docs_per_query = 100;
  std::vector<double> grade_distribution = {0.80, 0.10, 0.06, 0.04};
  double score_noise = 1.0;
  // Reranker temperature per query; 0 means a noiseless reranker.
  std::pair<double, double> temperature_range = {0.5, 2.0};
  std::uint64_t seed = 0;

  void validate() const;
};

struct SyntheticDataset {
  Corpus corpus;
  std::map<std::string, std::string> queries;
  RunMap runs;
  Qrels qrels;
  std::map<std::string, double> temperatures;
  // Tasks with true_relevance filled in, in query-id order.
  std::vector<QueryTask> tasks;
};

// Deterministic for a fixed seed; each query draws from its own stream
// derived from (seed, query id).
SyntheticDataset generate_synthetic(const SyntheticSpec& spec);

}  // namespace acurank

#endif  // ACURANK_CORPUS_IO_H_
