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

#include "acurank/corpus_io.h"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "acurank/error.h"
#include "json.hpp"

namespace acurank {
namespace {

using nlohmann::json;

std::ifstream open_input(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open " + path.string());
  return in;
}

std::vector<std::string_view> split_fields(std::string_view line) {
  std::vector<std::string_view> fields;
  std::size_t pos = 0;
  while (pos < line.size()) {
    while (pos < line.size() && std::isspace(static_cast<unsigned char>(line[pos]))) ++pos;
    if (pos == line.size()) break;
    std::size_t end = pos;
    while (end < line.size() && !std::isspace(static_cast<unsigned char>(line[end]))) ++end;
    fields.push_back(line.substr(pos, end - pos));
    pos = end;
  }
  return fields;
}

template <typename T>
bool parse_number(std::string_view text, T& value) {
  const char* end = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(text.data(), end, value);
  return ec == std::errc() && ptr == end;
}

bool blank(std::string_view line) {
  return std::all_of(line.begin(), line.end(),
                     [](unsigned char c) { return std::isspace(c); });
}

}  // namespace

const Passage* Corpus::find(const std::string& doc_id) const {
  auto it = docs.find(doc_id);
  return it == docs.end() ? nullptr : &it->second;
}

Corpus read_corpus(std::istream& in) {
  Corpus corpus;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (blank(line)) continue;
    const json doc = json::parse(line, nullptr, /*allow_exceptions=*/false);
    if (doc.is_discarded() || !doc.is_object()) {
      throw ParseError(line_no, "not a JSON object");
    }
    if (!doc.contains("docid") || !doc["docid"].is_string()) {
      throw ParseError(line_no, "missing string field 'docid'");
    }
    if (!doc.contains("text") || !doc["text"].is_string()) {
      throw ParseError(line_no, "missing string field 'text'");
    }
    Passage p;
    p.doc_id = doc["docid"].get<std::string>();
    p.text = doc["text"].get<std::string>();
    if (p.doc_id.empty()) throw ParseError(line_no, "empty docid");
    if (p.text.empty()) throw ParseError(line_no, "empty text for " + p.doc_id);
    if (doc.contains("title") && doc["title"].is_string()) {
      p.title = doc["title"].get<std::string>();
    }
    const std::string id = p.doc_id;
    if (!corpus.docs.emplace(id, std::move(p)).second) {
      throw ParseError(line_no, "duplicate docid " + id);
    }
  }
  return corpus;
}

Corpus load_corpus(const std::filesystem::path& path) {
  auto in = open_input(path);
  return read_corpus(in);
}

void write_corpus(std::ostream& out, const Corpus& corpus) {
  for (const auto& [id, p] : corpus.docs) {
    json doc = {{"docid", id}};
    if (p.title) doc["title"] = *p.title;
    doc["text"] = p.text;
    out << doc.dump() << '\n';
  }
}

RunMap read_run(std::istream& in, std::vector<std::string>* warnings) {
  RunMap run;
  std::set<std::pair<std::string, std::string>> seen;
  std::set<std::string> unsorted;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (blank(line)) continue;
    const auto f = split_fields(line);
    if (f.size() != 6) {
      throw ParseError(line_no, "expected 6 fields `qid Q0 docid rank score tag`, got " +
                                    std::to_string(f.size()));
    }
    ScoredDoc doc;
    doc.doc_id = std::string(f[2]);
    if (!parse_number(f[3], doc.rank)) throw ParseError(line_no, "bad rank '" + std::string(f[3]) + "'");
    if (!parse_number(f[4], doc.score) || !std::isfinite(doc.score)) {
      throw ParseError(line_no, "bad score '" + std::string(f[4]) + "'");
    }
    const std::string qid(f[0]);
    if (!seen.emplace(qid, doc.doc_id).second) {
      throw DataError("line " + std::to_string(line_no) + ": duplicate entry (" + qid +
                      ", " + doc.doc_id + ")");
    }
    auto& docs = run[qid];
    if (!docs.empty() && doc.rank < docs.back().rank) unsorted.insert(qid);
    docs.push_back(std::move(doc));
  }
  for (const auto& qid : unsorted) {
    if (warnings) warnings->push_back("query " + qid + ": ranks out of order, re-sorted");
  }
  for (auto& [qid, docs] : run) {
    std::stable_sort(docs.begin(), docs.end(),
                     [](const ScoredDoc& a, const ScoredDoc& b) { return a.rank < b.rank; });
    for (std::size_t i = 1; i < docs.size(); ++i) {
      if (docs[i].rank == docs[i - 1].rank) {
        throw DataError("query " + qid + ": rank " + std::to_string(docs[i].rank) +
                        " used twice");
      }
    }
  }
  return run;
}

RunMap load_run(const std::filesystem::path& path, std::vector<std::string>* warnings) {
  auto in = open_input(path);
  return read_run(in, warnings);
}

void write_run(std::ostream& out, const RunMap& run, const std::string& tag) {
  std::ostringstream buf;
  buf.precision(17);
  for (const auto& [qid, docs] : run) {
    for (const auto& d : docs) {
      buf << qid << " Q0 " << d.doc_id << ' ' << d.rank << ' ' << d.score << ' ' << tag
          << '\n';
    }
  }
  out << buf.str();
}

void write_run(const std::filesystem::path& path, const RunMap& run,
               const std::string& tag) {
  std::ofstream out(path);
  if (!out) throw DataError("cannot write " + path.string());
  write_run(out, run, tag);
}

Qrels read_qrels(std::istream& in) {
  Qrels qrels;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (blank(line)) continue;
    const auto f = split_fields(line);
    if (f.size() != 4) {
      throw ParseError(line_no, "expected 4 fields `qid 0 docid grade`, got " +
                                    std::to_string(f.size()));
    }
    int grade = 0;
    if (!parse_number(f[3], grade)) throw ParseError(line_no, "bad grade '" + std::string(f[3]) + "'");
    // Some collections mark judged-nonrelevant documents with negative grades.
    qrels.judgments[std::string(f[0])][std::string(f[2])] = std::max(grade, 0);
  }
  return qrels;
}

Qrels load_qrels(const std::filesystem::path& path) {
  auto in = open_input(path);
  return read_qrels(in);
}

void write_qrels(std::ostream& out, const Qrels& qrels) {
  for (const auto& [qid, docs] : qrels.judgments) {
    for (const auto& [doc, grade] : docs) out << qid << " 0 " << doc << ' ' << grade << '\n';
  }
}

std::map<std::string, std::string> read_queries(std::istream& in) {
  std::map<std::string, std::string> queries;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (blank(line)) continue;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    const auto tab = line.find('\t');
    if (tab == std::string::npos || tab == 0) {
      throw ParseError(line_no, "expected `qid<TAB>query`");
    }
    queries[line.substr(0, tab)] = line.substr(tab + 1);
  }
  return queries;
}

std::map<std::string, std::string> load_queries(const std::filesystem::path& path) {
  auto in = open_input(path);
  return read_queries(in);
}

void check_referential_integrity(const RunMap& run, const Corpus& corpus) {
  std::set<std::string> missing;
  for (const auto& [qid, docs] : run) {
    for (const auto& d : docs) {
      if (!corpus.find(d.doc_id)) missing.insert(d.doc_id);
    }
  }
  if (missing.empty()) return;
  std::string list;
  for (const auto& id : missing) list += (list.empty() ? "" : ", ") + id;
  throw DataError(std::to_string(missing.size()) + " run doc ids missing from corpus: " + list);
}

std::vector<QueryTask> build_tasks(const RunMap& run, const Corpus& corpus,
                                   const std::map<std::string, std::string>& queries,
                                   std::size_t top_n, const Qrels* qrels) {
  check_referential_integrity(run, corpus);
  std::vector<QueryTask> tasks;
  for (const auto& [qid, docs] : run) {
    auto q = queries.find(qid);
    if (q == queries.end()) throw DataError("no query text for " + qid);
    QueryTask task;
    task.query_id = qid;
    task.query = q->second;
    for (std::size_t i = 0; i < docs.size() && i < top_n; ++i) {
      task.candidates.push_back(Candidate{docs[i].doc_id, docs[i].score});
      Passage p = *corpus.find(docs[i].doc_id);
      if (qrels) p.true_relevance = qrels->grade(qid, p.doc_id);
      task.passages.push_back(std::move(p));
    }
    task.validate();
    tasks.push_back(std::move(task));
  }
  return tasks;
}

}  // namespace acurank
