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
#include <string>

#include "acurank/reranker.h"

namespace acurank {
namespace {

std::string truncate_words(const std::string& text, int max_words) {
  std::istringstream in(text);
  std::string word;
  std::string out;
  int count = 0;
  while (in >> word) {
    if (count == max_words) break;
    if (!out.empty()) out += ' ';
    out += word;
    ++count;
  }
  return out;
}

}  // namespace

std::vector<ChatMessage> build_prompt(const RerankRequest& request,
                                      const PromptOptions& options) {
  const std::string n = std::to_string(request.passages.size());
  std::string user;
  user += "I will provide you with " + n +
          " passages, each indicated by a numerical identifier []. Rank the "
          "passages based on their relevance to the search query: " +
          request.query + ".\n\n";
  for (std::size_t i = 0; i < request.passages.size(); ++i) {
    const Passage& p = request.passages[i];
    const std::string content = truncate_words(p.text, options.max_words_per_passage);
    user += "[" + std::to_string(i + 1) + "] ";
    if (p.title && !p.title->empty()) {
      user += "Title: " + *p.title + "\nContent: " + content + "\n";
    } else {
      user += content + "\n";
    }
  }
  user += "\nSearch Query: " + request.query + ".\n";
  user += "Rank the " + n +
          " passages above based on their relevance to the search query. All "
          "the passages should be included and listed using identifiers, in "
          "descending order of relevance. The output format should be [] > [], "
          "e.g., [2] > [1]. Only respond with the ranking results; do not say "
          "any word or explain.";
  return {ChatMessage{"system", std::string(kRankLlmSystemPrompt)},
          ChatMessage{"user", std::move(user)}};
}

}  // namespace acurank
