// Copyright 2026 The bugaug Authors.
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

#include "bugaug/retrieval.h"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <set>
#include <stdexcept>

#include <nlohmann/json.hpp>

#include "bugaug/extract.h"

namespace bugaug {

std::vector<std::string> retrieval_tokens(std::string_view text) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : text) {
    if (std::isspace(static_cast<unsigned char>(c)) || is_punctuation(c)) {
      if (!cur.empty()) out.push_back(std::move(cur));
      cur.clear();
    } else {
      cur += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    }
  }
  if (!cur.empty()) out.push_back(std::move(cur));
  return out;
}

HunkDocument hunk_document(const Hunk& hunk, std::string_view log_message) {
  HunkDocument doc{hunk.id, hunk.class_name, std::string(log_message)};
  for (const HunkLine& line : hunk.lines) {
    doc.text += '\n';
    doc.text += line.text;
  }
  return doc;
}

HunkIndex HunkIndex::build(const std::vector<HunkDocument>& docs,
                           std::size_t token_limit) {
  std::vector<IndexedHunk> hunks;
  hunks.reserve(docs.size());
  for (const HunkDocument& d : docs) {
    IndexedHunk h{d.hunk_id, d.class_name, {}, 0};
    auto tokens = retrieval_tokens(d.text);
    if (tokens.size() > token_limit) tokens.resize(token_limit);
    for (std::string& t : tokens) ++h.term_frequencies[std::move(t)];
    h.length = tokens.size();
    hunks.push_back(std::move(h));
  }
  return from_indexed(std::move(hunks));
}

HunkIndex HunkIndex::from_indexed(std::vector<IndexedHunk> hunks) {
  HunkIndex index;
  index.hunks_ = std::move(hunks);
  index.finalize();
  return index;
}

void HunkIndex::finalize() {
  std::sort(hunks_.begin(), hunks_.end(),
            [](const IndexedHunk& a, const IndexedHunk& b) { return a.hunk_id < b.hunk_id; });
  std::size_t total = 0;
  for (std::size_t i = 0; i < hunks_.size(); ++i) {
    if (i > 0 && hunks_[i].hunk_id == hunks_[i - 1].hunk_id) {
      throw std::invalid_argument("duplicate hunk '" + hunks_[i].hunk_id + "' in index");
    }
    std::size_t len = 0;
    for (const auto& [term, tf] : hunks_[i].term_frequencies) {
      ++doc_freq_[term];
      len += tf;
    }
    if (len != hunks_[i].length) {
      throw std::invalid_argument("hunk '" + hunks_[i].hunk_id +
                                  "' length disagrees with its term counts");
    }
    total += len;
  }
  avg_length_ = hunks_.empty() ? 0.0
                               : static_cast<double>(total) /
                                     static_cast<double>(hunks_.size());
}

std::size_t HunkIndex::document_frequency(const std::string& term) const {
  auto it = doc_freq_.find(term);
  return it == doc_freq_.end() ? 0 : it->second;
}

double HunkIndex::idf(const std::string& term) const {
  const double n = static_cast<double>(hunks_.size());
  const double df = static_cast<double>(document_frequency(term));
  return std::log(1.0 + (n - df + 0.5) / (df + 0.5));
}

double HunkIndex::score(const std::vector<std::string>& query_terms, std::size_t doc,
                        const Bm25Params& params) const {
  const IndexedHunk& h = hunks_.at(doc);
  // All-empty collections have no length to normalize against.
  const double norm = avg_length_ > 0.0
                          ? static_cast<double>(h.length) / avg_length_
                          : 1.0;
  double s = 0.0;
  for (const std::string& term : query_terms) {
    auto it = h.term_frequencies.find(term);
    if (it == h.term_frequencies.end()) continue;
    const double tf = static_cast<double>(it->second);
    s += idf(term) * tf * (params.k1 + 1.0) /
         (tf + params.k1 * (1.0 - params.b + params.b * norm));
  }
  return s;
}

Ranking rank(std::string_view bug_report_text, const HunkIndex& index,
             std::size_t top_n, const Bm25Params& params, std::size_t query_limit) {
  if (index.empty()) throw std::invalid_argument("cannot rank against an empty index");
  auto tokens = retrieval_tokens(bug_report_text);
  if (tokens.size() > query_limit) tokens.resize(query_limit);
  const std::set<std::string> unique(tokens.begin(), tokens.end());
  const std::vector<std::string> terms(unique.begin(), unique.end());

  Ranking out;
  out.reserve(index.hunks().size());
  for (std::size_t d = 0; d < index.hunks().size(); ++d) {
    out.push_back({index.hunks()[d].hunk_id, index.score(terms, d, params)});
  }
  normalize_ranking(out);
  if (top_n > 0 && out.size() > top_n) out.resize(top_n);
  return out;
}

std::string serialize_index(const HunkIndex& index) {
  nlohmann::json hunks = nlohmann::json::array();
  for (const IndexedHunk& h : index.hunks()) {
    hunks.push_back({{"hunk_id", h.hunk_id},
                     {"class_name", h.class_name},
                     {"length", h.length},
                     {"term_frequencies", h.term_frequencies}});
  }
  nlohmann::json doc{{"format", "bugaug-bm25-index"}, {"version", 1}, {"hunks", hunks}};
  return doc.dump() + "\n";
}

HunkIndex parse_index(std::string_view json_text) {
  const nlohmann::json doc = nlohmann::json::parse(json_text);
  if (doc.value("format", "") != "bugaug-bm25-index") {
    throw std::invalid_argument("not a bugaug index file");
  }
  std::vector<IndexedHunk> hunks;
  for (const nlohmann::json& h : doc.at("hunks")) {
    hunks.push_back({h.at("hunk_id").get<std::string>(),
                     h.at("class_name").get<std::string>(),
                     h.at("term_frequencies").get<std::map<std::string, std::size_t>>(),
                     h.at("length").get<std::size_t>()});
  }
  return HunkIndex::from_indexed(std::move(hunks));
}

}  // namespace bugaug
