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

// Lexical BM25 ranking of hunks against bug report text.

#ifndef BUGAUG_RETRIEVAL_H_
#define BUGAUG_RETRIEVAL_H_

#include <cstddef>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "bugaug/metrics.h"
#include "bugaug/types.h"

namespace bugaug {

inline constexpr std::size_t kHunkTokenLimit = 512;
inline constexpr std::size_t kQueryTokenLimit = 256;

// Lowercased, split on whitespace and ASCII punctuation other than '_'.
std::vector<std::string> retrieval_tokens(std::string_view text);

// Text indexed for a hunk: the changeset log message followed by its lines.
struct HunkDocument {
  std::string hunk_id;
  std::string class_name;
  std::string text;
};

HunkDocument hunk_document(const Hunk& hunk, std::string_view log_message);

struct IndexedHunk {
  std::string hunk_id;
  std::string class_name;
  std::map<std::string, std::size_t> term_frequencies;
  std::size_t length = 0;  // sum of term_frequencies
};

struct Bm25Params {
  double k1 = 1.2;
  double b = 0.75;
};

class HunkIndex {
 public:
  HunkIndex() = default;

  // Documents are kept in hunk-id order; duplicate ids throw.
  static HunkIndex build(const std::vector<HunkDocument>& docs,
                         std::size_t token_limit = kHunkTokenLimit);
  static HunkIndex from_indexed(std::vector<IndexedHunk> hunks);

  const std::vector<IndexedHunk>& hunks() const { return hunks_; }
  std::size_t document_frequency(const std::string& term) const;
  double average_length() const { return avg_length_; }
  bool empty() const { return hunks_.empty(); }

  // Robertson-Sparck Jones idf with the +1 inside the log, never negative.
  double idf(const std::string& term) const;
  // Score of one document for a bag of distinct query terms.
  double score(const std::vector<std::string>& query_terms, std::size_t doc,
               const Bm25Params& params = {}) const;

 private:
  void finalize();

  std::vector<IndexedHunk> hunks_;
  std::map<std::string, std::size_t> doc_freq_;
  double avg_length_ = 0.0;
};

// Query is truncated to query_limit tokens; repeated terms count once.
// Descending score, ties by hunk id, at most top_n entries (0 = all).
// Throws std::invalid_argument on an empty index.
Ranking rank(std::string_view bug_report_text, const HunkIndex& index,
             std::size_t top_n, const Bm25Params& params = {},
             std::size_t query_limit = kQueryTokenLimit);

std::string serialize_index(const HunkIndex& index);
HunkIndex parse_index(std::string_view json_text);

}  // namespace bugaug

#endif  // BUGAUG_RETRIEVAL_H_
