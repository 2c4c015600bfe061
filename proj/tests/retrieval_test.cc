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

#include <gtest/gtest.h>

#include <map>
#include <sstream>

#include "bugaug/retrieval.h"
#include "oracles.h"

namespace bugaug {
namespace {

const std::vector<std::string> kDocs{
    "async connector timeout nio context",
    "http nio endpoint socket timeout timeout",
    "session manager recycle session",
    "cookie parser header value",
    "async context dispatch request",
    "",
    "pool connection release connection pool pool",
    "nio endpoint poller close socket",
    "request facade header lookup",
    "timeout handler async timeout expire"};

HunkIndex ten_doc_index() {
  std::vector<HunkDocument> docs;
  for (std::size_t i = 0; i < kDocs.size(); ++i) docs.push_back({std::to_string(i), "C", kDocs[i]});
  return HunkIndex::build(docs);
}

std::vector<std::vector<std::string>> doc_tokens() {
  std::vector<std::vector<std::string>> out;
  for (const auto& d : kDocs) {
    std::istringstream in(d);
    std::vector<std::string> t;
    for (std::string w; in >> w;) t.push_back(w);
    out.push_back(t);
  }
  return out;
}

// Nonzero scores frozen from a direct-formula oracle run outside this code base.
TEST(Bm25, FrozenScoresOnTenDocCorpus) {
  const HunkIndex index = ten_doc_index();
  const std::map<std::string, std::map<std::string, double>> expected{
      {"async timeout",
       {{"0", 2.1472649353233706}, {"1", 1.4169982470511973}, {"4", 1.1787760172694672},
        {"9", 2.579254649552777}}},
      {"nio socket timeout timeout",
       {{"0", 2.1472649353233706}, {"1", 3.6780474332067463}, {"7", 2.4627284990931106},
        {"9", 1.5056221818910918}}},
      {"header", {{"3", 1.5251337276543069}, {"8", 1.5251337276543069}}},
      {"zzz", {}}};
  for (const auto& [query, scores] : expected) {
    const Ranking r = rank(query, index, 0);
    ASSERT_EQ(r.size(), 10u);
    for (const RankedItem& item : r) {
      auto it = scores.find(item.hunk_id);
      const double want = it == scores.end() ? 0.0 : it->second;
      EXPECT_NEAR(item.score, want, 1e-12) << query << " / " << item.hunk_id;
    }
  }
}

TEST(Bm25, MatchesInTreeOracle) {
  const HunkIndex index = ten_doc_index();
  const auto docs = doc_tokens();
  for (const std::string q : {"async timeout", "pool pool connection", "nio endpoint close", "session"}) {
    const auto terms = retrieval_tokens(q);
    for (std::size_t d = 0; d < docs.size(); ++d) {
      const std::set<std::string> uniq(terms.begin(), terms.end());
      EXPECT_NEAR(index.score({uniq.begin(), uniq.end()}, d), oracle::bm25(docs, terms, d), 1e-12);
    }
  }
}

TEST(Rank, UniqueClassTokenRanksFirst) {
  std::vector<HunkDocument> docs{{"h1", "A", "common words here"},
                                 {"h2", "NioEndpoint", "common NioEndpoint words"},
                                 {"h3", "B", "more common words"}};
  const Ranking r = rank("Problem in NioEndpoint", HunkIndex::build(docs), 0);
  EXPECT_EQ(r[0].hunk_id, "h2");
  EXPECT_GT(r[0].score, 0.0);
  EXPECT_EQ(r[1].score, 0.0);
}

TEST(Rank, NoSharedTermsGivesIdOrder) {
  std::vector<HunkDocument> docs{{"h3", "", "x"}, {"h1", "", "y"}, {"h2", "", "z"}};
  const Ranking r = rank("nothing matches", HunkIndex::build(docs), 0);
  ASSERT_EQ(r.size(), 3u);
  EXPECT_EQ(r[0].hunk_id, "h1");
  EXPECT_EQ(r[1].hunk_id, "h2");
  EXPECT_EQ(r[2].hunk_id, "h3");
  for (const auto& item : r) EXPECT_EQ(item.score, 0.0);
}

TEST(Rank, TopNAndEmptyIndex) {
  EXPECT_EQ(rank("async", ten_doc_index(), 3).size(), 3u);
  EXPECT_THROW(rank("async", HunkIndex{}, 3), std::invalid_argument);
}

TEST(Rank, QueryTruncatedTo256Tokens) {
  std::vector<HunkDocument> docs{{"h1", "", "needle"}, {"h2", "", "other"}};
  std::string query;
  for (int i = 0; i < 256; ++i) query += "filler ";
  query += "needle";
  const Ranking r = rank(query, HunkIndex::build(docs), 0);
  EXPECT_EQ(r[0].score, 0.0);
  EXPECT_GT(rank(query, HunkIndex::build(docs), 0, {}, 257)[0].score, 0.0);
}

TEST(IndexHunks, TruncatesTo512Tokens) {
  std::string text;
  for (int i = 0; i < 600; ++i) text += "t" + std::to_string(i) + " ";
  const HunkIndex index = HunkIndex::build({{"big", "", text}, {"empty", "", ""}});
  EXPECT_EQ(index.hunks()[0].hunk_id, "big");
  EXPECT_EQ(index.hunks()[0].length, 512u);
  EXPECT_EQ(index.document_frequency("t511"), 1u);
  EXPECT_EQ(index.document_frequency("t512"), 0u);
  EXPECT_EQ(index.hunks()[1].length, 0u);
}

TEST(IndexHunks, LowercasesAndStripsPunctuation) {
  const HunkIndex index = HunkIndex::build({{"h", "", "Foo.barBaz(x_y);"}});
  EXPECT_EQ(index.hunks()[0].term_frequencies,
            (std::map<std::string, std::size_t>{{"barbaz", 1}, {"foo", 1}, {"x_y", 1}}));
}

TEST(IndexHunks, IdempotentAndSerializable) {
  const HunkIndex a = ten_doc_index();
  const HunkIndex b = ten_doc_index();
  EXPECT_EQ(serialize_index(a), serialize_index(b));
  const HunkIndex c = parse_index(serialize_index(a));
  EXPECT_EQ(serialize_index(c), serialize_index(a));
  EXPECT_EQ(rank("async timeout", c, 0), rank("async timeout", a, 0));
  EXPECT_THROW(parse_index(R"({"format": "other"})"), std::invalid_argument);
}

TEST(IndexHunks, RejectsDuplicatesAndBadLengths) {
  EXPECT_THROW(HunkIndex::build({{"h", "", "a"}, {"h", "", "b"}}), std::invalid_argument);
  EXPECT_THROW(HunkIndex::from_indexed({{"h", "", {{"a", 2}}, 3}}), std::invalid_argument);
}

TEST(HunkDocument, LogMessageThenLines) {
  Hunk h;
  h.id = "c1:0";
  h.class_name = "Foo";
  h.lines = {{LineMarker::kContext, "a();"}, {LineMarker::kAdded, "b();"}};
  const HunkDocument d = hunk_document(h, "Fix the thing");
  EXPECT_EQ(d.text, "Fix the thing\na();\nb();");
  EXPECT_EQ(d.hunk_id, "c1:0");
}

TEST(Bm25, ScoresAreNonNegativeAndReproducible) {
  const HunkIndex index = ten_doc_index();
  for (std::size_t d = 0; d < 10; ++d) {
    const double s = index.score({"async", "timeout", "zzz"}, d);
    EXPECT_GE(s, 0.0);
    EXPECT_EQ(s, index.score({"async", "timeout", "zzz"}, d));
  }
  EXPECT_GT(index.idf("zzz"), index.idf("timeout"));
}

}  // namespace
}  // namespace bugaug
