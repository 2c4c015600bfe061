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

#include <algorithm>
#include <set>
#include <string>
#include <vector>

#include "bugaug/code_ops.h"
#include "bugaug/extract.h"
#include "oracles.h"
#include "test_support.h"

namespace bugaug {
namespace {

std::vector<std::string> texts(const std::vector<Token>& tokens) {
  std::vector<std::string> out;
  for (const Token& t : tokens) out.push_back(t.text);
  return out;
}

std::size_t dist(std::string_view a, std::string_view b) { return levenshtein(a, b); }

// Values from a dynamic-programming oracle run outside this code base.
TEST(Levenshtein, FrozenOracleValues) {
  EXPECT_EQ(dist("word", "word"), 0u);
  EXPECT_EQ(dist("word", "is_word"), 3u);
  EXPECT_EQ(dist("kitten", "sitting"), 3u);
  EXPECT_EQ(dist("", "abc"), 3u);
  EXPECT_EQ(dist("flaw", "lawn"), 2u);
  EXPECT_EQ(dist("getWord", "setWord"), 1u);
  EXPECT_EQ(dist("AsyncContext", "asyncContext"), 1u);
  EXPECT_EQ(dist("NioEndpoint", "Nio2Endpoint"), 1u);
  EXPECT_EQ(dist("word", "get_word"), 4u);
}

TEST(Levenshtein, SymmetricAndZeroIffEqual) {
  const std::vector<std::string> pool{"", "a", "ab", "ba", "abc", "Word", "word", "wordy"};
  for (const auto& a : pool) {
    for (const auto& b : pool) {
      EXPECT_EQ(dist(a, b), dist(b, a));
      EXPECT_EQ(dist(a, b) == 0, a == b);
      EXPECT_EQ(dist(a, b), oracle::levenshtein(a, b));
    }
  }
}

const std::vector<std::string> kWordNames{"is_word", "set_word", "get_word", "words", "sword",
                                          "wordy", "w", "keyword", "password", "other_thing"};

TEST(TopKSubstitutes, FrozenOracleOrder) {
  EXPECT_EQ(top_k_substitutes("word", kWordNames, 5),
            (std::vector<std::string>{"sword", "words", "wordy", "is_word", "keyword"}));
  EXPECT_EQ(top_k_substitutes("word", kWordNames, 100),
            (std::vector<std::string>{"sword", "words", "wordy", "is_word", "keyword", "w",
                                      "get_word", "password", "set_word", "other_thing"}));
}

// The three snake_case neighbours are ordered by distance, not as one tie.
TEST(TopKSubstitutes, SnakeCaseNeighbours) {
  const auto out = top_k_substitutes("word", {"set_word", "get_word", "is_word"}, 20);
  EXPECT_EQ(out, (std::vector<std::string>{"is_word", "get_word", "set_word"}));
}

TEST(TopKSubstitutes, EdgeCases) {
  EXPECT_TRUE(top_k_substitutes("word", {"word"}, 20).empty());
  EXPECT_TRUE(top_k_substitutes("word", {}, 20).empty());
  EXPECT_EQ(top_k_substitutes("ab", {"b", "a", "abc"}, 1), std::vector<std::string>{"a"});
  EXPECT_EQ(top_k_substitutes("x", {"a", "b"}, 0), std::vector<std::string>{});
}

TEST(TopKSubstitutes, MatchesFullSortOracle) {
  Rng rng(99);
  const std::string alphabet = "abcdeXY_";
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<std::string> names;
    const std::size_t n = rng.uniform_between(0, 200);
    for (std::size_t i = 0; i < n; ++i) {
      std::string s;
      for (std::size_t c = rng.uniform_between(1, 7); c > 0; --c) s += alphabet[rng.uniform_index(alphabet.size())];
      names.push_back(s);
    }
    std::sort(names.begin(), names.end());
    names.erase(std::unique(names.begin(), names.end()), names.end());
    const std::string token = names.empty() ? "abc" : names[rng.uniform_index(names.size())];
    const std::size_t k = rng.uniform_between(1, 25);
    ASSERT_EQ(top_k_substitutes(token, names, k), oracle::top_k(token, names, k));
  }
}

TEST(MineMethodNames, AddedAndRemovedLinesOnly) {
  Hunk h;
  h.lines = {{LineMarker::kContext, "ignored(context);"},
             {LineMarker::kAdded, "public class AsyncStateMachine {"},
             {LineMarker::kAdded, "  if (ready()) return doDispatch(req);"},
             {LineMarker::kRemoved, "  synchronized (lock) { asyncStart (ctx); }"}};
  EXPECT_EQ(mine_method_names(h),
            (std::vector<std::string>{"AsyncStateMachine", "asyncStart", "doDispatch", "ready"}));
}

TEST(MineCodeNames, UsesInducingHunksAndClassNames) {
  const Corpus corpus = testing_support::synthetic_corpus({{"Alpha", "Beta"}, {"Gamma"}});
  const auto dict = mine_code_names(corpus, testing_support::bug_name(0));
  EXPECT_EQ(dict.bug_id, "B0000");
  // make_hunk lines read "<Class>.touch();"
  EXPECT_EQ(dict.names, (std::vector<std::string>{"Alpha", "Beta", "touch"}));
}

std::vector<Token> prose_with_code(std::size_t n, std::size_t code_at) {
  std::vector<Token> out;
  for (std::size_t i = 0; i < n; ++i) {
    out.push_back({i == code_at ? "getWord" : "w" + std::to_string(i), i == code_at, 0});
  }
  return out;
}

TEST(CodeTokenReplace, SingleCodeTokenSingleSubstitute) {
  Rng rng(1);
  const auto out = code_token_replace({{"the", false, 0}, {"getWord", true, 0}}, {"setWord"}, 20, rng);
  EXPECT_EQ(texts(out), (std::vector<std::string>{"the", "setWord"}));
  EXPECT_TRUE(out[1].is_code);
}

TEST(CodeTokenReplace, NoCodeOrNoSubstituteIsIdentity) {
  Rng rng(2);
  const std::vector<Token> plain{{"a", false, 0}, {"b", false, 0}};
  EXPECT_EQ(code_token_replace(plain, {"x"}, 20, rng), plain);
  const auto code = prose_with_code(3, 1);
  EXPECT_EQ(code_token_replace(code, {"getWord"}, 20, rng), code);
}

TEST(CodeTokenInsert, PositionWithinRadius) {
  for (std::size_t code_at : {0u, 5u, 9u}) {
    std::set<std::size_t> positions;
    for (std::uint64_t s = 0; s < 400; ++s) {
      Rng rng(s);
      CodeAuditLog audit;
      const auto out = code_token_insert(prose_with_code(10, code_at), {"setWord"}, 20, 3, rng, &audit);
      ASSERT_EQ(out.size(), 11u);
      ASSERT_EQ(audit.size(), 1u);
      positions.insert(audit[0].target);
      EXPECT_EQ(out[audit[0].target].text, "setWord");
      EXPECT_TRUE(out[audit[0].target].is_code);
    }
    const std::size_t lo = code_at >= 3 ? code_at - 3 : 0;
    const std::size_t hi = std::min<std::size_t>(10, code_at + 3);
    EXPECT_EQ(*positions.begin(), lo);
    EXPECT_EQ(*positions.rbegin(), hi);
    EXPECT_EQ(positions.size(), hi - lo + 1);
  }
}

TEST(CodeTokenInsert, EmptyPoolIsIdentity) {
  Rng rng(3);
  const auto in = prose_with_code(4, 2);
  EXPECT_EQ(code_token_insert(in, {}, 20, 3, rng), in);
}

TEST(CodeTokenSwap, OneLineStackTraceUnchanged) {
  Rng rng(4);
  const std::vector<Token> in{{"Foo", true, 0}, {"bar", true, 0}, {"Baz", true, 0}};
  EXPECT_EQ(code_token_swap(in, SwapContext::kStackTrace, 3, rng), in);
}

TEST(CodeTokenSwap, StackTraceSwapsConsecutiveLinesOnly) {
  const std::vector<Token> in{{"A", true, 0}, {"x", false, 0}, {"B", true, 1},
                              {"C", true, 1}, {"D", true, 3}};
  for (std::uint64_t s = 0; s < 200; ++s) {
    Rng rng(s);
    CodeAuditLog audit;
    const auto out = code_token_swap(in, SwapContext::kStackTrace, 3, rng, &audit);
    ASSERT_EQ(audit.size(), 1u);
    const auto& r = audit[0];
    EXPECT_EQ(std::max(r.source_line, r.target_line) - std::min(r.source_line, r.target_line), 1u);
    for (std::size_t i = 0; i < in.size(); ++i) EXPECT_EQ(out[i].line, in[i].line);
  }
}

TEST(CodeTokenSwap, SnippetRadius) {
  // Code tokens at 2, 5 and 6: (2,5) and (5,6) are legal, (2,6) never.
  std::vector<Token> in;
  for (std::size_t i = 0; i < 8; ++i) {
    const bool code = i == 2 || i == 5 || i == 6;
    in.push_back({"t" + std::to_string(i), code, 0});
  }
  std::set<std::pair<std::size_t, std::size_t>> pairs;
  for (std::uint64_t s = 0; s < 200; ++s) {
    Rng rng(s);
    CodeAuditLog audit;
    code_token_swap(in, SwapContext::kSnippet, 3, rng, &audit);
    ASSERT_EQ(audit.size(), 1u);
    pairs.emplace(audit[0].source, audit[0].target);
  }
  EXPECT_EQ(pairs, (std::set<std::pair<std::size_t, std::size_t>>{{2, 5}, {5, 6}}));
}

TEST(AugmentCodeSample, NoCodeTokensUnchanged) {
  Rng rng(5);
  Sample s{SampleKind::kOB, {{"plain", false, 0}, {"words", false, 0}}, {0, 11}};
  EXPECT_EQ(augment_code_sample(s, {"B", {"getWord"}}, CodeOpConfig{}, rng), s);
}

TEST(AugmentCodeSample, TraceGainsNamesFromInducingChangeset) {
  const auto traces = extract_stack_traces(
      "java.lang.IllegalStateException: Calling [asyncComplete()] is not valid\n"
      "\tat org.apache.coyote.AsyncStateMachine.asyncComplete(AsyncStateMachine.java:296)\n"
      "\tat org.apache.coyote.http11.Http11NioProcessor.actionInternal(Http11NioProcessor.java:274)\n"
      "\tat org.apache.coyote.AbstractProcessor.action(AbstractProcessor.java:98)");
  Sample s{SampleKind::kStackTrace, tokenize_stack_trace(traces.traces.at(0)), {}};
  const CodeNameDictionary dict{"55171", {"AsyncStateMachine", "asyncDispatch", "asyncStart",
                                          "Http11AprProcessor", "AbstractEndpoint"}};
  const std::set<std::string> mined(dict.names.begin(), dict.names.end());
  bool gained = false;
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    Rng rng(seed);
    CodeAuditLog audit;
    const Sample out = augment_code_sample(s, dict, CodeOpConfig{}, rng, &audit);
    EXPECT_GE(out.tokens.size(), s.tokens.size());
    const bool inserted = std::any_of(audit.begin(), audit.end(), [](const CodeOpRecord& r) {
      return r.op == CodeOpRecord::Op::kInsert;
    });
    EXPECT_EQ(out.tokens.size(), s.tokens.size() + (inserted ? 1 : 0));
    for (const CodeOpRecord& r : audit) {
      if (r.op != CodeOpRecord::Op::kSwap) {
        EXPECT_TRUE(mined.contains(r.after)) << r.after;
        gained = true;
      }
    }
  }
  EXPECT_TRUE(gained);
}

TEST(AugmentCodeSample, DeterministicUnderSeed) {
  Sample s{SampleKind::kCodeSnippet, tokenize_code_snippet("int getWord() {\n  return setWord(x);\n}"), {}};
  for (Token& t : s.tokens) t.is_code = true;
  const CodeNameDictionary dict{"B", {"getWords", "setWords", "word"}};
  Rng a(12), b(12);
  EXPECT_EQ(augment_code_sample(s, dict, CodeOpConfig{}, a),
            augment_code_sample(s, dict, CodeOpConfig{}, b));
}

TEST(CodeOpConfig, Validation) {
  CodeOpConfig c;
  EXPECT_NO_THROW(c.validate());
  c.top_k = 0;
  EXPECT_THROW(c.validate(), std::invalid_argument);
  c = CodeOpConfig{};
  c.swap_radius = 0;
  EXPECT_THROW(c.validate(), std::invalid_argument);
}

}  // namespace
}  // namespace bugaug
