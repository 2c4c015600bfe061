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

#include "bugaug/nl_ops.h"

namespace bugaug {
namespace {

std::vector<Token> words(const std::vector<std::string>& ws) {
  std::vector<Token> out;
  for (const auto& w : ws) out.push_back({w, false, 0});
  return out;
}

std::vector<std::string> texts(const std::vector<Token>& tokens) {
  std::vector<std::string> out;
  for (const Token& t : tokens) out.push_back(t.text);
  return out;
}

std::multiset<std::string> bag(const std::vector<Token>& tokens) {
  const auto t = texts(tokens);
  return {t.begin(), t.end()};
}

SubstituteDictionary dict_of(std::initializer_list<std::pair<const char*, std::vector<std::string>>> entries) {
  SubstituteDictionary d;
  for (const auto& [k, v] : entries) d.add(k, v);
  return d;
}

TEST(OpBudget, Examples) {
  EXPECT_EQ(op_budget(30, 0.1, NlOp::kReplace), 3u);
  EXPECT_EQ(op_budget(30, 0.05, NlOp::kDelete), 1u);
  EXPECT_EQ(op_budget(10, 0.05, NlOp::kDelete), 0u);
}

TEST(OpBudget, MinimumOneForShortParagraphs) {
  EXPECT_EQ(op_budget(2, 0.1, NlOp::kInsert), 1u);
  EXPECT_EQ(op_budget(9, 0.1, NlOp::kSwap), 1u);
  EXPECT_EQ(op_budget(1, 0.1, NlOp::kReplace), 0u);
  EXPECT_EQ(op_budget(0, 0.1, NlOp::kSwap), 0u);
  EXPECT_EQ(op_budget(0, 0.05, NlOp::kDelete), 0u);
  EXPECT_EQ(op_budget(20, 0.05, NlOp::kDelete), 1u);
  EXPECT_EQ(op_budget(70, 0.1, NlOp::kReplace), 7u);
}

TEST(AugConfig, Validation) {
  AugConfig c;
  EXPECT_NO_THROW(c.validate());
  c.lambda_swap = 1.5;
  EXPECT_THROW(c.validate(), std::invalid_argument);
  c = AugConfig{};
  c.qc_max_retries = 0;
  EXPECT_THROW(c.validate(), std::invalid_argument);
}

TEST(SubstituteDictionary, CaseInsensitiveAndClean) {
  SubstituteDictionary d;
  d.add("Timeout", {"hang", "HANG", "timeout", "two words", ""});
  ASSERT_NE(d.find("TIMEOUT"), nullptr);
  EXPECT_EQ(*d.find("timeout"), std::vector<std::string>{"hang"});
  d.add("lonely", {"lonely"});
  EXPECT_EQ(d.find("lonely"), nullptr);
}

TEST(SubstituteDictionary, FromPatternsLinksNegativeVerbs) {
  const auto d = SubstituteDictionary::from_patterns(default_pattern_dictionary());
  ASSERT_NE(d.find("blocked"), nullptr);
  const auto& blocked = *d.find("blocked");
  EXPECT_NE(std::find(blocked.begin(), blocked.end(), "dead"), blocked.end());
  EXPECT_NE(std::find(blocked.begin(), blocked.end(), "stopped"), blocked.end());
  ASSERT_NE(d.find("context"), nullptr);
  EXPECT_EQ(d.find("context")->front(), "session");
  EXPECT_EQ(d.find("not"), nullptr);  // negations are never substituted
}

TEST(MatchCase, Patterns) {
  EXPECT_EQ(match_case("hang", "Timeout"), "Hang");
  EXPECT_EQ(match_case("hang", "TIMEOUT"), "HANG");
  EXPECT_EQ(match_case("hang", "timeout"), "hang");
  EXPECT_EQ(match_case("hang", "A"), "Hang");
}

TEST(DictionaryReplace, SingleCandidate) {
  Rng rng(1);
  const auto out = dictionary_replace(words({"does", "not", "timeout"}),
                                      dict_of({{"timeout", {"hang"}}}), 1, rng);
  EXPECT_EQ(texts(out), (std::vector<std::string>{"does", "not", "hang"}));
}

TEST(DictionaryReplace, ContextToSessionIsReachable) {
  const auto d = SubstituteDictionary::from_patterns(default_pattern_dictionary());
  std::set<std::string> seen;
  for (std::uint64_t s = 0; s < 50; ++s) {
    Rng rng(s);
    seen.insert(dictionary_replace(words({"context"}), d, 1, rng)[0].text);
  }
  EXPECT_TRUE(seen.contains("session"));
  EXPECT_FALSE(seen.contains("context"));
}

TEST(DictionaryReplace, ZeroBudgetAndCodeTokens) {
  const auto d = dict_of({{"timeout", {"hang"}}});
  Rng rng(2);
  const auto in = words({"does", "not", "timeout"});
  EXPECT_EQ(dictionary_replace(in, d, 0, rng), in);
  std::vector<Token> code = {{"timeout", true, 0}};
  EXPECT_EQ(dictionary_replace(code, d, 5, rng), code);
}

TEST(DictionaryReplace, FewerCandidatesThanBudgetReplacesAll) {
  Rng rng(3);
  const auto out = dictionary_replace(words({"timeout", "x", "Context"}),
                                      dict_of({{"timeout", {"hang"}}, {"context", {"session"}}}),
                                      9, rng);
  EXPECT_EQ(texts(out), (std::vector<std::string>{"hang", "x", "Session"}));
}

TEST(DictionaryInsert, LengthContract) {
  Rng rng(4);
  const auto in = words({"the", "app", "is", "slow", "today"});
  const auto out = dictionary_insert(in, dict_of({{"app", {"program"}}}), 1, rng);
  ASSERT_EQ(out.size(), 6u);
  auto expected = bag(in);
  expected.insert("program");
  EXPECT_EQ(bag(out), expected);
}

TEST(DictionaryInsert, BlockedGainsDead) {
  Rng rng(5);
  const auto out = dictionary_insert(words({"thread", "blocked", "forever"}),
                                     dict_of({{"blocked", {"dead"}}}), 1, rng);
  EXPECT_TRUE(bag(out).contains("dead"));
  EXPECT_TRUE(bag(out).contains("blocked"));
}

TEST(DictionaryInsert, EmptyDictionaryIsIdentity) {
  Rng rng(6);
  const auto in = words({"a", "b"});
  EXPECT_EQ(dictionary_insert(in, SubstituteDictionary{}, 3, rng), in);
}

TEST(RandomSwap, TableOneSwapIsReachable) {
  const auto in = words({"does", "not", "timeout"});
  std::set<std::vector<std::string>> outputs;
  for (std::uint64_t s = 0; s < 200; ++s) {
    Rng rng(s);
    outputs.insert(texts(random_swap(in, 1, rng)));
  }
  EXPECT_TRUE(outputs.contains(std::vector<std::string>{"does", "timeout", "not"}));
  // One swap of distinct indices: exactly the three transpositions.
  EXPECT_EQ(outputs.size(), 3u);
}

TEST(RandomSwap, SingleTokenAndMultiset) {
  Rng rng(7);
  const auto one = words({"alone"});
  EXPECT_EQ(random_swap(one, 3, rng), one);
  const auto in = words({"a", "b", "c", "d", "e", "f"});
  EXPECT_EQ(bag(random_swap(in, 4, rng)), bag(in));
}

TEST(RandomSwap, CodeAndPunctuationStayPut) {
  std::vector<Token> in = {{"Async", false, 0}, {"AsyncContext", true, 0}, {"hangs", false, 0},
                           {".", false, 0}, {"now", false, 0}};
  for (std::uint64_t s = 0; s < 50; ++s) {
    Rng rng(s);
    const auto out = random_swap(in, 3, rng);
    EXPECT_EQ(out[1], in[1]);
    EXPECT_EQ(out[3], in[3]);
  }
}

TEST(RandomDelete, Contracts) {
  Rng rng(8);
  const auto in = words({"a", "b", "c", "d", "e", "f", "g", "h", "i", "j"});
  EXPECT_EQ(random_delete(in, 0, rng), in);
  const auto out = random_delete(in, 1, rng);
  ASSERT_EQ(out.size(), 9u);
  const auto in_bag = bag(in);
  for (const auto& w : bag(out)) EXPECT_TRUE(in_bag.contains(w));
  std::vector<Token> code = {{"a.b", true, 0}, {"fooBar", true, 0}};
  EXPECT_EQ(random_delete(code, 2, rng), code);
}

TEST(Paraphrasers, IdentityAndShuffle) {
  Rng rng(9);
  IdentityParaphraser id;
  EXPECT_EQ(id.paraphrase("abc", rng), "abc");

  ShuffleParaphraser plain(SubstituteDictionary{}, {});
  EXPECT_EQ(plain.paraphrase("first part, second part.", rng), "second part, first part.");

  const auto d = SubstituteDictionary::from_patterns(default_pattern_dictionary());
  ShuffleParaphraser shuffle(d, {});
  const std::string text = "Calling AsyncContext.complete() hangs, the request never ends.";
  for (std::uint64_t s = 0; s < 20; ++s) {
    Rng r(s);
    const std::string out = shuffle.paraphrase(text, r);
    EXPECT_EQ(paragraph_code_count(out, {}), paragraph_code_count(text, {})) << out;
  }
}

TEST(Paraphrasers, Factory) {
  const SubstituteDictionary d;
  const auto& p = default_pattern_dictionary();
  EXPECT_EQ(make_paraphraser("identity", d, p)->name(), "identity");
  EXPECT_EQ(make_paraphraser("shuffle", d, p)->name(), "shuffle");
  EXPECT_EQ(make_paraphraser("service", d, p, "http://127.0.0.1:9/translate")->name(), "service");
  EXPECT_THROW(make_paraphraser("service", d, p), std::invalid_argument);
  EXPECT_THROW(make_paraphraser("neural", d, p), std::invalid_argument);
}

TEST(Paraphrasers, UnreachableServiceFallsBackToInput) {
  ServiceParaphraser svc("http://127.0.0.1:9/translate", std::chrono::seconds(1));
  Rng rng(10);
  EXPECT_EQ(svc.paraphrase("The server hangs.", rng), "The server hangs.");
  EXPECT_EQ(svc.failures(), 1u);
  EXPECT_THROW(ServiceParaphraser("ftp://x"), std::invalid_argument);
}

Sample ob(const std::string& text, const PatternDictionary& p) {
  return Sample{SampleKind::kOB, detect_code_tokens(tokenize_prose(text), p.identifiers),
                {0, text.size()}};
}

TEST(AugmentParagraph, AcceptedOutputPassesQualityControl) {
  const auto& p = default_pattern_dictionary();
  const auto d = SubstituteDictionary::from_patterns(p);
  IdentityParaphraser id;
  const Sample in = ob("The AsyncContext request does not timeout with the HTTP connector.", p);
  const auto r = augment_paragraph(in, d, p, AugConfig{}, id, 77);
  ASSERT_FALSE(r.rejected());
  const std::string out = render_tokens(r.sample->tokens);
  EXPECT_EQ(category_set(out, p), category_set(render_tokens(in.tokens), p));
  EXPECT_EQ(count_code_tokens(r.sample->tokens), count_code_tokens(in.tokens));
  EXPECT_EQ(r.sample->kind, SampleKind::kOB);
  EXPECT_FALSE(r.applied_ops.empty());
}

TEST(AugmentParagraph, DeterministicUnderSeed) {
  const auto& p = default_pattern_dictionary();
  const auto d = SubstituteDictionary::from_patterns(p);
  IdentityParaphraser id;
  const Sample in = ob("The session is not closed and the connection leaks after the timeout.", p);
  const auto a = augment_paragraph(in, d, p, AugConfig{}, id, 5);
  const auto b = augment_paragraph(in, d, p, AugConfig{}, id, 5);
  ASSERT_FALSE(a.rejected());
  EXPECT_EQ(a.sample, b.sample);
  EXPECT_EQ(a.applied_ops, b.applied_ops);
}

// Drops every OB marker: category check must fail on every attempt.
class MarkerEraser : public Paraphraser {
 public:
  std::string paraphrase(const std::string&, Rng&) override { return "All good here."; }
  std::string name() const override { return "eraser"; }
};

TEST(AugmentParagraph, CategoryLossIsRejected) {
  const auto& p = default_pattern_dictionary();
  MarkerEraser eraser;
  const auto r = augment_paragraph(ob("The server does not respond.", p), SubstituteDictionary{}, p,
                                   AugConfig{}, eraser, 1);
  EXPECT_TRUE(r.rejected());
  EXPECT_EQ(r.attempts, 10);
}

// Replaces "Async" with "TCP" in whatever it is given.
class AsyncToTcp : public Paraphraser {
 public:
  std::string paraphrase(const std::string& text, Rng&) override {
    std::string out = text;
    for (auto at = out.find("Async"); at != std::string::npos; at = out.find("Async")) {
      out.replace(at, 5, "TCP");
    }
    return out;
  }
  std::string name() const override { return "async-to-tcp"; }
};

TEST(AugmentParagraph, LosingACodeTokenIsRejected) {
  PatternDictionary p = default_pattern_dictionary();
  p.identifiers = {"Async"};
  AsyncToTcp paraphraser;
  AugConfig config;
  config.qc_max_retries = 4;
  const auto r = augment_paragraph(ob("Async connector does not timeout with HTTP NIO context.", p),
                                   SubstituteDictionary::from_patterns(p), p, config, paraphraser, 3);
  EXPECT_TRUE(r.rejected());
  EXPECT_EQ(r.attempts, 4);
}

TEST(AugmentParagraph, RejectsNonProse) {
  const auto& p = default_pattern_dictionary();
  IdentityParaphraser id;
  Sample trace{SampleKind::kStackTrace, {{"x", true, 0}}, {}};
  EXPECT_THROW(augment_paragraph(trace, SubstituteDictionary{}, p, AugConfig{}, id, 0),
               std::invalid_argument);
}

TEST(AugmentParagraph, AttemptsUseFreshRandomness) {
  // With one retry the result must equal attempt 0 of a longer budget.
  const auto& p = default_pattern_dictionary();
  const auto d = SubstituteDictionary::from_patterns(p);
  IdentityParaphraser id;
  const Sample in = ob("Saving the file fails when the dialog is closed.", p);
  AugConfig one;
  one.qc_max_retries = 1;
  const auto a = augment_paragraph(in, d, p, one, id, 11);
  const auto b = augment_paragraph(in, d, p, AugConfig{}, id, 11);
  if (!a.rejected()) {
    EXPECT_EQ(a.sample, b.sample);
    EXPECT_EQ(b.attempts, 1);
  }
}

}  // namespace
}  // namespace bugaug
