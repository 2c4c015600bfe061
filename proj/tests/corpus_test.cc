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
#include <set>

#include "bugaug/corpus.h"
#include "test_support.h"

namespace bugaug {
namespace {

using testing_support::synthetic_corpus;

TEST(ParseUnifiedDiff, SingleSection) {
  const auto hunks = parse_unified_diff(
      "--- a/src/Foo.java\n+++ b/src/Foo.java\n@@ -1,2 +1,3 @@\n a\n-b\n+c\n+d\n", "cs1");
  ASSERT_EQ(hunks.size(), 1u);
  EXPECT_EQ(hunks[0].new_len, 3u);
  EXPECT_EQ(hunks[0].old_len, 2u);
  EXPECT_EQ(hunks[0].file_path, "src/Foo.java");
  EXPECT_EQ(hunks[0].class_name, "Foo");
  EXPECT_EQ(hunks[0].id, "cs1:0");
  ASSERT_EQ(hunks[0].lines.size(), 4u);
  EXPECT_EQ(hunks[0].lines[1].marker, LineMarker::kRemoved);
  EXPECT_EQ(hunks[0].lines[2].text, "c");
}

// Hand-built: two files, two sections then one.
TEST(ParseUnifiedDiff, TwoFilesThreeSections) {
  const char* diff =
      "diff --git a/java/org/A.java b/java/org/A.java\n"
      "index 111..222 100644\n"
      "--- a/java/org/A.java\n"
      "+++ b/java/org/A.java\n"
      "@@ -10,2 +10,2 @@ class A {\n"
      " keep();\n"
      "-old();\n"
      "+fresh();\n"
      "@@ -40 +40,2 @@\n"
      " tail();\n"
      "+more();\n"
      "diff --git a/java/org/B.java b/java/org/B.java\n"
      "--- a/java/org/B.java\n"
      "+++ b/java/org/B.java\n"
      "@@ -1,0 +1,1 @@\n"
      "+created();\n";
  const auto hunks = parse_unified_diff(diff, "c9");
  ASSERT_EQ(hunks.size(), 3u);
  EXPECT_EQ(hunks[0].file_path, "java/org/A.java");
  EXPECT_EQ(hunks[1].file_path, "java/org/A.java");
  EXPECT_EQ(hunks[2].file_path, "java/org/B.java");
  EXPECT_EQ(hunks[1].old_len, 1u);  // omitted length means one line
  EXPECT_EQ(hunks[1].new_len, 2u);
  EXPECT_EQ(hunks[2].class_name, "B");
}

TEST(ParseUnifiedDiff, EmptyInput) { EXPECT_TRUE(parse_unified_diff("", "x").empty()); }

TEST(ParseUnifiedDiff, DeletedFileUsesOldPath) {
  const auto hunks =
      parse_unified_diff("--- a/src/Gone.java\n+++ /dev/null\n@@ -1,1 +0,0 @@\n-x\n", "c");
  ASSERT_EQ(hunks.size(), 1u);
  EXPECT_EQ(hunks[0].file_path, "src/Gone.java");
}

TEST(ParseUnifiedDiff, NoNewlineMarkerIsSkipped) {
  const auto hunks = parse_unified_diff(
      "--- a/F.java\n+++ b/F.java\n@@ -1 +1 @@\n-a\n\\ No newline at end of file\n+b\n", "c");
  ASSERT_EQ(hunks.size(), 1u);
  EXPECT_EQ(hunks[0].lines.size(), 2u);
}

TEST(ParseUnifiedDiff, MalformedHeaderReportsLine) {
  try {
    parse_unified_diff("--- a/F.java\n+++ b/F.java\n@@ -x +1 @@\n", "c");
    FAIL() << "expected ParseError";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 3u);
  }
}

TEST(ParseUnifiedDiff, BodyShorterThanHeader) {
  EXPECT_THROW(parse_unified_diff("--- a/F.java\n+++ b/F.java\n@@ -1,3 +1,3 @@\n a\n", "c"),
               ParseError);
}

TEST(ParseUnifiedDiff, UnexpectedLineInsideHunk) {
  EXPECT_THROW(
      parse_unified_diff("--- a/F.java\n+++ b/F.java\n@@ -1,2 +1,2 @@\n a\n?b\n", "c"),
      ParseError);
}

TEST(ParseUnifiedDiff, HunkWithoutFileHeader) {
  EXPECT_THROW(parse_unified_diff("@@ -1 +1 @@\n-a\n+b\n", "c"), ParseError);
}

TEST(ParseUnifiedDiff, SerializeRoundTrip) {
  const char* diff =
      "--- a/p/A.java\n+++ b/p/A.java\n@@ -3,3 +3,4 @@\n x\n-y\n+z\n+w\n q\n"
      "@@ -20,1 +21,0 @@\n-gone\n--- a/p/B.kt\n+++ b/p/B.kt\n@@ -0,0 +1,2 @@\n+a\n+--- b\n";
  const auto once = parse_unified_diff(diff, "r");
  ASSERT_EQ(once.size(), 3u);
  EXPECT_EQ(once[2].lines[1].text, "--- b");
  const auto twice = parse_unified_diff(serialize_unified_diff(once), "r");
  EXPECT_EQ(once, twice);
}

TEST(DeriveClassName, Stems) {
  EXPECT_EQ(derive_class_name("java/org/apache/Foo.java"), "Foo");
  EXPECT_EQ(derive_class_name("Foo.java"), "Foo");
  EXPECT_EQ(derive_class_name("a/b/READ"), "READ");
}

TEST(ParseRfc3339, OffsetsAndFractions) {
  EXPECT_EQ(parse_rfc3339("1970-01-01T00:00:00Z").first, 0);
  EXPECT_EQ(parse_rfc3339("1970-01-01T01:00:00+01:00").first, 0);
  EXPECT_EQ(parse_rfc3339("2020-02-29T12:00:00.5Z").second, 500000000);
  EXPECT_THROW(parse_rfc3339("2021-02-29T00:00:00Z"), ParseError);
  EXPECT_THROW(parse_rfc3339("yesterday"), ParseError);
}

BugReport dated(const std::string& id, const std::string& when,
                BugStatus status = BugStatus::kFixed) {
  BugReport b;
  b.id = id;
  b.summary = "s";
  b.opened_at = when;
  b.status = status;
  return b;
}

TEST(SplitByDate, EvenCount) {
  const auto split = split_by_date({dated("d", "2020-01-04T00:00:00Z"),
                                    dated("a", "2020-01-01T00:00:00Z"),
                                    dated("c", "2020-01-03T00:00:00Z"),
                                    dated("b", "2020-01-02T00:00:00Z")});
  ASSERT_EQ(split.train.size(), 2u);
  EXPECT_EQ(split.train[0].id, "a");
  EXPECT_EQ(split.train[1].id, "b");
  EXPECT_EQ(split.test[0].id, "c");
}

TEST(SplitByDate, OddCountGivesTrainTheCeiling) {
  std::vector<BugReport> bugs;
  for (int i = 0; i < 5; ++i) bugs.push_back(dated("b" + std::to_string(i), "2020-01-0" + std::to_string(i + 1) + "T00:00:00Z"));
  const auto split = split_by_date(bugs);
  EXPECT_EQ(split.train.size(), 3u);
  EXPECT_EQ(split.test.size(), 2u);
}

TEST(SplitByDate, TiesBrokenById) {
  const auto split = split_by_date(
      {dated("b2", "2020-01-01T00:00:00Z"), dated("b1", "2020-01-01T00:00:00Z")});
  ASSERT_EQ(split.train.size(), 1u);
  EXPECT_EQ(split.train[0].id, "b1");
}

TEST(SplitByDate, ComparesInstantsNotStrings) {
  // 23:30 at -02:00 is 01:30Z the next day, after the +00:00 report.
  const auto split = split_by_date({dated("late", "2020-01-01T23:30:00-02:00"),
                                    dated("early", "2020-01-02T01:00:00Z")});
  EXPECT_EQ(split.train[0].id, "early");
}

TEST(SplitByDate, Partitions) {
  std::vector<BugReport> bugs;
  for (int i = 0; i < 9; ++i) bugs.push_back(dated("x" + std::to_string(i), "2021-05-0" + std::to_string(9 - i) + "T00:00:00Z"));
  const auto split = split_by_date(bugs);
  std::set<std::string> ids;
  for (const auto& b : split.train) ids.insert(b.id);
  for (const auto& b : split.test) EXPECT_TRUE(ids.insert(b.id).second);
  EXPECT_EQ(ids.size(), bugs.size());
}

TEST(DropInvalidReports, RemovesWontFixAndNotABug) {
  const auto kept = drop_invalid_reports({dated("a", "2020-01-01T00:00:00Z"),
                                          dated("b", "2020-01-01T00:00:00Z", BugStatus::kWontFix),
                                          dated("c", "2020-01-01T00:00:00Z", BugStatus::kNotABug),
                                          dated("d", "2020-01-01T00:00:00Z", BugStatus::kOther)});
  ASSERT_EQ(kept.size(), 2u);
  EXPECT_EQ(kept[0].id, "a");
  EXPECT_EQ(kept[1].id, "d");
}

TEST(Corpus, RejectsDanglingLinks) {
  std::vector<BugReport> bugs{dated("a", "2020-01-01T00:00:00Z")};
  EXPECT_THROW(Corpus(bugs, {}, {{"a", {"missing"}, {"missing"}}}), std::invalid_argument);
  EXPECT_THROW(Corpus(bugs, {}, {{"zzz", {}, {}}}), std::invalid_argument);
}

TEST(Corpus, RejectsDuplicateIds) {
  EXPECT_THROW(Corpus({dated("a", "2020-01-01T00:00:00Z"), dated("a", "2020-01-01T00:00:00Z")},
                      {}, {}),
               std::invalid_argument);
}

// Inducing hunks in A and B, fix touches only A.
TEST(BuildDOri, OnlyFixedClassesArePositive) {
  std::vector<BugReport> bugs{dated("bug", "2020-01-01T00:00:00Z")};
  Changeset ind{"ind", "", "", "", {testing_support::make_hunk("ind:1", "ind", "A"),
                                    testing_support::make_hunk("ind:2", "ind", "B"),
                                    testing_support::make_hunk("ind:3", "ind", "A")}};
  Changeset fix{"fix", "", "", "", {testing_support::make_hunk("fix:1", "fix", "A")}};
  Changeset other{"other", "", "", "", {testing_support::make_hunk("o:1", "other", "C")}};
  const Corpus corpus(bugs, {ind, fix, other}, {{"bug", {"ind"}, {"fix"}}});
  const Dataset d = build_d_ori(corpus, bugs, 3);
  ASSERT_EQ(d.count(Label::kPositive), 2u);
  EXPECT_EQ(d.count(Label::kNegative), 2u);
  for (const auto& s : d.samples) {
    if (s.label == Label::kPositive) {
      EXPECT_EQ(s.class_name, "A");
    } else {
      EXPECT_EQ(s.hunk_id, "o:1");  // B is inducing
    }
  }
}

TEST(BuildDOri, ExcludesBugsWithoutSurvivingHunks) {
  std::vector<BugReport> bugs{dated("bug", "2020-01-01T00:00:00Z")};
  Changeset ind{"ind", "", "", "", {testing_support::make_hunk("ind:1", "ind", "A")}};
  Changeset fix{"fix", "", "", "", {testing_support::make_hunk("fix:1", "fix", "Z")}};
  const Corpus corpus(bugs, {ind, fix}, {{"bug", {"ind"}, {"fix"}}});
  std::vector<std::string> excluded;
  const Dataset d = build_d_ori(corpus, bugs, 1, &excluded);
  EXPECT_TRUE(d.samples.empty());
  EXPECT_EQ(excluded, std::vector<std::string>{"bug"});
}

TEST(BuildDOri, NoEligibleNegativeIsAnError) {
  std::vector<BugReport> bugs{dated("bug", "2020-01-01T00:00:00Z")};
  Changeset ind{"ind", "", "", "", {testing_support::make_hunk("ind:1", "ind", "A")}};
  Changeset fix{"fix", "", "", "", {testing_support::make_hunk("fix:1", "fix", "A")}};
  const Corpus corpus(bugs, {ind, fix}, {{"bug", {"ind"}, {"fix"}}});
  EXPECT_THROW(build_d_ori(corpus, bugs, 1), std::runtime_error);
}

TEST(BuildDOri, BalancedLabelsAndDisjointNegativeClasses) {
  const Corpus corpus = synthetic_corpus(
      {{"A", "A", "B"}, {"C"}, {"A", "D", "D", "D"}, {"E", "F"}, {"B", "G"}}, 6);
  const Dataset d = build_d_ori(corpus, corpus.bugs(), 11);
  EXPECT_EQ(d.count(Label::kPositive), 12u);
  EXPECT_EQ(d.count(Label::kPositive), d.count(Label::kNegative));
  for (const auto& s : d.samples) {
    const auto inducing = corpus.inducing_classes(s.origin_bug_id);
    if (s.label == Label::kNegative) {
      EXPECT_FALSE(inducing.contains(s.class_name)) << s.hunk_id;
    } else {
      EXPECT_TRUE(inducing.contains(s.class_name));
    }
  }
}

TEST(BuildDOri, DeterministicUnderSeed) {
  const Corpus corpus = synthetic_corpus({{"A", "B"}, {"C", "C"}, {"D"}}, 30);
  const Dataset a = build_d_ori(corpus, corpus.bugs(), 5);
  const Dataset b = build_d_ori(corpus, corpus.bugs(), 5);
  EXPECT_EQ(a.samples, b.samples);
  // Another seed changes at least one negative on a 30-class noise pool.
  const Dataset c = build_d_ori(corpus, corpus.bugs(), 6);
  EXPECT_NE(a.samples, c.samples);
}

TEST(NegativeSampler, UniformOverEligiblePool) {
  const Corpus corpus = synthetic_corpus({{"A"}}, 4);
  NegativeSampler sampler(corpus);
  std::map<std::string, int> seen;
  Rng rng(9);
  for (int i = 0; i < 4000; ++i) ++seen[sampler.draw("B0000", rng).class_name];
  ASSERT_EQ(seen.size(), 4u);
  for (const auto& [cls, n] : seen) {
    EXPECT_GT(n, 850) << cls;
    EXPECT_LT(n, 1150) << cls;
  }
}

}  // namespace
}  // namespace bugaug
