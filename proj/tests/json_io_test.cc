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

#include <fstream>

#include "bugaug/digest.h"
#include "bugaug/json_io.h"
#include "test_support.h"

namespace bugaug {
namespace {

template <typename T>
T round_trip(const T& v) {
  return nlohmann::json::parse(nlohmann::json(v).dump()).get<T>();
}

TEST(JsonIo, BugReportRoundTripAndDefaults) {
  BugReport b{"55996", "Tomcat", "Async connector does not timeout", "details", "2013-10-01T12:00:00Z",
              BugStatus::kWontFix};
  const BugReport back = round_trip(b);
  EXPECT_EQ(back.id, b.id);
  EXPECT_EQ(back.status, BugStatus::kWontFix);
  EXPECT_EQ(back.full_text(), b.full_text());
  const auto minimal = nlohmann::json::parse(
      R"({"id": "1", "project": "p", "summary": "s", "description": "", "opened_at": "2020-01-01T00:00:00Z"})")
                           .get<BugReport>();
  EXPECT_EQ(minimal.status, BugStatus::kFixed);
}

TEST(JsonIo, HunkAndChangesetRoundTrip) {
  Changeset c{"c1", "dev", "2020-01-01T00:00:00Z", "msg", {testing_support::make_hunk("c1:0", "c1", "Foo")}};
  c.hunks[0].lines.push_back({LineMarker::kRemoved, "old();"});
  c.hunks[0].lines.push_back({LineMarker::kContext, ""});
  const Changeset back = round_trip(c);
  EXPECT_EQ(back.id, "c1");
  ASSERT_EQ(back.hunks.size(), 1u);
  EXPECT_EQ(back.hunks[0], c.hunks[0]);
  const auto no_hunks = nlohmann::json::parse(
      R"({"id": "c2", "author": "a", "committed_at": "2020-01-01T00:00:00Z", "log_message": "m"})")
                            .get<Changeset>();
  EXPECT_TRUE(no_hunks.hunks.empty());
}

TEST(JsonIo, TrainingSampleLabels) {
  const TrainingSample s{"B1#aug2", "B1", "c1:0", "Foo", Label::kNegative};
  EXPECT_EQ(nlohmann::json(s).at("label"), "negative");
  EXPECT_EQ(round_trip(s), s);
  EXPECT_ANY_THROW(nlohmann::json::parse(
                       R"({"bug_ref":"a","origin_bug_id":"a","hunk_id":"h","class_name":"C","label":"maybe"})")
                       .get<TrainingSample>());
}

TEST(JsonIo, StructuredAndAugmentedReports) {
  StructuredBugReport s{"B1",
                        {{SampleKind::kOB, {{"It", false, 0}, {"fooBar", true, 0}}, {0, 9}},
                         {SampleKind::kStackTrace, {{"Foo", true, 0}, {"bar", true, 1}}, {10, 30}}}};
  const StructuredBugReport back = round_trip(s);
  EXPECT_EQ(back.bug_id, "B1");
  EXPECT_EQ(back.samples, s.samples);

  AugmentedBugReport a;
  a.id = "B1#aug1";
  a.origin_bug_id = "B1";
  a.samples = {s.samples[1]};
  a.permutation = {1};
  a.provenance = {{0, {"replace"}, true}, {1, {"code_swap"}, false}};
  const nlohmann::json j = a;
  EXPECT_EQ(j.at("text"), "Foo\nbar");
  const AugmentedBugReport ab = j.get<AugmentedBugReport>();
  EXPECT_EQ(ab.samples, a.samples);
  EXPECT_EQ(ab.permutation, a.permutation);
  EXPECT_EQ(ab.dropped_index(), 0u);
  EXPECT_EQ(ab.provenance[1].applied_ops, std::vector<std::string>{"code_swap"});
}

TEST(JsonIo, JsonlErrorsCarrySourceAndLine) {
  const std::string text =
      "{\"bug_id\": \"1\", \"inducing_changeset_ids\": [], \"fixing_changeset_ids\": []}\n\n{broken\n";
  try {
    parse_jsonl<LinkRecord>(text, "links.jsonl");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 3u);
    EXPECT_NE(std::string(e.what()).find("links.jsonl"), std::string::npos);
  }
}

TEST(JsonIo, FilesAndDatasets) {
  const auto dir = testing_support::scratch_dir("json_io");
  Dataset d{"D_ori", {{"B1", "B1", "c:0", "A", Label::kPositive}, {"B1", "B1", "n:0", "N", Label::kNegative}}};
  write_dataset(dir / "nested" / "d.jsonl", d);
  const Dataset back = read_dataset(dir / "nested" / "d.jsonl", "D_ori");
  EXPECT_EQ(back.samples, d.samples);
  EXPECT_EQ(back.name, "D_ori");
  EXPECT_FALSE(std::filesystem::exists(dir / "nested" / "d.jsonl.tmp"));
  EXPECT_THROW(read_text_file(dir / "missing.txt"), std::exception);
}

TEST(JsonIo, CodeNames) {
  const auto names = parse_code_names(R"({"B2": ["z", "a", "a"], "B1": []})");
  EXPECT_EQ(names.at("B2").names, (std::vector<std::string>{"a", "z"}));
  EXPECT_EQ(names.at("B2").bug_id, "B2");
  EXPECT_EQ(parse_code_names(format_code_names(names)).at("B2").names, names.at("B2").names);
}

TEST(Digest, KnownVectors) {
  EXPECT_EQ(sha256_hex(""), "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855");
  EXPECT_EQ(sha256_hex("abc"), "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
  const auto dir = testing_support::scratch_dir("digest");
  { std::ofstream(dir / "f.txt") << "abc"; }
  EXPECT_EQ(sha256_file(dir / "f.txt"), sha256_hex("abc"));
  EXPECT_EQ(sha256_path(dir / "f.txt"), sha256_hex("abc"));
  const std::string tree = sha256_tree(dir);
  EXPECT_EQ(sha256_path(dir), tree);
  { std::ofstream(dir / "g.txt") << "x"; }
  EXPECT_NE(sha256_tree(dir), tree);
}

}  // namespace
}  // namespace bugaug
