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

// Corpus ingestion: unified diffs to hunks, link resolution, the baseline
// training set and the chronological split.

#ifndef BUGAUG_CORPUS_H_
#define BUGAUG_CORPUS_H_

#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "bugaug/rng.h"
#include "bugaug/types.h"

namespace bugaug {

// Parses a unified diff into one Hunk per `@@` section. Hunk ids are
// "<changeset_id>:<ordinal>". Throws ParseError with the offending line number
// on malformed headers or bodies that disagree with their header counts.
std::vector<Hunk> parse_unified_diff(std::string_view diff_text,
                                     std::string_view changeset_id = "");

// Inverse of parse_unified_diff for well-formed hunks.
std::string serialize_unified_diff(const std::vector<Hunk>& hunks);

// "java/org/apache/Foo.java" -> "Foo".
std::string derive_class_name(std::string_view file_path);

// Seconds since the Unix epoch for an RFC 3339 timestamp. Sub-second digits
// are kept as nanoseconds in the second member.
std::pair<std::int64_t, std::int32_t> parse_rfc3339(std::string_view text);

// Read-only view over bugs, changesets and links with the lookups the dataset
// builders need. Construction validates that every link resolves.
class Corpus {
 public:
  Corpus(std::vector<BugReport> bugs, std::vector<Changeset> changesets,
         std::vector<LinkRecord> links);

  // Hunk lookups point into changesets_.
  Corpus(const Corpus&) = delete;
  Corpus& operator=(const Corpus&) = delete;
  Corpus(Corpus&&) = default;

  const std::vector<BugReport>& bugs() const { return bugs_; }
  const std::vector<Changeset>& changesets() const { return changesets_; }
  const std::vector<LinkRecord>& links() const { return links_; }

  const BugReport* find_bug(std::string_view id) const;
  const Changeset& changeset(std::string_view id) const;
  const Hunk& hunk(std::string_view id) const;
  const LinkRecord* link(std::string_view bug_id) const;

  // Every hunk of every changeset, in changeset then diff order.
  const std::vector<const Hunk*>& all_hunks() const { return all_hunks_; }

  std::vector<const Hunk*> inducing_hunks(std::string_view bug_id) const;
  std::set<std::string> inducing_classes(std::string_view bug_id) const;
  std::set<std::string> fixing_classes(std::string_view bug_id) const;

  // Inducing hunks whose class also appears in a fixing changeset.
  std::vector<const Hunk*> positive_hunks(std::string_view bug_id) const;

 private:
  std::vector<BugReport> bugs_;
  std::vector<Changeset> changesets_;
  std::vector<LinkRecord> links_;
  std::map<std::string, std::size_t, std::less<>> bug_index_;
  std::map<std::string, std::size_t, std::less<>> changeset_index_;
  std::map<std::string, const Hunk*, std::less<>> hunk_index_;
  std::map<std::string, std::size_t, std::less<>> link_index_;
  std::vector<const Hunk*> all_hunks_;
};

// Draws negative hunks: uniformly from the global pool, restricted to hunks
// whose class is not touched by any inducing changeset of the origin bug.
class NegativeSampler {
 public:
  explicit NegativeSampler(const Corpus& corpus) : corpus_(corpus) {}

  // Throws std::runtime_error when no eligible class exists.
  const Hunk& draw(const std::string& origin_bug_id, Rng& rng);

 private:
  const std::vector<const Hunk*>& eligible(const std::string& origin_bug_id);

  const Corpus& corpus_;
  std::map<std::string, std::vector<const Hunk*>> eligible_cache_;
};

TrainingSample make_sample(const std::string& bug_ref,
                           const std::string& origin_bug_id, const Hunk& hunk,
                           Label label);

// Baseline dataset over `bugs`: every surviving inducing hunk becomes a
// positive, each followed by one seeded negative. Bugs without surviving
// hunks are skipped and reported through `excluded`.
Dataset build_d_ori(const Corpus& corpus, const std::vector<BugReport>& bugs,
                    std::uint64_t seed,
                    std::vector<std::string>* excluded = nullptr);

// Drops reports closed as wont_fix or not_a_bug.
std::vector<BugReport> drop_invalid_reports(std::vector<BugReport> bugs);

struct DateSplit {
  std::vector<BugReport> train;
  std::vector<BugReport> test;
};

// Stable order by opening date, ties by id; the first ceil(n/2) train.
DateSplit split_by_date(std::vector<BugReport> bugs);

}  // namespace bugaug

#endif  // BUGAUG_CORPUS_H_
