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

#include "bugaug/corpus.h"

#include <spdlog/spdlog.h>

#include <algorithm>
#include <charconv>
#include <chrono>
#include <filesystem>
#include <regex>
#include <sstream>

namespace bugaug {
namespace {

std::vector<std::string_view> split_lines(std::string_view text) {
  std::vector<std::string_view> lines;
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t nl = text.find('\n', pos);
    if (nl == std::string_view::npos) nl = text.size();
    std::string_view line = text.substr(pos, nl - pos);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    lines.push_back(line);
    pos = nl + 1;
  }
  return lines;
}

// "b/src/Foo.java\t2020-01-01" -> "src/Foo.java"
std::string header_path(std::string_view rest) {
  if (auto tab = rest.find('\t'); tab != std::string_view::npos) {
    rest = rest.substr(0, tab);
  }
  while (!rest.empty() && rest.back() == ' ') rest.remove_suffix(1);
  if (rest.starts_with("a/") || rest.starts_with("b/")) rest.remove_prefix(2);
  return std::string(rest);
}

std::uint32_t to_u32(const std::string& digits) {
  std::uint32_t value = 0;
  std::from_chars(digits.data(), digits.data() + digits.size(), value);
  return value;
}

}  // namespace

std::vector<Hunk> parse_unified_diff(std::string_view diff_text,
                                     std::string_view changeset_id) {
  static const std::regex kHunkHeader(
      R"(^@@ -(\d+)(?:,(\d+))? \+(\d+)(?:,(\d+))? @@.*$)");

  std::vector<Hunk> hunks;
  const auto lines = split_lines(diff_text);
  std::string old_path;
  std::string new_path;
  std::size_t i = 0;
  while (i < lines.size()) {
    const std::string_view line = lines[i];
    const std::size_t line_no = i + 1;
    if (line.starts_with("--- ")) {
      old_path = header_path(line.substr(4));
      ++i;
      continue;
    }
    if (line.starts_with("+++ ")) {
      new_path = header_path(line.substr(4));
      ++i;
      continue;
    }
    if (!line.starts_with("@@")) {
      // diff --git, index, mode lines and free text between files.
      ++i;
      continue;
    }

    std::match_results<std::string_view::const_iterator> m;
    if (!std::regex_match(line.begin(), line.end(), m, kHunkHeader)) {
      throw ParseError("malformed hunk header '" + std::string(line) + "'",
                       line_no);
    }
    std::string path = new_path == "/dev/null" ? old_path : new_path;
    if (path.empty()) {
      throw ParseError("hunk without a preceding file header", line_no);
    }

    Hunk hunk;
    hunk.id = (changeset_id.empty() ? std::string("h")
                                    : std::string(changeset_id) + ":") +
              std::to_string(hunks.size());
    hunk.changeset_id = std::string(changeset_id);
    hunk.file_path = path;
    hunk.class_name = derive_class_name(path);
    hunk.old_start = to_u32(m[1].str());
    hunk.old_len = m[2].matched ? to_u32(m[2].str()) : 1;
    hunk.new_start = to_u32(m[3].str());
    hunk.new_len = m[4].matched ? to_u32(m[4].str()) : 1;

    std::uint32_t old_seen = 0;
    std::uint32_t new_seen = 0;
    ++i;
    while (i < lines.size() &&
           (old_seen < hunk.old_len || new_seen < hunk.new_len)) {
      const std::string_view body = lines[i];
      if (body.starts_with("\\")) {  // "\ No newline at end of file"
        ++i;
        continue;
      }
      HunkLine hl;
      char marker = body.empty() ? ' ' : body.front();
      hl.text = body.empty() ? std::string() : std::string(body.substr(1));
      if (marker == ' ') {
        hl.marker = LineMarker::kContext;
        ++old_seen;
        ++new_seen;
      } else if (marker == '-') {
        hl.marker = LineMarker::kRemoved;
        ++old_seen;
      } else if (marker == '+') {
        hl.marker = LineMarker::kAdded;
        ++new_seen;
      } else {
        throw ParseError("unexpected line inside hunk", i + 1);
      }
      if (old_seen > hunk.old_len || new_seen > hunk.new_len) {
        throw ParseError("hunk body longer than its header", i + 1);
      }
      hunk.lines.push_back(std::move(hl));
      ++i;
    }
    if (old_seen != hunk.old_len || new_seen != hunk.new_len) {
      throw ParseError("hunk body shorter than its header", line_no);
    }
    while (i < lines.size() && lines[i].starts_with("\\")) ++i;
    hunks.push_back(std::move(hunk));
  }
  return hunks;
}

std::string serialize_unified_diff(const std::vector<Hunk>& hunks) {
  std::ostringstream out;
  const std::string* current = nullptr;
  for (const Hunk& h : hunks) {
    if (current == nullptr || *current != h.file_path) {
      out << "--- a/" << h.file_path << "\n+++ b/" << h.file_path << "\n";
      current = &h.file_path;
    }
    out << "@@ -" << h.old_start << "," << h.old_len << " +" << h.new_start
        << "," << h.new_len << " @@\n";
    for (const HunkLine& line : h.lines) {
      switch (line.marker) {
        case LineMarker::kContext:
          out << ' ';
          break;
        case LineMarker::kAdded:
          out << '+';
          break;
        case LineMarker::kRemoved:
          out << '-';
          break;
      }
      out << line.text << "\n";
    }
  }
  return out.str();
}

std::string derive_class_name(std::string_view file_path) {
  return std::filesystem::path(file_path).stem().string();
}

std::pair<std::int64_t, std::int32_t> parse_rfc3339(std::string_view text) {
  static const std::regex kTimestamp(
      R"(^(\d{4})-(\d{2})-(\d{2})[Tt ](\d{2}):(\d{2}):(\d{2})(?:\.(\d{1,9}))?(Z|z|[+-]\d{2}:\d{2})$)");
  std::match_results<std::string_view::const_iterator> m;
  if (!std::regex_match(text.begin(), text.end(), m, kTimestamp)) {
    throw ParseError("invalid RFC 3339 timestamp '" + std::string(text) + "'");
  }
  auto num = [&](int g) { return std::stoi(m[g].str()); };
  using namespace std::chrono;
  const year_month_day ymd{year{num(1)}, month{static_cast<unsigned>(num(2))},
                           day{static_cast<unsigned>(num(3))}};
  if (!ymd.ok()) {
    throw ParseError("invalid calendar date '" + std::string(text) + "'");
  }
  std::int64_t secs = sys_days{ymd}.time_since_epoch().count() * 86400LL +
                      num(4) * 3600LL + num(5) * 60LL + num(6);
  std::int32_t nanos = 0;
  if (m[7].matched) {
    std::string frac = m[7].str();
    frac.resize(9, '0');
    nanos = std::stoi(frac);
  }
  const std::string zone = m[8].str();
  if (zone != "Z" && zone != "z") {
    const int sign = zone[0] == '-' ? -1 : 1;
    const int offset = std::stoi(zone.substr(1, 2)) * 3600 +
                       std::stoi(zone.substr(4, 2)) * 60;
    secs -= sign * offset;
  }
  return {secs, nanos};
}

// ---------------------------------------------------------------------------

Corpus::Corpus(std::vector<BugReport> bugs, std::vector<Changeset> changesets,
               std::vector<LinkRecord> links)
    : bugs_(std::move(bugs)),
      changesets_(std::move(changesets)),
      links_(std::move(links)) {
  for (std::size_t i = 0; i < bugs_.size(); ++i) {
    if (!bug_index_.emplace(bugs_[i].id, i).second) {
      throw std::invalid_argument("duplicate bug id '" + bugs_[i].id + "'");
    }
  }
  for (std::size_t i = 0; i < changesets_.size(); ++i) {
    if (!changeset_index_.emplace(changesets_[i].id, i).second) {
      throw std::invalid_argument("duplicate changeset id '" +
                                  changesets_[i].id + "'");
    }
    for (const Hunk& h : changesets_[i].hunks) {
      if (!hunk_index_.emplace(h.id, &h).second) {
        throw std::invalid_argument("duplicate hunk id '" + h.id + "'");
      }
      all_hunks_.push_back(&h);
    }
  }
  for (std::size_t i = 0; i < links_.size(); ++i) {
    const LinkRecord& link = links_[i];
    if (!bug_index_.contains(link.bug_id)) {
      throw std::invalid_argument("link references unknown bug '" +
                                  link.bug_id + "'");
    }
    for (const auto* ids :
         {&link.inducing_changeset_ids, &link.fixing_changeset_ids}) {
      for (const std::string& cs : *ids) {
        if (!changeset_index_.contains(cs)) {
          throw std::invalid_argument("link for bug '" + link.bug_id +
                                      "' references unknown changeset '" +
                                      cs + "'");
        }
      }
    }
    for (const std::string& cs : link.inducing_changeset_ids) {
      if (changeset(cs).hunks.empty()) {
        throw std::invalid_argument("inducing changeset '" + cs +
                                    "' has no file diffs");
      }
    }
    if (!link_index_.emplace(link.bug_id, i).second) {
      throw std::invalid_argument("duplicate link record for bug '" +
                                  link.bug_id + "'");
    }
  }
}

const BugReport* Corpus::find_bug(std::string_view id) const {
  auto it = bug_index_.find(id);
  return it == bug_index_.end() ? nullptr : &bugs_[it->second];
}

const Changeset& Corpus::changeset(std::string_view id) const {
  auto it = changeset_index_.find(id);
  if (it == changeset_index_.end()) {
    throw std::out_of_range("unknown changeset '" + std::string(id) + "'");
  }
  return changesets_[it->second];
}

const Hunk& Corpus::hunk(std::string_view id) const {
  auto it = hunk_index_.find(id);
  if (it == hunk_index_.end()) {
    throw std::out_of_range("unknown hunk '" + std::string(id) + "'");
  }
  return *it->second;
}

const LinkRecord* Corpus::link(std::string_view bug_id) const {
  auto it = link_index_.find(bug_id);
  return it == link_index_.end() ? nullptr : &links_[it->second];
}

std::vector<const Hunk*> Corpus::inducing_hunks(std::string_view bug_id) const {
  std::vector<const Hunk*> out;
  const LinkRecord* rec = link(bug_id);
  if (rec == nullptr) return out;
  for (const std::string& cs : rec->inducing_changeset_ids) {
    for (const Hunk& h : changeset(cs).hunks) out.push_back(&h);
  }
  return out;
}

std::set<std::string> Corpus::inducing_classes(std::string_view bug_id) const {
  std::set<std::string> out;
  for (const Hunk* h : inducing_hunks(bug_id)) out.insert(h->class_name);
  return out;
}

std::set<std::string> Corpus::fixing_classes(std::string_view bug_id) const {
  std::set<std::string> out;
  const LinkRecord* rec = link(bug_id);
  if (rec == nullptr) return out;
  for (const std::string& cs : rec->fixing_changeset_ids) {
    for (const Hunk& h : changeset(cs).hunks) out.insert(h.class_name);
  }
  return out;
}

std::vector<const Hunk*> Corpus::positive_hunks(std::string_view bug_id) const {
  const std::set<std::string> fixed = fixing_classes(bug_id);
  std::vector<const Hunk*> out;
  for (const Hunk* h : inducing_hunks(bug_id)) {
    if (fixed.contains(h->class_name)) out.push_back(h);
  }
  return out;
}

// ---------------------------------------------------------------------------

const std::vector<const Hunk*>& NegativeSampler::eligible(
    const std::string& origin_bug_id) {
  auto it = eligible_cache_.find(origin_bug_id);
  if (it != eligible_cache_.end()) return it->second;
  const std::set<std::string> excluded = corpus_.inducing_classes(origin_bug_id);
  std::vector<const Hunk*> pool;
  for (const Hunk* h : corpus_.all_hunks()) {
    if (!excluded.contains(h->class_name)) pool.push_back(h);
  }
  return eligible_cache_.emplace(origin_bug_id, std::move(pool)).first->second;
}

const Hunk& NegativeSampler::draw(const std::string& origin_bug_id, Rng& rng) {
  const auto& pool = eligible(origin_bug_id);
  if (pool.empty()) {
    throw std::runtime_error("no eligible negative class for bug '" +
                             origin_bug_id + "'");
  }
  return *pool[rng.uniform_index(pool.size())];
}

TrainingSample make_sample(const std::string& bug_ref,
                           const std::string& origin_bug_id, const Hunk& hunk,
                           Label label) {
  return TrainingSample{bug_ref, origin_bug_id, hunk.id, hunk.class_name,
                        label};
}

Dataset build_d_ori(const Corpus& corpus, const std::vector<BugReport>& bugs,
                    std::uint64_t seed, std::vector<std::string>* excluded) {
  std::vector<const BugReport*> ordered;
  for (const BugReport& b : bugs) ordered.push_back(&b);
  std::sort(ordered.begin(), ordered.end(),
            [](const BugReport* a, const BugReport* b) { return a->id < b->id; });

  NegativeSampler negatives(corpus);
  Dataset out;
  out.name = "D_ori";
  for (const BugReport* bug : ordered) {
    const auto positives = corpus.positive_hunks(bug->id);
    if (positives.empty()) {
      spdlog::info("bug {} has no inducing hunk in a fixed class; excluded",
                   bug->id);
      if (excluded != nullptr) excluded->push_back(bug->id);
      continue;
    }
    for (std::size_t i = 0; i < positives.size(); ++i) {
      out.samples.push_back(
          make_sample(bug->id, bug->id, *positives[i], Label::kPositive));
      Rng rng(derive_seed(seed, std::string_view("d_ori"), bug->id,
                          static_cast<std::uint64_t>(i)));
      out.samples.push_back(make_sample(
          bug->id, bug->id, negatives.draw(bug->id, rng), Label::kNegative));
    }
  }
  return out;
}

std::vector<BugReport> drop_invalid_reports(std::vector<BugReport> bugs) {
  std::erase_if(bugs, [](const BugReport& b) {
    return b.status == BugStatus::kWontFix || b.status == BugStatus::kNotABug;
  });
  return bugs;
}

DateSplit split_by_date(std::vector<BugReport> bugs) {
  std::vector<std::pair<std::pair<std::int64_t, std::int32_t>, std::size_t>>
      keyed;
  keyed.reserve(bugs.size());
  for (std::size_t i = 0; i < bugs.size(); ++i) {
    keyed.emplace_back(parse_rfc3339(bugs[i].opened_at), i);
  }
  std::stable_sort(keyed.begin(), keyed.end(), [&](const auto& a, const auto& b) {
    if (a.first != b.first) return a.first < b.first;
    return bugs[a.second].id < bugs[b.second].id;
  });
  DateSplit split;
  const std::size_t n_train = (bugs.size() + 1) / 2;
  for (std::size_t i = 0; i < keyed.size(); ++i) {
    auto& dest = i < n_train ? split.train : split.test;
    dest.push_back(std::move(bugs[keyed[i].second]));
  }
  return split;
}

}  // namespace bugaug
