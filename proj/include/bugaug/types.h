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

// Core domain types shared by every stage of the pipeline.

#ifndef BUGAUG_TYPES_H_
#define BUGAUG_TYPES_H_

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace bugaug {

// Raised for malformed inputs (bad JSON, bad diff headers, bad qrels lines).
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, std::size_t line)
      : std::runtime_error(what + " (line " + std::to_string(line) + ")"),
        line_(line) {}
  explicit ParseError(const std::string& what) : std::runtime_error(what) {}

  std::size_t line() const { return line_; }

 private:
  std::size_t line_ = 0;
};

// ---------------------------------------------------------------------------
// Corpus entities.

enum class BugStatus { kFixed, kWontFix, kNotABug, kOther };

std::string_view to_string(BugStatus status);
BugStatus parse_bug_status(std::string_view text);

struct BugReport {
  std::string id;
  std::string project;
  std::string summary;
  std::string description;
  std::string opened_at;  // RFC 3339, UTC
  BugStatus status = BugStatus::kFixed;

  // Summary and description joined the way the extractor sees them.
  std::string full_text() const;
};

enum class LineMarker { kContext, kAdded, kRemoved };

struct HunkLine {
  LineMarker marker = LineMarker::kContext;
  std::string text;

  bool operator==(const HunkLine&) const = default;
};

struct Hunk {
  std::string id;
  std::string changeset_id;
  std::string file_path;
  std::string class_name;
  std::uint32_t old_start = 0;
  std::uint32_t old_len = 0;
  std::uint32_t new_start = 0;
  std::uint32_t new_len = 0;
  std::vector<HunkLine> lines;

  bool operator==(const Hunk&) const = default;
};

struct Changeset {
  std::string id;
  std::string author;
  std::string committed_at;
  std::string log_message;
  std::vector<Hunk> hunks;  // flattened file diffs
};

struct LinkRecord {
  std::string bug_id;
  std::vector<std::string> inducing_changeset_ids;
  std::vector<std::string> fixing_changeset_ids;

  bool usable() const {
    return !inducing_changeset_ids.empty() && !fixing_changeset_ids.empty();
  }
};

enum class Label { kPositive, kNegative };

struct TrainingSample {
  std::string bug_ref;        // real bug id or augmented report id
  std::string origin_bug_id;
  std::string hunk_id;
  std::string class_name;
  Label label = Label::kPositive;

  bool operator==(const TrainingSample&) const = default;
};

struct Dataset {
  std::string name;  // D_ori, D_rep, D_aug, D_bl
  std::vector<TrainingSample> samples;

  std::size_t count(Label label) const;
};

// ---------------------------------------------------------------------------
// Structured bug reports.

enum class SampleKind { kOB, kEB, kS2R, kStackTrace, kCodeSnippet, kOther };

std::string_view to_string(SampleKind kind);
SampleKind parse_sample_kind(std::string_view text);

inline bool is_natural_language(SampleKind kind) {
  return kind == SampleKind::kOB || kind == SampleKind::kEB ||
         kind == SampleKind::kS2R;
}

struct Token {
  std::string text;
  bool is_code = false;
  // Line within the owning sample; stack-trace swaps are constrained by it.
  std::uint32_t line = 0;

  bool operator==(const Token&) const = default;
};

struct Span {
  std::size_t start = 0;
  std::size_t end = 0;

  bool operator==(const Span&) const = default;
};

struct Sample {
  SampleKind kind = SampleKind::kOther;
  std::vector<Token> tokens;
  Span source_span;

  bool operator==(const Sample&) const = default;
};

struct StructuredBugReport {
  std::string bug_id;
  std::vector<Sample> samples;
};

enum class FrameKind { kExceptionHeader, kCausedBy, kApp, kLibrary, kBottom };

std::string_view to_string(FrameKind kind);

struct StackFrame {
  std::string raw;
  FrameKind kind = FrameKind::kApp;
  std::optional<std::string> class_ref;

  bool operator==(const StackFrame&) const = default;
};

using StackTrace = std::vector<StackFrame>;

std::size_t count_code_tokens(const std::vector<Token>& tokens);

}  // namespace bugaug

#endif  // BUGAUG_TYPES_H_
