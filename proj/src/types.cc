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

#include "bugaug/types.h"

#include <algorithm>

namespace bugaug {

std::string_view to_string(BugStatus status) {
  switch (status) {
    case BugStatus::kFixed:
      return "fixed";
    case BugStatus::kWontFix:
      return "wont_fix";
    case BugStatus::kNotABug:
      return "not_a_bug";
    case BugStatus::kOther:
      return "other";
  }
  return "other";
}

BugStatus parse_bug_status(std::string_view text) {
  if (text == "fixed") return BugStatus::kFixed;
  if (text == "wont_fix") return BugStatus::kWontFix;
  if (text == "not_a_bug") return BugStatus::kNotABug;
  if (text == "other") return BugStatus::kOther;
  throw ParseError("unknown bug status '" + std::string(text) + "'");
}

std::string BugReport::full_text() const {
  if (description.empty()) return summary;
  return summary + "\n\n" + description;
}

std::size_t Dataset::count(Label label) const {
  return static_cast<std::size_t>(
      std::count_if(samples.begin(), samples.end(),
                    [label](const TrainingSample& s) { return s.label == label; }));
}

std::string_view to_string(SampleKind kind) {
  switch (kind) {
    case SampleKind::kOB:
      return "OB";
    case SampleKind::kEB:
      return "EB";
    case SampleKind::kS2R:
      return "S2R";
    case SampleKind::kStackTrace:
      return "StackTrace";
    case SampleKind::kCodeSnippet:
      return "CodeSnippet";
    case SampleKind::kOther:
      return "Other";
  }
  return "Other";
}

SampleKind parse_sample_kind(std::string_view text) {
  if (text == "OB") return SampleKind::kOB;
  if (text == "EB") return SampleKind::kEB;
  if (text == "S2R") return SampleKind::kS2R;
  if (text == "StackTrace") return SampleKind::kStackTrace;
  if (text == "CodeSnippet") return SampleKind::kCodeSnippet;
  if (text == "Other") return SampleKind::kOther;
  throw ParseError("unknown sample kind '" + std::string(text) + "'");
}

std::string_view to_string(FrameKind kind) {
  switch (kind) {
    case FrameKind::kExceptionHeader:
      return "exception_header";
    case FrameKind::kCausedBy:
      return "caused_by";
    case FrameKind::kApp:
      return "app";
    case FrameKind::kLibrary:
      return "library";
    case FrameKind::kBottom:
      return "bottom";
  }
  return "app";
}

std::size_t count_code_tokens(const std::vector<Token>& tokens) {
  return static_cast<std::size_t>(std::count_if(
      tokens.begin(), tokens.end(), [](const Token& t) { return t.is_code; }));
}

}  // namespace bugaug
