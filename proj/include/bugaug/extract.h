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

// Rule-based decomposition of bug-report text into stack traces, code
// snippets and OB/EB/S2R paragraphs.

#ifndef BUGAUG_EXTRACT_H_
#define BUGAUG_EXTRACT_H_

#include <map>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "bugaug/types.h"

namespace bugaug {

// Keyword lists per category. OB keywords are grouped (negative verbs,
// negations, ...); a paragraph is OB if any group matches.
struct PatternDictionary {
  std::map<std::string, std::vector<std::string>> ob;
  std::vector<std::string> eb;
  std::vector<std::string> s2r;
  // Explicit keyword -> substitutes entries for the NL operators.
  std::map<std::string, std::vector<std::string>> substitutes;
  // Project identifiers that always count as code tokens.
  std::vector<std::string> identifiers;
};

PatternDictionary parse_pattern_dictionary(std::string_view json_text);
PatternDictionary load_pattern_dictionary(const std::string& path);
// The dictionary shipped in data/patterns.json, compiled in.
const PatternDictionary& default_pattern_dictionary();

const std::vector<std::string>& default_library_prefixes();

struct ExtractOptions {
  PatternDictionary patterns = default_pattern_dictionary();
  std::vector<std::string> library_prefixes = default_library_prefixes();
};

// ASCII punctuation except '_'.
bool is_punctuation(char c);
bool is_punctuation_token(std::string_view text);

// Whitespace tokenization that peels leading/trailing punctuation into
// separate tokens ("context." -> "context", "."). A trailing "()" stays
// attached to its identifier.
std::vector<Token> tokenize_prose(std::string_view text);

// Joins tokens back into text, attaching closing punctuation to the left.
std::string render_tokens(const std::vector<Token>& tokens);

// Prose samples render as text; traces and snippets one line per
// Token::line.
std::string render_sample(const Sample& sample);

// ---------------------------------------------------------------------------
// Stack traces.

struct TraceExtraction {
  std::vector<StackTrace> traces;
  std::string remainder;
};

TraceExtraction extract_stack_traces(
    std::string_view text,
    const std::vector<std::string>& library_prefixes =
        default_library_prefixes());

// Header, the first three application frames and the bottom frame, in
// original order without duplicates.
StackTrace reduce_stack_trace(const StackTrace& trace,
                              const std::vector<std::string>& library_prefixes =
                                  default_library_prefixes());

// Tokens of a trace; Token::line is the frame index.
std::vector<Token> tokenize_stack_trace(const StackTrace& trace);

// ---------------------------------------------------------------------------
// Code snippets.

struct SnippetExtraction {
  std::vector<std::string> snippets;
  std::string remainder;
};

bool is_code_line(std::string_view line);

SnippetExtraction extract_code_snippets(std::string_view text);

// Drops punctuation-only tokens and splits the rest on punctuation.
std::vector<Token> strip_punctuation(const std::vector<Token>& tokens);

// Snippet tokens with punctuation removed; Token::line is the snippet line.
std::vector<Token> tokenize_code_snippet(std::string_view snippet);

// ---------------------------------------------------------------------------
// Natural language.

// Every category whose markers occur in the text. Empty for Other.
std::set<SampleKind> category_set(std::string_view text,
                                  const PatternDictionary& patterns);

// Highest-priority category (S2R > EB > OB), or Other.
SampleKind classify_text(std::string_view text,
                         const PatternDictionary& patterns);

// Splits on blank lines and labels each paragraph.
std::vector<Sample> classify_paragraphs(std::string_view text,
                                        const PatternDictionary& patterns);

bool looks_like_code_token(std::string_view text);

std::vector<Token> detect_code_tokens(
    std::vector<Token> tokens, const std::vector<std::string>& identifiers = {});

// Full decomposition of one report. Sample spans index into
// BugReport::full_text(); uncovered characters are whitespace.
StructuredBugReport structure_bug_report(const BugReport& bug,
                                         const ExtractOptions& options = {});

}  // namespace bugaug

#endif  // BUGAUG_EXTRACT_H_
