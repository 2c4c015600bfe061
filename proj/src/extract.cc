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

#include "bugaug/extract.h"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <regex>
#include <sstream>

#include <nlohmann/json.hpp>

namespace bugaug {
namespace {

#include "default_patterns.inc"

using Match = std::match_results<std::string_view::const_iterator>;

bool regex_match_sv(std::string_view s, Match& m, const std::regex& re) {
  return std::regex_match(s.begin(), s.end(), m, re);
}

bool regex_match_sv(std::string_view s, const std::regex& re) {
  return std::regex_match(s.begin(), s.end(), re);
}

const std::regex& header_re() {
  static const std::regex re(
      R"(^\s*(?:Exception in thread "[^"]*"\s+)?((?:[A-Za-z_$][\w$]*\.)*(?:[A-Za-z_$][\w$]*)?(?:Exception|Error))(?:\s*:.*)?\s*$)");
  return re;
}

const std::regex& caused_by_re() {
  static const std::regex re(
      R"(^\s*Caused by:\s*((?:[A-Za-z_$][\w$]*\.)*[A-Za-z_$][\w$]*)(?:\s*:.*)?\s*$)");
  return re;
}

const std::regex& frame_re() {
  static const std::regex re(R"(^\s*at\s+([\w$.<>/]+)\s*\(([^)]*)\)\s*$)");
  return re;
}

const std::regex& more_re() {
  static const std::regex re(R"(^\s*\.\.\.\s*\d+\s+more\s*$)");
  return re;
}

struct Line {
  std::size_t start = 0;
  std::size_t end = 0;  // exclusive, before '\n'
  std::string_view text;
};

std::vector<Line> split_lines(std::string_view text) {
  std::vector<Line> lines;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t nl = text.find('\n', pos);
    if (nl == std::string_view::npos) nl = text.size();
    lines.push_back({pos, nl, text.substr(pos, nl - pos)});
    if (nl == text.size()) break;
    pos = nl + 1;
  }
  return lines;
}

bool is_blank(std::string_view s) {
  return std::all_of(s.begin(), s.end(),
                     [](unsigned char c) { return std::isspace(c) != 0; });
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) {
    s.remove_prefix(1);
  }
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) {
    s.remove_suffix(1);
  }
  return s;
}

std::vector<std::string_view> split_ws(std::string_view s) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
    std::size_t j = i;
    while (j < s.size() && !std::isspace(static_cast<unsigned char>(s[j]))) ++j;
    if (j > i) out.push_back(s.substr(i, j - i));
    i = j;
  }
  return out;
}

std::string lower(std::string_view s) {
  std::string out(s);
  for (char& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return out;
}

bool has_library_prefix(std::string_view qualified,
                        const std::vector<std::string>& prefixes) {
  return std::any_of(prefixes.begin(), prefixes.end(),
                     [&](const std::string& p) { return qualified.starts_with(p); });
}

enum class TraceLine { kHeader, kCausedBy, kFrame, kMore, kNone };

TraceLine classify_trace_line(std::string_view line) {
  if (regex_match_sv(line, frame_re())) return TraceLine::kFrame;
  if (regex_match_sv(line, caused_by_re())) return TraceLine::kCausedBy;
  if (regex_match_sv(line, header_re())) return TraceLine::kHeader;
  if (regex_match_sv(line, more_re())) return TraceLine::kMore;
  return TraceLine::kNone;
}

StackFrame make_frame(std::string_view line, TraceLine kind,
                      const std::vector<std::string>& prefixes) {
  StackFrame frame;
  frame.raw = std::string(trim(line));
  Match m;
  switch (kind) {
    case TraceLine::kHeader:
      regex_match_sv(line, m, header_re());
      frame.kind = FrameKind::kExceptionHeader;
      frame.class_ref = m[1].str();
      break;
    case TraceLine::kCausedBy:
      regex_match_sv(line, m, caused_by_re());
      frame.kind = FrameKind::kCausedBy;
      frame.class_ref = m[1].str();
      break;
    case TraceLine::kFrame: {
      regex_match_sv(line, m, frame_re());
      const std::string qualified = m[1].str();
      frame.kind = has_library_prefix(qualified, prefixes) ? FrameKind::kLibrary
                                                           : FrameKind::kApp;
      if (auto dot = qualified.rfind('.'); dot != std::string::npos) {
        frame.class_ref = qualified.substr(0, dot);
      }
      break;
    }
    default:
      break;
  }
  return frame;
}

// A detected trace: [first, last] line indices and its frames.
struct TraceBlock {
  std::size_t first = 0;
  std::size_t last = 0;
  StackTrace frames;
};

std::vector<TraceBlock> find_traces(const std::vector<Line>& lines,
                                    const std::vector<std::string>& prefixes) {
  std::vector<TraceLine> kinds;
  kinds.reserve(lines.size());
  for (const Line& l : lines) kinds.push_back(classify_trace_line(l.text));

  std::vector<TraceBlock> blocks;
  std::size_t i = 0;
  while (i < lines.size()) {
    if (kinds[i] != TraceLine::kHeader || i + 1 >= lines.size() ||
        kinds[i + 1] != TraceLine::kFrame) {
      ++i;
      continue;
    }
    TraceBlock block;
    block.first = i;
    block.frames.push_back(make_frame(lines[i].text, kinds[i], prefixes));
    std::size_t j = i + 1;
    while (j < lines.size() &&
           (kinds[j] == TraceLine::kFrame || kinds[j] == TraceLine::kMore ||
            kinds[j] == TraceLine::kCausedBy)) {
      if (kinds[j] != TraceLine::kMore) {
        block.frames.push_back(make_frame(lines[j].text, kinds[j], prefixes));
      }
      ++j;
    }
    block.last = j - 1;
    blocks.push_back(std::move(block));
    i = j;
  }
  return blocks;
}

const std::set<std::string>& code_keywords() {
  static const std::set<std::string> kw = {
      "public", "private", "protected", "class",  "interface", "enum",
      "import", "package", "return",    "if",     "for",       "while",
      "switch", "case",    "try",       "catch",  "finally",   "throw",
      "new",    "static",  "final",     "void",   "int",       "long",
      "boolean", "double", "float",     "char",   "String",    "else",
      "do",     "synchronized", "abstract", "extends", "implements"};
  return kw;
}

const std::set<std::string>& java_reserved() {
  static const std::set<std::string> kw = [] {
    std::set<std::string> s = code_keywords();
    s.erase("String");
    for (const char* w : {"true", "false", "null", "this", "super", "break",
                          "continue", "default", "instanceof", "throws",
                          "volatile", "transient", "byte", "short", "var"}) {
      s.insert(w);
    }
    return s;
  }();
  return kw;
}

bool is_identifier(std::string_view s) {
  if (s.empty()) return false;
  auto ok_first = [](unsigned char c) { return std::isalpha(c) || c == '_' || c == '$'; };
  auto ok_rest = [](unsigned char c) { return std::isalnum(c) || c == '_' || c == '$'; };
  if (!ok_first(static_cast<unsigned char>(s[0]))) return false;
  return std::all_of(s.begin() + 1, s.end(),
                     [&](char c) { return ok_rest(static_cast<unsigned char>(c)); });
}

bool is_number(std::string_view s) {
  return !s.empty() && std::all_of(s.begin(), s.end(), [](unsigned char c) {
    return std::isdigit(c) != 0;
  });
}

void append_fragments(std::string_view text, bool is_code, std::uint32_t line,
                      std::vector<Token>& out) {
  std::size_t i = 0;
  while (i < text.size()) {
    while (i < text.size() && is_punctuation(text[i])) ++i;
    std::size_t j = i;
    while (j < text.size() && !is_punctuation(text[j])) ++j;
    if (j > i) out.push_back(Token{std::string(text.substr(i, j - i)), is_code, line});
    i = j;
  }
}

// "pkg.sub.Class" -> non-code package fragments plus a code simple name.
void append_qualified(std::string_view qualified, std::uint32_t line,
                      std::size_t code_tail, std::vector<Token>& out) {
  std::vector<std::string_view> parts;
  std::size_t pos = 0;
  while (true) {
    std::size_t dot = qualified.find('.', pos);
    parts.push_back(qualified.substr(pos, dot == std::string_view::npos
                                              ? std::string_view::npos
                                              : dot - pos));
    if (dot == std::string_view::npos) break;
    pos = dot + 1;
  }
  for (std::size_t k = 0; k < parts.size(); ++k) {
    const bool code = k + code_tail >= parts.size();
    append_fragments(parts[k], code, line, out);
  }
}

std::vector<Token> message_tokens(std::string_view message, std::uint32_t line,
                                  const std::vector<std::string>& identifiers) {
  auto tokens = detect_code_tokens(tokenize_prose(message), identifiers);
  tokens = strip_punctuation(tokens);
  for (Token& t : tokens) t.line = line;
  return tokens;
}

bool is_step_marker(std::string_view text) {
  static const std::regex leading(R"((^|\n)\s*\d+[.)]\s+\S)");
  static const std::regex inline_step(R"((^|\s)\d+[.)]\s+[A-Za-z])");
  if (std::regex_search(text.begin(), text.end(), leading)) return true;
  auto begin = std::regex_iterator<std::string_view::const_iterator>(
      text.begin(), text.end(), inline_step);
  return std::distance(begin, decltype(begin){}) >= 2;
}

PatternDictionary from_json(const nlohmann::json& j) {
  PatternDictionary d;
  auto read_list = [](const nlohmann::json& v) {
    std::vector<std::string> out;
    for (const auto& s : v) out.push_back(lower(s.get<std::string>()));
    return out;
  };
  if (j.contains("OB")) {
    const auto& ob = j.at("OB");
    if (ob.is_array()) {
      d.ob["keywords"] = read_list(ob);
    } else {
      for (const auto& [group, words] : ob.items()) d.ob[group] = read_list(words);
    }
  }
  if (j.contains("EB")) d.eb = read_list(j.at("EB"));
  if (j.contains("S2R")) d.s2r = read_list(j.at("S2R"));
  if (j.contains("substitutes")) {
    for (const auto& [key, subs] : j.at("substitutes").items()) {
      d.substitutes[lower(key)] = read_list(subs);
    }
  }
  if (j.contains("identifiers")) {
    d.identifiers = j.at("identifiers").get<std::vector<std::string>>();
  }
  return d;
}

}  // namespace

PatternDictionary parse_pattern_dictionary(std::string_view json_text) {
  try {
    return from_json(nlohmann::json::parse(json_text));
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("pattern dictionary: ") + e.what());
  }
}

PatternDictionary load_pattern_dictionary(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open pattern dictionary " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_pattern_dictionary(buf.str());
}

const PatternDictionary& default_pattern_dictionary() {
  static const PatternDictionary d = parse_pattern_dictionary(kDefaultPatternsJson);
  return d;
}

const std::vector<std::string>& default_library_prefixes() {
  static const std::vector<std::string> prefixes = {"java.", "javax.", "sun.",
                                                    "jdk."};
  return prefixes;
}

bool is_punctuation(char c) {
  return c != '_' && std::ispunct(static_cast<unsigned char>(c)) != 0;
}

bool is_punctuation_token(std::string_view text) {
  return !text.empty() && std::all_of(text.begin(), text.end(), is_punctuation);
}

std::vector<Token> tokenize_prose(std::string_view text) {
  static constexpr std::string_view kOpen = "(\"'[{<";
  static constexpr std::string_view kClose = ".,;:!?)\"']}>";
  std::vector<Token> out;
  for (std::string_view word : split_ws(text)) {
    if (is_punctuation_token(word)) {
      out.push_back(Token{std::string(word), false, 0});
      continue;
    }
    while (word.size() > 1 && kOpen.find(word.front()) != std::string_view::npos) {
      out.push_back(Token{std::string(1, word.front()), false, 0});
      word.remove_prefix(1);
    }
    std::vector<Token> trailing;
    while (word.size() > 1 && kClose.find(word.back()) != std::string_view::npos) {
      if (word.size() > 2 && word.ends_with("()")) break;
      trailing.push_back(Token{std::string(1, word.back()), false, 0});
      word.remove_suffix(1);
    }
    out.push_back(Token{std::string(word), false, 0});
    out.insert(out.end(), trailing.rbegin(), trailing.rend());
  }
  return out;
}

std::string render_tokens(const std::vector<Token>& tokens) {
  static constexpr std::string_view kAttachLeft = ".,;:!?)]}";
  std::string out;
  bool suppress_space = true;
  for (const Token& t : tokens) {
    const bool attach = t.text.size() == 1 &&
                        kAttachLeft.find(t.text[0]) != std::string_view::npos;
    if (!suppress_space && !attach) out += ' ';
    out += t.text;
    suppress_space = t.text == "(" || t.text == "[" || t.text == "{";
  }
  return out;
}

std::string render_sample(const Sample& sample) {
  if (sample.kind != SampleKind::kStackTrace &&
      sample.kind != SampleKind::kCodeSnippet) {
    return render_tokens(sample.tokens);
  }
  std::string out;
  for (std::size_t i = 0; i < sample.tokens.size(); ++i) {
    if (i > 0) out += sample.tokens[i].line != sample.tokens[i - 1].line ? '\n' : ' ';
    out += sample.tokens[i].text;
  }
  return out;
}

// ---------------------------------------------------------------------------

TraceExtraction extract_stack_traces(std::string_view text,
                                     const std::vector<std::string>& prefixes) {
  const auto lines = split_lines(text);
  auto blocks = find_traces(lines, prefixes);
  TraceExtraction out;
  std::vector<bool> in_trace(lines.size(), false);
  for (TraceBlock& b : blocks) {
    for (std::size_t i = b.first; i <= b.last; ++i) in_trace[i] = true;
    out.traces.push_back(std::move(b.frames));
  }
  bool first = true;
  for (std::size_t i = 0; i < lines.size(); ++i) {
    if (in_trace[i]) continue;
    if (!first) out.remainder += '\n';
    out.remainder += lines[i].text;
    first = false;
  }
  return out;
}

StackTrace reduce_stack_trace(const StackTrace& trace,
                              const std::vector<std::string>& prefixes) {
  if (trace.empty()) return {};
  std::vector<std::size_t> keep = {0};
  std::size_t app_seen = 0;
  for (std::size_t i = 1; i < trace.size() && app_seen < 3; ++i) {
    const StackFrame& f = trace[i];
    if (f.kind == FrameKind::kExceptionHeader || f.kind == FrameKind::kCausedBy) {
      continue;
    }
    const std::string qualified =
        f.class_ref.value_or(std::string()) + ".";
    if (!has_library_prefix(qualified, prefixes)) {
      keep.push_back(i);
      ++app_seen;
    }
  }
  keep.push_back(trace.size() - 1);
  std::sort(keep.begin(), keep.end());
  keep.erase(std::unique(keep.begin(), keep.end()), keep.end());
  StackTrace out;
  for (std::size_t i : keep) out.push_back(trace[i]);
  return out;
}

std::vector<Token> tokenize_stack_trace(const StackTrace& trace) {
  std::vector<Token> out;
  for (std::size_t f = 0; f < trace.size(); ++f) {
    const auto line = static_cast<std::uint32_t>(f);
    const StackFrame& frame = trace[f];
    std::string_view raw = frame.raw;
    Match m;
    if (frame.kind == FrameKind::kExceptionHeader ||
        frame.kind == FrameKind::kCausedBy) {
      const std::string& name = frame.class_ref.value_or(std::string());
      const std::size_t at = raw.find(name);
      append_fragments(raw.substr(0, at), false, line, out);
      append_qualified(name, line, 1, out);
      std::string_view rest =
          at == std::string_view::npos ? std::string_view() : raw.substr(at + name.size());
      auto msg = message_tokens(rest, line, {});
      out.insert(out.end(), msg.begin(), msg.end());
    } else if (regex_match_sv(raw, m, frame_re())) {
      out.push_back(Token{"at", false, line});
      append_qualified(m[1].str(), line, 2, out);
      append_fragments(m[2].str(), false, line, out);
    } else {
      append_fragments(raw, false, line, out);
    }
  }
  return out;
}

// ---------------------------------------------------------------------------

bool is_code_line(std::string_view line) {
  const std::string_view t = trim(line);
  if (t.empty()) return false;
  const char last = t.back();
  if (last == '{' || last == '}' || last == ';') return true;
  if (t.starts_with("@") || t.starts_with("//") || t.starts_with("/*")) return true;
  std::size_t n = 0;
  while (n < t.size() && (std::isalnum(static_cast<unsigned char>(t[n])) || t[n] == '_')) ++n;
  return n > 0 && code_keywords().contains(std::string(t.substr(0, n))) &&
         (n == t.size() || !std::isalnum(static_cast<unsigned char>(t[n])));
}

namespace {

// [first, last] line ranges of snippets among lines not masked out.
std::vector<std::pair<std::size_t, std::size_t>> find_snippets(
    const std::vector<Line>& lines, const std::vector<bool>& masked) {
  std::vector<std::pair<std::size_t, std::size_t>> out;
  std::size_t i = 0;
  while (i < lines.size()) {
    if (masked[i] || !is_code_line(lines[i].text)) {
      ++i;
      continue;
    }
    std::size_t j = i;
    while (j + 1 < lines.size() && !masked[j + 1] && is_code_line(lines[j + 1].text)) ++j;
    if (j > i) out.emplace_back(i, j);
    i = j + 1;
  }
  return out;
}

std::string join_lines(const std::vector<Line>& lines, std::size_t first,
                       std::size_t last) {
  std::string out;
  for (std::size_t i = first; i <= last; ++i) {
    if (i > first) out += '\n';
    out += lines[i].text;
  }
  return out;
}

}  // namespace

SnippetExtraction extract_code_snippets(std::string_view text) {
  const auto lines = split_lines(text);
  std::vector<bool> masked(lines.size(), false);
  const auto ranges = find_snippets(lines, masked);
  SnippetExtraction out;
  std::vector<bool> in_snippet(lines.size(), false);
  for (const auto& [a, b] : ranges) {
    out.snippets.push_back(join_lines(lines, a, b));
    for (std::size_t i = a; i <= b; ++i) in_snippet[i] = true;
  }
  bool first = true;
  for (std::size_t i = 0; i < lines.size(); ++i) {
    if (in_snippet[i]) continue;
    if (!first) out.remainder += '\n';
    out.remainder += lines[i].text;
    first = false;
  }
  return out;
}

std::vector<Token> strip_punctuation(const std::vector<Token>& tokens) {
  std::vector<Token> out;
  for (const Token& t : tokens) append_fragments(t.text, t.is_code, t.line, out);
  return out;
}

std::vector<Token> tokenize_code_snippet(std::string_view snippet) {
  std::vector<Token> raw;
  const auto lines = split_lines(snippet);
  for (std::size_t i = 0; i < lines.size(); ++i) {
    for (std::string_view w : split_ws(lines[i].text)) {
      raw.push_back(Token{std::string(w), false, static_cast<std::uint32_t>(i)});
    }
  }
  auto out = strip_punctuation(raw);
  for (Token& t : out) {
    t.is_code = is_identifier(t.text) && !is_number(t.text) &&
                !java_reserved().contains(t.text);
  }
  return out;
}

// ---------------------------------------------------------------------------

std::set<SampleKind> category_set(std::string_view text,
                                  const PatternDictionary& patterns) {
  static const std::regex word_re(R"([A-Za-z][A-Za-z']*)");
  std::set<std::string> words;
  for (auto it = std::regex_iterator<std::string_view::const_iterator>(
           text.begin(), text.end(), word_re);
       it != decltype(it){}; ++it) {
    std::string w = lower(it->str());
    while (!w.empty() && w.back() == '\'') w.pop_back();
    words.insert(std::move(w));
  }
  auto any_of = [&](const std::vector<std::string>& keys) {
    return std::any_of(keys.begin(), keys.end(),
                       [&](const std::string& k) { return words.contains(k); });
  };
  std::set<SampleKind> out;
  for (const auto& [group, keys] : patterns.ob) {
    if (any_of(keys)) {
      out.insert(SampleKind::kOB);
      break;
    }
  }
  if (any_of(patterns.eb)) out.insert(SampleKind::kEB);
  if (any_of(patterns.s2r) || is_step_marker(text)) out.insert(SampleKind::kS2R);
  return out;
}

SampleKind classify_text(std::string_view text, const PatternDictionary& patterns) {
  const auto cats = category_set(text, patterns);
  for (SampleKind k : {SampleKind::kS2R, SampleKind::kEB, SampleKind::kOB}) {
    if (cats.contains(k)) return k;
  }
  return SampleKind::kOther;
}

std::vector<Sample> classify_paragraphs(std::string_view text,
                                        const PatternDictionary& patterns) {
  const auto lines = split_lines(text);
  std::vector<Sample> out;
  std::size_t i = 0;
  while (i < lines.size()) {
    if (is_blank(lines[i].text)) {
      ++i;
      continue;
    }
    std::size_t j = i;
    while (j + 1 < lines.size() && !is_blank(lines[j + 1].text)) ++j;
    const std::string_view para =
        text.substr(lines[i].start, lines[j].end - lines[i].start);
    Sample s;
    s.kind = classify_text(para, patterns);
    s.tokens = detect_code_tokens(tokenize_prose(para), patterns.identifiers);
    s.source_span = {lines[i].start, lines[j].end};
    out.push_back(std::move(s));
    i = j + 1;
  }
  return out;
}

bool looks_like_code_token(std::string_view text) {
  static const std::regex dotted(R"(^[A-Za-z_$][\w$]*(\.[A-Za-z_$][\w$]*)+$)");
  static const std::regex camel(R"([a-z0-9][A-Z])");
  static const std::regex snake(R"(^[A-Za-z0-9]+(_[A-Za-z0-9]+)+$)");
  if (text.size() > 2 && text.ends_with("()")) {
    const std::string_view base = text.substr(0, text.size() - 2);
    if (is_identifier(base) || regex_match_sv(base, dotted)) return true;
  }
  if (regex_match_sv(text, dotted)) {
    // Abbreviations such as "e.g" consist of single-letter segments.
    std::size_t longest = 0;
    std::size_t run = 0;
    for (char c : text) {
      run = c == '.' ? 0 : run + 1;
      longest = std::max(longest, run);
    }
    if (longest >= 2) return true;
  }
  if (is_identifier(text) && std::regex_search(text.begin(), text.end(), camel)) {
    return true;
  }
  if (regex_match_sv(text, snake) &&
      std::any_of(text.begin(), text.end(),
                  [](unsigned char c) { return std::isalpha(c) != 0; })) {
    return true;
  }
  return false;
}

std::vector<Token> detect_code_tokens(std::vector<Token> tokens,
                                      const std::vector<std::string>& identifiers) {
  for (Token& t : tokens) {
    t.is_code = looks_like_code_token(t.text) ||
                std::find(identifiers.begin(), identifiers.end(), t.text) !=
                    identifiers.end();
  }
  return tokens;
}

// ---------------------------------------------------------------------------

StructuredBugReport structure_bug_report(const BugReport& bug,
                                         const ExtractOptions& options) {
  const std::string text = bug.full_text();
  const auto lines = split_lines(text);
  const auto& prefixes = options.library_prefixes;

  enum class Role { kText, kTrace, kSnippet };
  std::vector<Role> role(lines.size(), Role::kText);
  std::vector<std::size_t> block_of(lines.size(), 0);

  auto traces = find_traces(lines, prefixes);
  std::vector<bool> masked(lines.size(), false);
  for (std::size_t b = 0; b < traces.size(); ++b) {
    for (std::size_t i = traces[b].first; i <= traces[b].last; ++i) {
      role[i] = Role::kTrace;
      block_of[i] = b;
      masked[i] = true;
    }
  }
  const auto snippets = find_snippets(lines, masked);
  for (std::size_t s = 0; s < snippets.size(); ++s) {
    for (std::size_t i = snippets[s].first; i <= snippets[s].second; ++i) {
      role[i] = Role::kSnippet;
      block_of[i] = s;
    }
  }

  StructuredBugReport out;
  out.bug_id = bug.id;
  std::size_t i = 0;
  while (i < lines.size()) {
    if (role[i] == Role::kTrace) {
      const TraceBlock& b = traces[block_of[i]];
      Sample s;
      s.kind = SampleKind::kStackTrace;
      s.tokens = tokenize_stack_trace(reduce_stack_trace(b.frames, prefixes));
      s.source_span = {lines[b.first].start, lines[b.last].end};
      out.samples.push_back(std::move(s));
      i = b.last + 1;
      continue;
    }
    if (role[i] == Role::kSnippet) {
      const auto [a, b] = snippets[block_of[i]];
      Sample s;
      s.kind = SampleKind::kCodeSnippet;
      s.tokens = tokenize_code_snippet(join_lines(lines, a, b));
      s.source_span = {lines[a].start, lines[b].end};
      out.samples.push_back(std::move(s));
      i = b + 1;
      continue;
    }
    if (is_blank(lines[i].text)) {
      ++i;
      continue;
    }
    std::size_t j = i;
    while (j + 1 < lines.size() && role[j + 1] == Role::kText &&
           !is_blank(lines[j + 1].text)) {
      ++j;
    }
    const std::string_view para(text.data() + lines[i].start,
                                lines[j].end - lines[i].start);
    Sample s;
    s.kind = classify_text(para, options.patterns);
    s.tokens = detect_code_tokens(tokenize_prose(para), options.patterns.identifiers);
    s.source_span = {lines[i].start, lines[j].end};
    out.samples.push_back(std::move(s));
    i = j + 1;
  }
  return out;
}

}  // namespace bugaug
