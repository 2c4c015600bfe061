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

#include "bugaug/code_ops.h"

#include <algorithm>
#include <numeric>
#include <regex>
#include <set>
#include <stdexcept>

namespace bugaug {
namespace {

const std::set<std::string>& non_method_words() {
  static const std::set<std::string> words = {
      "if",    "for",   "while", "switch", "catch",  "return", "new",
      "synchronized", "super", "this", "throw", "assert", "else", "try",
      "do",    "case",  "sizeof", "instanceof"};
  return words;
}

std::vector<std::size_t> code_indices(const std::vector<Token>& tokens) {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    if (tokens[i].is_code) out.push_back(i);
  }
  return out;
}

}  // namespace

std::vector<std::string> mine_method_names(const Hunk& hunk) {
  static const std::regex call_re(R"(([A-Za-z_$][\w$]*)\s*\()");
  static const std::regex class_re(R"(\b(?:class|interface|enum)\s+([A-Za-z_$][\w$]*))");
  std::set<std::string> names;
  for (const HunkLine& line : hunk.lines) {
    if (line.marker == LineMarker::kContext) continue;
    for (auto it = std::sregex_iterator(line.text.begin(), line.text.end(), call_re);
         it != std::sregex_iterator(); ++it) {
      std::string name = (*it)[1].str();
      if (!non_method_words().contains(name)) names.insert(std::move(name));
    }
    for (auto it = std::sregex_iterator(line.text.begin(), line.text.end(), class_re);
         it != std::sregex_iterator(); ++it) {
      names.insert((*it)[1].str());
    }
  }
  return {names.begin(), names.end()};
}

CodeNameDictionary mine_code_names(const Corpus& corpus, std::string_view bug_id) {
  std::set<std::string> names;
  for (const Hunk* h : corpus.inducing_hunks(bug_id)) {
    if (!h->class_name.empty()) names.insert(h->class_name);
    for (std::string& m : mine_method_names(*h)) names.insert(std::move(m));
  }
  return CodeNameDictionary{std::string(bug_id), {names.begin(), names.end()}};
}

void CodeOpConfig::validate() const {
  if (top_k < 1) throw std::invalid_argument("top_k must be at least 1");
  if (insert_radius < 1 || swap_radius < 1) {
    throw std::invalid_argument("radii must be at least 1");
  }
}

std::size_t levenshtein(std::string_view a, std::string_view b) {
  if (a.size() < b.size()) std::swap(a, b);
  std::vector<std::size_t> row(b.size() + 1);
  std::iota(row.begin(), row.end(), std::size_t{0});
  for (std::size_t i = 1; i <= a.size(); ++i) {
    std::size_t diag = row[0];
    row[0] = i;
    for (std::size_t j = 1; j <= b.size(); ++j) {
      const std::size_t up = row[j];
      row[j] = std::min({row[j] + 1, row[j - 1] + 1,
                         diag + (a[i - 1] == b[j - 1] ? 0 : 1)});
      diag = up;
    }
  }
  return row[b.size()];
}

std::vector<std::string> top_k_substitutes(std::string_view token,
                                           const std::vector<std::string>& names,
                                           std::size_t k) {
  std::vector<std::pair<std::size_t, const std::string*>> scored;
  scored.reserve(names.size());
  for (const std::string& n : names) {
    if (n != token) scored.emplace_back(levenshtein(token, n), &n);
  }
  auto less = [](const auto& x, const auto& y) {
    return x.first != y.first ? x.first < y.first : *x.second < *y.second;
  };
  const std::size_t take = std::min(k, scored.size());
  std::partial_sort(scored.begin(), scored.begin() + static_cast<std::ptrdiff_t>(take),
                    scored.end(), less);
  std::vector<std::string> out;
  out.reserve(take);
  for (std::size_t i = 0; i < take; ++i) {
    if (out.empty() || out.back() != *scored[i].second) out.push_back(*scored[i].second);
  }
  return out;
}

SwapContext swap_context_for(SampleKind kind) {
  switch (kind) {
    case SampleKind::kStackTrace:
      return SwapContext::kStackTrace;
    case SampleKind::kCodeSnippet:
      return SwapContext::kSnippet;
    default:
      return SwapContext::kProse;
  }
}

std::string_view to_string(CodeOpRecord::Op op) {
  switch (op) {
    case CodeOpRecord::Op::kReplace:
      return "code_replace";
    case CodeOpRecord::Op::kInsert:
      return "code_insert";
    case CodeOpRecord::Op::kSwap:
      return "code_swap";
  }
  return "code_replace";
}

std::vector<Token> code_token_replace(std::vector<Token> tokens,
                                      const std::vector<std::string>& names,
                                      std::size_t top_k, Rng& rng,
                                      CodeAuditLog* audit) {
  const auto codes = code_indices(tokens);
  if (codes.empty()) return tokens;
  const std::size_t i = codes[rng.uniform_index(codes.size())];
  const auto subs = top_k_substitutes(tokens[i].text, names, top_k);
  if (subs.empty()) return tokens;
  const std::string& chosen = subs[rng.uniform_index(subs.size())];
  if (audit != nullptr) {
    audit->push_back({CodeOpRecord::Op::kReplace, i, i, tokens[i].line,
                      tokens[i].line, tokens[i].text, chosen});
  }
  tokens[i].text = chosen;
  return tokens;
}

std::vector<Token> code_token_insert(std::vector<Token> tokens,
                                     const std::vector<std::string>& names,
                                     std::size_t top_k, std::size_t radius,
                                     Rng& rng, CodeAuditLog* audit) {
  const auto codes = code_indices(tokens);
  if (codes.empty()) return tokens;
  const std::size_t i = codes[rng.uniform_index(codes.size())];
  const auto subs = top_k_substitutes(tokens[i].text, names, top_k);
  if (subs.empty()) return tokens;
  const std::string& chosen = subs[rng.uniform_index(subs.size())];
  const std::size_t lo = i >= radius ? i - radius : 0;
  const std::size_t hi = std::min(tokens.size(), i + radius);
  const std::size_t at = rng.uniform_between(lo, hi);
  // Keep line indices monotone: take the line of the left neighbour.
  const std::uint32_t line = at > 0 ? tokens[at - 1].line : tokens[0].line;
  if (audit != nullptr) {
    audit->push_back({CodeOpRecord::Op::kInsert, i, at, tokens[i].line, line,
                      tokens[i].text, chosen});
  }
  tokens.insert(tokens.begin() + static_cast<std::ptrdiff_t>(at),
                Token{chosen, true, line});
  return tokens;
}

std::vector<Token> code_token_swap(std::vector<Token> tokens, SwapContext context,
                                   std::size_t radius, Rng& rng,
                                   CodeAuditLog* audit) {
  const auto codes = code_indices(tokens);
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  for (std::size_t a = 0; a < codes.size(); ++a) {
    for (std::size_t b = a + 1; b < codes.size(); ++b) {
      const std::size_t i = codes[a];
      const std::size_t j = codes[b];
      bool legal = false;
      if (context == SwapContext::kStackTrace) {
        const auto li = tokens[i].line;
        const auto lj = tokens[j].line;
        legal = (li > lj ? li - lj : lj - li) == 1;
      } else {
        legal = j - i <= radius;
      }
      if (legal) pairs.emplace_back(i, j);
    }
  }
  if (pairs.empty()) return tokens;
  const auto [i, j] = pairs[rng.uniform_index(pairs.size())];
  if (audit != nullptr) {
    audit->push_back({CodeOpRecord::Op::kSwap, i, j, tokens[i].line, tokens[j].line,
                      tokens[i].text, tokens[j].text});
  }
  std::swap(tokens[i].text, tokens[j].text);
  return tokens;
}

Sample augment_code_sample(const Sample& sample, const CodeNameDictionary& dict,
                           const CodeOpConfig& config, Rng& rng,
                           CodeAuditLog* audit) {
  config.validate();
  Sample out = sample;
  out.tokens = code_token_replace(std::move(out.tokens), dict.names, config.top_k,
                                  rng, audit);
  out.tokens = code_token_insert(std::move(out.tokens), dict.names, config.top_k,
                                 config.insert_radius, rng, audit);
  out.tokens = code_token_swap(std::move(out.tokens), swap_context_for(sample.kind),
                               config.swap_radius, rng, audit);
  return out;
}

}  // namespace bugaug
