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

// Code-token augmentation. Substitutes come from the class and method names
// of a bug's inducing changesets, ranked by edit distance.

#ifndef BUGAUG_CODE_OPS_H_
#define BUGAUG_CODE_OPS_H_

#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "bugaug/corpus.h"
#include "bugaug/rng.h"
#include "bugaug/types.h"

namespace bugaug {

struct CodeNameDictionary {
  std::string bug_id;
  std::vector<std::string> names;  // sorted, unique
};

// Method-like identifiers (name followed by '(') on added/removed lines,
// plus class declarations.
std::vector<std::string> mine_method_names(const Hunk& hunk);

CodeNameDictionary mine_code_names(const Corpus& corpus, std::string_view bug_id);

struct CodeOpConfig {
  std::size_t top_k = 20;
  std::size_t insert_radius = 3;
  std::size_t swap_radius = 3;
  std::uint64_t seed = 0;

  void validate() const;
};

// Unit-cost insert/delete/substitute distance over bytes. Case-sensitive.
std::size_t levenshtein(std::string_view a, std::string_view b);

// The k names closest to `token` (itself excluded), ordered by distance and
// then lexicographically.
std::vector<std::string> top_k_substitutes(std::string_view token,
                                           const std::vector<std::string>& names,
                                           std::size_t k);

enum class SwapContext { kStackTrace, kSnippet, kProse };

SwapContext swap_context_for(SampleKind kind);

// One entry per operator application that changed the tokens.
struct CodeOpRecord {
  enum class Op { kReplace, kInsert, kSwap } op;
  std::size_t source = 0;  // selected code token
  std::size_t target = 0;  // insert position or swap partner
  std::uint32_t source_line = 0;
  std::uint32_t target_line = 0;
  std::string before;
  std::string after;
};

using CodeAuditLog = std::vector<CodeOpRecord>;

std::string_view to_string(CodeOpRecord::Op op);

std::vector<Token> code_token_replace(std::vector<Token> tokens,
                                      const std::vector<std::string>& names,
                                      std::size_t top_k, Rng& rng,
                                      CodeAuditLog* audit = nullptr);

// Inserts a substitute within `radius` positions of the selected token.
std::vector<Token> code_token_insert(std::vector<Token> tokens,
                                     const std::vector<std::string>& names,
                                     std::size_t top_k, std::size_t radius,
                                     Rng& rng, CodeAuditLog* audit = nullptr);

// Stack traces swap only between consecutive lines; everything else within
// `radius` positions.
std::vector<Token> code_token_swap(std::vector<Token> tokens, SwapContext context,
                                   std::size_t radius, Rng& rng,
                                   CodeAuditLog* audit = nullptr);

// replace -> insert -> swap, once each. Never removes a token.
Sample augment_code_sample(const Sample& sample, const CodeNameDictionary& dict,
                           const CodeOpConfig& config, Rng& rng,
                           CodeAuditLog* audit = nullptr);

}  // namespace bugaug

#endif  // BUGAUG_CODE_OPS_H_
