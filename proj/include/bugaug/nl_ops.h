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

// Natural-language augmentation of OB/EB/S2R paragraphs: dictionary
// replace/insert, random swap/delete, paraphrasing and quality control.

#ifndef BUGAUG_NL_OPS_H_
#define BUGAUG_NL_OPS_H_

#include <chrono>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "bugaug/extract.h"
#include "bugaug/rng.h"
#include "bugaug/types.h"

namespace bugaug {

struct AugConfig {
  double lambda_replace = 0.1;
  double lambda_insert = 0.1;
  double lambda_swap = 0.1;
  double lambda_delete = 0.05;
  int qc_max_retries = 10;
  std::uint64_t seed = 0;

  // Throws std::invalid_argument on out-of-range fields.
  void validate() const;
};

enum class NlOp { kReplace, kInsert, kSwap, kDelete };

// Number of applications of an operator on a paragraph of token_count tokens.
// Replace, insert and swap apply at least once on paragraphs of two or more
// tokens; delete uses the plain floor.
std::size_t op_budget(std::size_t token_count, double lambda, NlOp op);

// Keyword -> substitutes. Lookups are case-insensitive.
class SubstituteDictionary {
 public:
  SubstituteDictionary() = default;

  // Every keyword of an OB group named "negative_verbs*" maps to its group
  // peers; explicit `substitutes` entries are merged in after.
  static SubstituteDictionary from_patterns(const PatternDictionary& patterns);

  // Lowercases, drops self-maps and duplicates. Keywords left with no
  // substitute are not stored.
  void add(std::string_view keyword, const std::vector<std::string>& substitutes);

  const std::vector<std::string>* find(std::string_view word) const;

  bool empty() const { return entries_.empty(); }
  const std::map<std::string, std::vector<std::string>, std::less<>>& entries()
      const {
    return entries_;
  }

 private:
  std::map<std::string, std::vector<std::string>, std::less<>> entries_;
};

// Applies the capitalization pattern of `like` to `word`.
std::string match_case(std::string_view word, std::string_view like);

// Tokens the NL operators may touch: not code, not punctuation.
bool is_nl_eligible(const Token& token);

std::vector<Token> dictionary_replace(std::vector<Token> tokens,
                                      const SubstituteDictionary& dict,
                                      std::size_t n, Rng& rng);
std::vector<Token> dictionary_insert(std::vector<Token> tokens,
                                     const SubstituteDictionary& dict,
                                     std::size_t n, Rng& rng);
std::vector<Token> random_swap(std::vector<Token> tokens, std::size_t n,
                               Rng& rng);
std::vector<Token> random_delete(std::vector<Token> tokens, std::size_t n,
                                 Rng& rng);

// ---------------------------------------------------------------------------
// Paraphrasing.

class Paraphraser {
 public:
  virtual ~Paraphraser() = default;
  // Non-empty output for non-empty input.
  virtual std::string paraphrase(const std::string& text, Rng& rng) = 0;
  virtual std::string name() const = 0;
};

class IdentityParaphraser : public Paraphraser {
 public:
  std::string paraphrase(const std::string& text, Rng&) override { return text; }
  std::string name() const override { return "identity"; }
};

// One dictionary-replace pass, then a rotation of the clause order.
// Separators stay in place, so "A, B." becomes "B, A.".
class ShuffleParaphraser : public Paraphraser {
 public:
  ShuffleParaphraser(SubstituteDictionary dict, std::vector<std::string> identifiers)
      : dict_(std::move(dict)), identifiers_(std::move(identifiers)) {}

  std::string paraphrase(const std::string& text, Rng& rng) override;
  std::string name() const override { return "shuffle"; }

 private:
  SubstituteDictionary dict_;
  std::vector<std::string> identifiers_;
};

// Round-trip through an external translation service: POST text/plain to
// the URL, expect text/plain back. Any failure falls back to the input.
class ServiceParaphraser : public Paraphraser {
 public:
  explicit ServiceParaphraser(std::string url,
                              std::chrono::seconds timeout = std::chrono::seconds(10));

  std::string paraphrase(const std::string& text, Rng& rng) override;
  std::string name() const override { return "service"; }

  std::size_t failures() const { return failures_; }

 private:
  std::string base_;  // scheme://host:port
  std::string path_;
  std::chrono::seconds timeout_;
  std::size_t failures_ = 0;
};

// "identity", "shuffle" or "service". Throws std::invalid_argument otherwise.
std::unique_ptr<Paraphraser> make_paraphraser(std::string_view kind,
                                              const SubstituteDictionary& dict,
                                              const PatternDictionary& patterns,
                                              const std::string& service_url = "");

// ---------------------------------------------------------------------------
// Paragraph pipeline.

// Code tokens of a paragraph as the extractor would count them.
std::size_t paragraph_code_count(std::string_view text,
                                 const std::vector<std::string>& identifiers);

struct ParagraphAugmentation {
  // Empty when every attempt failed quality control.
  std::optional<Sample> sample;
  int attempts = 0;
  std::vector<std::string> applied_ops;

  bool rejected() const { return !sample.has_value(); }
};

// replace -> insert -> swap -> delete -> paraphrase, then quality control:
// the category set and the code-token count must match the original. Each
// attempt draws from its own stream derived from (stream_seed, attempt).
ParagraphAugmentation augment_paragraph(const Sample& paragraph,
                                        const SubstituteDictionary& dict,
                                        const PatternDictionary& patterns,
                                        const AugConfig& config,
                                        Paraphraser& paraphraser,
                                        std::uint64_t stream_seed);

}  // namespace bugaug

#endif  // BUGAUG_NL_OPS_H_
