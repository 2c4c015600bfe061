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

#include "bugaug/nl_ops.h"

#include <httplib.h>
#include <spdlog/spdlog.h>

#include <algorithm>
#include <cctype>
#include <cmath>
#include <regex>
#include <stdexcept>

namespace bugaug {
namespace {

std::string lower(std::string_view s) {
  std::string out(s);
  for (char& c : out) {
    c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  }
  return out;
}

std::vector<std::size_t> eligible_indices(const std::vector<Token>& tokens) {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    if (is_nl_eligible(tokens[i])) out.push_back(i);
  }
  return out;
}

std::vector<std::size_t> keyword_indices(const std::vector<Token>& tokens,
                                         const SubstituteDictionary& dict) {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    if (is_nl_eligible(tokens[i]) && dict.find(tokens[i].text) != nullptr) {
      out.push_back(i);
    }
  }
  return out;
}

bool is_clause_separator(const Token& t) {
  return t.text == "," || t.text == ";" || t.text == "." || t.text == "!" ||
         t.text == "?" || t.text == ":";
}

}  // namespace

void AugConfig::validate() const {
  for (double l : {lambda_replace, lambda_insert, lambda_swap, lambda_delete}) {
    if (!(l >= 0.0 && l <= 1.0)) {
      throw std::invalid_argument("lambda must lie in [0, 1]");
    }
  }
  if (qc_max_retries < 1) {
    throw std::invalid_argument("qc_max_retries must be at least 1");
  }
}

std::size_t op_budget(std::size_t token_count, double lambda, NlOp op) {
  // Small epsilon so that e.g. 0.1 * 30 floors to 3 regardless of rounding.
  const auto scaled = static_cast<std::size_t>(
      std::floor(lambda * static_cast<double>(token_count) + 1e-9));
  if (op == NlOp::kDelete) return scaled;
  if (token_count < 2) return 0;
  return std::max<std::size_t>(1, scaled);
}

// ---------------------------------------------------------------------------

SubstituteDictionary SubstituteDictionary::from_patterns(
    const PatternDictionary& patterns) {
  SubstituteDictionary dict;
  for (const auto& [group, words] : patterns.ob) {
    if (!group.starts_with("negative_verbs")) continue;
    for (const std::string& w : words) {
      std::vector<std::string> peers;
      for (const std::string& p : words) {
        if (p != w) peers.push_back(p);
      }
      dict.add(w, peers);
    }
  }
  for (const auto& [keyword, subs] : patterns.substitutes) dict.add(keyword, subs);
  return dict;
}

void SubstituteDictionary::add(std::string_view keyword,
                               const std::vector<std::string>& substitutes) {
  const std::string key = lower(keyword);
  if (key.empty()) return;
  std::vector<std::string> merged;
  if (auto it = entries_.find(key); it != entries_.end()) merged = it->second;
  for (const std::string& s : substitutes) {
    std::string sub = lower(s);
    if (sub.empty() || sub == key ||
        std::any_of(sub.begin(), sub.end(),
                    [](unsigned char c) { return std::isspace(c) != 0; }) ||
        std::find(merged.begin(), merged.end(), sub) != merged.end()) {
      continue;
    }
    merged.push_back(std::move(sub));
  }
  if (!merged.empty()) entries_[key] = std::move(merged);
}

const std::vector<std::string>* SubstituteDictionary::find(
    std::string_view word) const {
  auto it = entries_.find(lower(word));
  return it == entries_.end() ? nullptr : &it->second;
}

std::string match_case(std::string_view word, std::string_view like) {
  std::string out(word);
  std::size_t letters = 0;
  bool all_upper = true;
  for (unsigned char c : like) {
    if (std::isalpha(c)) {
      ++letters;
      all_upper = all_upper && std::isupper(c);
    }
  }
  if (letters >= 2 && all_upper) {
    for (char& c : out) c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
  } else if (!like.empty() && std::isupper(static_cast<unsigned char>(like[0])) &&
             !out.empty()) {
    out[0] = static_cast<char>(std::toupper(static_cast<unsigned char>(out[0])));
  }
  return out;
}

bool is_nl_eligible(const Token& token) {
  return !token.is_code && !is_punctuation_token(token.text);
}

std::vector<Token> dictionary_replace(std::vector<Token> tokens,
                                      const SubstituteDictionary& dict,
                                      std::size_t n, Rng& rng) {
  const auto candidates = keyword_indices(tokens, dict);
  for (std::size_t pick : rng.sample_without_replacement(candidates.size(), n)) {
    Token& t = tokens[candidates[pick]];
    const auto& subs = *dict.find(t.text);
    t.text = match_case(subs[rng.uniform_index(subs.size())], t.text);
  }
  return tokens;
}

std::vector<Token> dictionary_insert(std::vector<Token> tokens,
                                     const SubstituteDictionary& dict,
                                     std::size_t n, Rng& rng) {
  const auto candidates = keyword_indices(tokens, dict);
  std::vector<std::string> keywords;
  for (std::size_t pick : rng.sample_without_replacement(candidates.size(), n)) {
    keywords.push_back(tokens[candidates[pick]].text);
  }
  for (const std::string& keyword : keywords) {
    const auto& subs = *dict.find(keyword);
    Token inserted{subs[rng.uniform_index(subs.size())], false, 0};
    const std::size_t at = rng.uniform_index(tokens.size() + 1);
    tokens.insert(tokens.begin() + static_cast<std::ptrdiff_t>(at), std::move(inserted));
  }
  return tokens;
}

std::vector<Token> random_swap(std::vector<Token> tokens, std::size_t n, Rng& rng) {
  // Swapping two eligible tokens keeps the eligible positions fixed.
  const auto eligible = eligible_indices(tokens);
  if (eligible.size() < 2) return tokens;
  for (std::size_t k = 0; k < n; ++k) {
    const std::size_t a = rng.uniform_index(eligible.size());
    std::size_t b = rng.uniform_index(eligible.size() - 1);
    if (b >= a) ++b;
    std::swap(tokens[eligible[a]], tokens[eligible[b]]);
  }
  return tokens;
}

std::vector<Token> random_delete(std::vector<Token> tokens, std::size_t n, Rng& rng) {
  for (std::size_t k = 0; k < n; ++k) {
    const auto eligible = eligible_indices(tokens);
    if (eligible.empty()) break;
    tokens.erase(tokens.begin() +
                 static_cast<std::ptrdiff_t>(eligible[rng.uniform_index(eligible.size())]));
  }
  return tokens;
}

// ---------------------------------------------------------------------------

std::string ShuffleParaphraser::paraphrase(const std::string& text, Rng& rng) {
  auto tokens = detect_code_tokens(tokenize_prose(text), identifiers_);
  const std::size_t budget = op_budget(tokens.size(), 0.1, NlOp::kReplace);
  tokens = dictionary_replace(std::move(tokens), dict_, budget, rng);

  std::vector<Token> prefix;
  std::size_t i = 0;
  while (i < tokens.size() && is_clause_separator(tokens[i])) prefix.push_back(tokens[i++]);
  std::vector<std::vector<Token>> units;
  std::vector<std::vector<Token>> separators;
  while (i < tokens.size()) {
    std::vector<Token> unit;
    while (i < tokens.size() && !is_clause_separator(tokens[i])) unit.push_back(tokens[i++]);
    std::vector<Token> sep;
    while (i < tokens.size() && is_clause_separator(tokens[i])) sep.push_back(tokens[i++]);
    units.push_back(std::move(unit));
    separators.push_back(std::move(sep));
  }
  if (units.size() >= 2) std::rotate(units.begin(), units.begin() + 1, units.end());

  std::vector<Token> out = prefix;
  for (std::size_t u = 0; u < units.size(); ++u) {
    out.insert(out.end(), units[u].begin(), units[u].end());
    out.insert(out.end(), separators[u].begin(), separators[u].end());
  }
  return render_tokens(out);
}

ServiceParaphraser::ServiceParaphraser(std::string url, std::chrono::seconds timeout)
    : timeout_(timeout) {
  static const std::regex url_re(R"(^(https?://[^/]+)(/.*)?$)");
  std::smatch m;
  if (!std::regex_match(url, m, url_re)) {
    throw std::invalid_argument("invalid service URL '" + url + "'");
  }
  base_ = m[1].str();
  path_ = m[2].matched ? m[2].str() : "/";
}

std::string ServiceParaphraser::paraphrase(const std::string& text, Rng&) {
  if (text.empty()) return text;
  httplib::Client client(base_);
  client.set_connection_timeout(timeout_);
  client.set_read_timeout(timeout_);
  client.set_write_timeout(timeout_);
  auto res = client.Post(path_, text, "text/plain");
  if (!res || res->status != 200 || res->body.empty()) {
    ++failures_;
    spdlog::warn("paraphrase service {}{} unavailable ({}); using identity",
                 base_, path_,
                 res ? "HTTP " + std::to_string(res->status)
                     : httplib::to_string(res.error()));
    return text;
  }
  std::string body = res->body;
  while (!body.empty() && (body.back() == '\n' || body.back() == '\r')) body.pop_back();
  return body.empty() ? text : body;
}

std::unique_ptr<Paraphraser> make_paraphraser(std::string_view kind,
                                              const SubstituteDictionary& dict,
                                              const PatternDictionary& patterns,
                                              const std::string& service_url) {
  if (kind == "identity") return std::make_unique<IdentityParaphraser>();
  if (kind == "shuffle") {
    return std::make_unique<ShuffleParaphraser>(dict, patterns.identifiers);
  }
  if (kind == "service") {
    if (service_url.empty()) {
      throw std::invalid_argument("service paraphraser needs a URL");
    }
    return std::make_unique<ServiceParaphraser>(service_url);
  }
  throw std::invalid_argument("unknown paraphraser '" + std::string(kind) + "'");
}

// ---------------------------------------------------------------------------

std::size_t paragraph_code_count(std::string_view text,
                                 const std::vector<std::string>& identifiers) {
  return count_code_tokens(detect_code_tokens(tokenize_prose(text), identifiers));
}

ParagraphAugmentation augment_paragraph(const Sample& paragraph,
                                        const SubstituteDictionary& dict,
                                        const PatternDictionary& patterns,
                                        const AugConfig& config,
                                        Paraphraser& paraphraser,
                                        std::uint64_t stream_seed) {
  if (!is_natural_language(paragraph.kind)) {
    throw std::invalid_argument("augment_paragraph expects an OB, EB or S2R sample");
  }
  config.validate();
  const std::string original = render_tokens(paragraph.tokens);
  const auto original_categories = category_set(original, patterns);
  const std::size_t original_codes =
      paragraph_code_count(original, patterns.identifiers);
  const std::size_t n = paragraph.tokens.size();

  ParagraphAugmentation result;
  for (int attempt = 0; attempt < config.qc_max_retries; ++attempt) {
    ++result.attempts;
    Rng rng(derive_seed(stream_seed, static_cast<std::uint64_t>(attempt)));
    std::vector<std::string> ops;
    auto step = [&](std::vector<Token> before, std::vector<Token> after,
                    const char* name) {
      if (after != before) ops.emplace_back(name);
      return after;
    };
    auto tokens = paragraph.tokens;
    tokens = step(tokens, dictionary_replace(tokens, dict,
                                             op_budget(n, config.lambda_replace, NlOp::kReplace), rng),
                  "replace");
    tokens = step(tokens, dictionary_insert(tokens, dict,
                                            op_budget(n, config.lambda_insert, NlOp::kInsert), rng),
                  "insert");
    tokens = step(tokens, random_swap(tokens, op_budget(n, config.lambda_swap, NlOp::kSwap), rng),
                  "swap");
    tokens = step(tokens, random_delete(tokens, op_budget(n, config.lambda_delete, NlOp::kDelete), rng),
                  "delete");

    const std::string modified = render_tokens(tokens);
    std::string paraphrased = paraphraser.paraphrase(modified, rng);
    if (paraphrased.empty()) paraphrased = modified;
    if (paraphrased != modified) ops.emplace_back("paraphrase");

    auto out_tokens =
        detect_code_tokens(tokenize_prose(paraphrased), patterns.identifiers);
    if (category_set(paraphrased, patterns) != original_categories) continue;
    if (count_code_tokens(out_tokens) != original_codes) continue;

    result.sample = Sample{paragraph.kind, std::move(out_tokens), paragraph.source_span};
    result.applied_ops = std::move(ops);
    return result;
  }
  return result;
}

}  // namespace bugaug
