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

#include "bugaug/builder.h"

#include <algorithm>
#include <numeric>
#include <set>
#include <stdexcept>

#include "bugaug/extract.h"

namespace bugaug {

std::optional<std::size_t> AugmentedBugReport::dropped_index() const {
  for (const SampleProvenance& p : provenance) {
    if (p.dropped) return p.sample_index;
  }
  return std::nullopt;
}

std::string augmented_report_id(const std::string& origin_bug_id,
                                std::uint32_t ordinal) {
  return origin_bug_id + "#aug" + std::to_string(ordinal);
}

std::optional<std::size_t> protected_sample(const StructuredBugReport& report) {
  for (std::size_t i = 0; i < report.samples.size(); ++i) {
    if (report.samples[i].kind == SampleKind::kOB) return i;
  }
  return std::nullopt;
}

AugmentedBugReport build_augmented_report(const StructuredBugReport& structured,
                                          const std::vector<AugmentedSample>& augmented,
                                          double p_drop, std::uint32_t ordinal,
                                          Rng& rng) {
  const std::size_t n = structured.samples.size();
  if (n == 0) {
    throw std::invalid_argument("bug report '" + structured.bug_id +
                                "' has no samples to augment");
  }
  if (augmented.size() != n) {
    throw std::invalid_argument("augmented samples are not aligned with '" +
                                structured.bug_id + "'");
  }

  AugmentedBugReport report;
  report.id = augmented_report_id(structured.bug_id, ordinal);
  report.origin_bug_id = structured.bug_id;
  report.permutation.resize(n);
  std::iota(report.permutation.begin(), report.permutation.end(), std::size_t{0});
  rng.shuffle(report.permutation);

  std::optional<std::size_t> dropped;
  if (n > 1 && rng.bernoulli(p_drop)) {
    const auto keep = protected_sample(structured);
    std::vector<std::size_t> droppable;
    for (std::size_t i = 0; i < n; ++i) {
      if (i != keep) droppable.push_back(i);
    }
    if (!droppable.empty()) dropped = droppable[rng.uniform_index(droppable.size())];
  }
  if (dropped) std::erase(report.permutation, *dropped);

  for (std::size_t i = 0; i < n; ++i) {
    report.provenance.push_back({i, augmented[i].applied_ops, dropped == i});
  }
  report.samples = replay_samples(augmented, report);
  return report;
}

std::vector<Sample> replay_samples(const std::vector<AugmentedSample>& augmented,
                                   const AugmentedBugReport& report) {
  std::vector<Sample> out;
  out.reserve(report.permutation.size());
  for (std::size_t i : report.permutation) out.push_back(augmented.at(i).sample);
  return out;
}

std::string validate_augmented_report(const StructuredBugReport& original,
                                      const AugmentedBugReport& report) {
  const std::size_t n = original.samples.size();
  if (n == 0) return "original report is empty";
  if (report.origin_bug_id != original.bug_id) return "origin bug id mismatch";
  if (report.provenance.size() != n) return "provenance is not aligned";
  const std::size_t m = report.samples.size();
  if (m != n && m + 1 != n) return "more than one sample dropped";
  if (report.permutation.size() != m) return "permutation does not match samples";

  std::set<std::size_t> seen;
  for (std::size_t k = 0; k < m; ++k) {
    const std::size_t i = report.permutation[k];
    if (i >= n || !seen.insert(i).second) return "permutation is not injective";
    if (report.samples[k].kind != original.samples[i].kind) {
      return "sample kind changed at output position " + std::to_string(k);
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    const SampleProvenance& p = report.provenance[i];
    if (p.sample_index != i) return "provenance out of order";
    if (p.dropped == seen.contains(i)) return "dropped flag inconsistent";
  }
  if (m + 1 == n) {
    if (n == 1) return "sole sample dropped";
    if (report.dropped_index() == protected_sample(original)) {
      return "protected OB sample dropped";
    }
  }
  return {};
}

std::string render_report(const std::vector<Sample>& samples) {
  std::string out;
  for (const Sample& s : samples) {
    std::string text = render_sample(s);
    if (text.empty()) continue;
    if (!out.empty()) out += "\n\n";
    out += text;
  }
  return out;
}

// ---------------------------------------------------------------------------

ReportAugmenter::ReportAugmenter(std::map<std::string, StructuredBugReport> structured,
                                 std::map<std::string, CodeNameDictionary> code_names,
                                 SubstituteDictionary substitutes,
                                 PatternDictionary patterns, Paraphraser& paraphraser,
                                 AugmenterOptions options)
    : structured_(std::move(structured)),
      code_names_(std::move(code_names)),
      substitutes_(std::move(substitutes)),
      patterns_(std::move(patterns)),
      paraphraser_(paraphraser),
      options_(std::move(options)) {
  options_.nl.validate();
  options_.code.validate();
  if (!(options_.p_drop >= 0.0 && options_.p_drop <= 1.0)) {
    throw std::invalid_argument("p_drop must lie in [0, 1]");
  }
}

const StructuredBugReport& ReportAugmenter::structured(const std::string& bug_id) const {
  auto it = structured_.find(bug_id);
  if (it == structured_.end()) {
    throw std::out_of_range("no structured report for bug '" + bug_id + "'");
  }
  return it->second;
}

std::vector<AugmentedSample> ReportAugmenter::augment_samples(
    const StructuredBugReport& report, std::uint32_t ordinal) {
  static const CodeNameDictionary kEmpty;
  auto names_it = code_names_.find(report.bug_id);
  const CodeNameDictionary& names =
      names_it == code_names_.end() ? kEmpty : names_it->second;

  std::vector<AugmentedSample> out;
  out.reserve(report.samples.size());
  for (std::size_t i = 0; i < report.samples.size(); ++i) {
    const Sample& original = report.samples[i];
    AugmentedSample aug{original, {}};
    if (is_natural_language(original.kind)) {
      ++stats_.paragraphs;
      auto result = augment_paragraph(
          original, substitutes_, patterns_, options_.nl, paraphraser_,
          derive_seed(options_.nl.seed, options_.stage, report.bug_id,
                      std::uint64_t{ordinal}, std::uint64_t{i}, std::string_view("nl")));
      if (result.rejected()) {
        ++stats_.qc_rejections;
        aug.applied_ops.emplace_back("qc_fallback");
      } else {
        aug.sample = std::move(*result.sample);
        aug.applied_ops = std::move(result.applied_ops);
      }
    }
    if (count_code_tokens(aug.sample.tokens) > 0) {
      ++stats_.code_samples;
      Rng rng(derive_seed(options_.code.seed, options_.stage, report.bug_id,
                          std::uint64_t{ordinal}, std::uint64_t{i},
                          std::string_view("code")));
      CodeAuditLog audit;
      aug.sample = augment_code_sample(aug.sample, names, options_.code, rng, &audit);
      for (const CodeOpRecord& r : audit) aug.applied_ops.emplace_back(to_string(r.op));
    }
    out.push_back(std::move(aug));
  }
  return out;
}

AugmentedBugReport ReportAugmenter::augment(const std::string& origin_bug_id,
                                            std::uint32_t ordinal) {
  const StructuredBugReport& report = structured(origin_bug_id);
  const auto samples = augment_samples(report, ordinal);
  Rng rng(derive_seed(options_.seed, options_.stage, origin_bug_id,
                      std::uint64_t{ordinal}, std::string_view("assemble")));
  AugmentedBugReport out =
      build_augmented_report(report, samples, options_.p_drop, ordinal, rng);
  if (out.dropped_index()) ++stats_.dropped;
  return out;
}

// ---------------------------------------------------------------------------

namespace {

// Positive sample indices grouped by origin bug, bugs in ascending id order.
std::vector<std::size_t> positives_by_origin(const Dataset& d) {
  std::vector<std::size_t> idx;
  for (std::size_t i = 0; i < d.samples.size(); ++i) {
    if (d.samples[i].label == Label::kPositive) idx.push_back(i);
  }
  std::stable_sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
    return d.samples[a].origin_bug_id < d.samples[b].origin_bug_id;
  });
  return idx;
}

}  // namespace

GeneratedSet generate_augmented_set(const Dataset& d_ori, std::uint32_t factor,
                                    AugmentSource& augmenter,
                                    NegativeSampler& negatives, std::uint64_t seed) {
  if (factor < 1) throw std::invalid_argument("factor must be at least 1");
  GeneratedSet out;
  out.dataset.name = "D_aug";
  out.dataset.samples = d_ori.samples;

  std::map<std::string, std::uint32_t> next_ordinal;
  for (std::size_t i : positives_by_origin(d_ori)) {
    const TrainingSample& pos = d_ori.samples[i];
    for (std::uint32_t r = 0; r < factor; ++r) {
      const std::uint32_t ordinal = ++next_ordinal[pos.origin_bug_id];
      AugmentedBugReport report = augmenter.augment(pos.origin_bug_id, ordinal);
      out.dataset.samples.push_back({report.id, pos.origin_bug_id, pos.hunk_id,
                                     pos.class_name, Label::kPositive});
      Rng rng(derive_seed(seed, std::string_view("aug_negative"), report.id));
      out.dataset.samples.push_back(make_sample(
          report.id, pos.origin_bug_id, negatives.draw(pos.origin_bug_id, rng),
          Label::kNegative));
      out.reports.push_back(std::move(report));
    }
  }
  return out;
}

Dataset generate_repeated_set(const Dataset& d_ori, std::uint32_t factor,
                              NegativeSampler& negatives, std::uint64_t seed) {
  if (factor < 1) throw std::invalid_argument("factor must be at least 1");
  Dataset out;
  out.name = "D_rep";
  out.samples = d_ori.samples;
  const auto positives = positives_by_origin(d_ori);
  for (std::uint32_t r = 1; r < factor; ++r) {
    for (std::size_t k = 0; k < positives.size(); ++k) {
      const TrainingSample& pos = d_ori.samples[positives[k]];
      out.samples.push_back(pos);
      Rng rng(derive_seed(seed, std::string_view("rep_negative"), pos.origin_bug_id,
                          std::uint64_t{r}, std::uint64_t{k}));
      out.samples.push_back(make_sample(pos.bug_ref, pos.origin_bug_id,
                                        negatives.draw(pos.origin_bug_id, rng),
                                        Label::kNegative));
    }
  }
  return out;
}

}  // namespace bugaug
