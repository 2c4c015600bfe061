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

// Assembly of augmented bug reports and the n-fold training sets built from
// them.

#ifndef BUGAUG_BUILDER_H_
#define BUGAUG_BUILDER_H_

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "bugaug/code_ops.h"
#include "bugaug/corpus.h"
#include "bugaug/nl_ops.h"
#include "bugaug/rng.h"
#include "bugaug/types.h"

namespace bugaug {

// An augmented (or quality-control fallback) counterpart of one original
// sample, with the operators that produced it.
struct AugmentedSample {
  Sample sample;
  std::vector<std::string> applied_ops;
};

struct SampleProvenance {
  std::size_t sample_index = 0;  // index in the original report
  std::vector<std::string> applied_ops;
  bool dropped = false;
};

struct AugmentedBugReport {
  std::string id;  // origin_bug_id + "#aug" + ordinal
  std::string origin_bug_id;
  std::vector<Sample> samples;
  // One entry per original sample, by original index.
  std::vector<SampleProvenance> provenance;
  // Original indices in output order; the dropped index is absent.
  std::vector<std::size_t> permutation;

  std::optional<std::size_t> dropped_index() const;
};

std::string augmented_report_id(const std::string& origin_bug_id,
                                std::uint32_t ordinal);

// Index of the sample that may never be dropped: the first OB, which
// usually carries the summary. Empty if the report has no OB.
std::optional<std::size_t> protected_sample(const StructuredBugReport& report);

// Uniform permutation of the augmented samples, then with probability p_drop
// one uniformly chosen droppable sample is removed. Throws
// std::invalid_argument for empty reports or misaligned inputs.
AugmentedBugReport build_augmented_report(const StructuredBugReport& structured,
                                          const std::vector<AugmentedSample>& augmented,
                                          double p_drop, std::uint32_t ordinal,
                                          Rng& rng);

// Rebuilds the output samples from the per-sample augmentations and the
// recorded permutation.
std::vector<Sample> replay_samples(const std::vector<AugmentedSample>& augmented,
                                   const AugmentedBugReport& report);

// Structural checks of an augmented report against its original. Returns an
// empty string when valid, otherwise the first violation.
std::string validate_augmented_report(const StructuredBugReport& original,
                                      const AugmentedBugReport& report);

// Rendered text of an augmented report: samples in order, blank-line
// separated.
std::string render_report(const std::vector<Sample>& samples);

// Produces fresh augmented reports on demand.
class AugmentSource {
 public:
  virtual ~AugmentSource() = default;
  virtual AugmentedBugReport augment(const std::string& origin_bug_id,
                                     std::uint32_t ordinal) = 0;
};

struct AugmenterOptions {
  AugConfig nl;
  CodeOpConfig code;
  double p_drop = 0.5;
  std::uint64_t seed = 0;
  // Separates the random streams of different pipeline stages.
  std::string stage = "augment";
};

struct AugmenterStats {
  std::size_t paragraphs = 0;
  std::size_t qc_rejections = 0;
  std::size_t code_samples = 0;
  std::size_t dropped = 0;
};

// The full per-report augmentation: NL pipeline with quality control for
// OB/EB/S2R, then code operators for every sample carrying code tokens.
class ReportAugmenter : public AugmentSource {
 public:
  ReportAugmenter(std::map<std::string, StructuredBugReport> structured,
                  std::map<std::string, CodeNameDictionary> code_names,
                  SubstituteDictionary substitutes, PatternDictionary patterns,
                  Paraphraser& paraphraser, AugmenterOptions options);

  AugmentedBugReport augment(const std::string& origin_bug_id,
                             std::uint32_t ordinal) override;

  // Per-sample augmentation without assembly.
  std::vector<AugmentedSample> augment_samples(const StructuredBugReport& report,
                                               std::uint32_t ordinal);

  const AugmenterStats& stats() const { return stats_; }
  const StructuredBugReport& structured(const std::string& bug_id) const;

 private:
  std::map<std::string, StructuredBugReport> structured_;
  std::map<std::string, CodeNameDictionary> code_names_;
  SubstituteDictionary substitutes_;
  PatternDictionary patterns_;
  Paraphraser& paraphraser_;
  AugmenterOptions options_;
  AugmenterStats stats_;
};

struct GeneratedSet {
  Dataset dataset;
  std::vector<AugmentedBugReport> reports;
};

// d_ori plus, per original positive, `factor` fresh augmented positives on
// the same hunk, each with one fresh negative. |out| = (1 + factor)|d_ori|.
GeneratedSet generate_augmented_set(const Dataset& d_ori, std::uint32_t factor,
                                    AugmentSource& augmenter,
                                    NegativeSampler& negatives, std::uint64_t seed);

// Positives repeated verbatim up to `factor` copies, each extra copy paired
// with a fresh negative. |out| = factor |d_ori|.
Dataset generate_repeated_set(const Dataset& d_ori, std::uint32_t factor,
                              NegativeSampler& negatives, std::uint64_t seed);

}  // namespace bugaug

#endif  // BUGAUG_BUILDER_H_
