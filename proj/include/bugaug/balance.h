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

// Balanced augmentation under per-bug and per-class caps, and the
// distribution reports used to inspect training-set skew.

#ifndef BUGAUG_BALANCE_H_
#define BUGAUG_BALANCE_H_

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "bugaug/builder.h"
#include "bugaug/corpus.h"
#include "bugaug/types.h"

namespace bugaug {

struct BalanceConfig {
  double alpha = 1.0;  // scales the per-bug cap
  double omega = 1.0;  // scales the per-class cap
  std::uint64_t seed = 0;

  void validate() const;
};

// ceil(factor * max_count), tolerant to floating-point noise in the product.
std::size_t scaled_cap(double factor, std::size_t max_count);

struct BalanceResult {
  Dataset dataset;
  std::vector<AugmentedBugReport> reports;
  std::size_t max_br = 0;
  std::size_t max_cl = 0;
  // Indices into dataset.samples of the positives added by balancing.
  std::vector<std::size_t> added_positives;
};

// Starts from a copy of d_train; for each bug (ascending id) below max_br,
// keeps adding (fresh augmented report, hunk of that bug whose class is below
// max_cl) positives, each with one fresh negative, until the bug reaches
// max_br or all of its hunk classes are capped. Negatives never count
// towards either cap.
BalanceResult balance_dataset(const Dataset& d_train, const BalanceConfig& config,
                              AugmentSource& augmenter, NegativeSampler& negatives);

struct DistributionReport {
  // Positive-sample counts, largest first, ties by name.
  std::vector<std::pair<std::string, std::size_t>> per_bug_counts;
  std::vector<std::pair<std::string, std::size_t>> per_class_counts;
  std::size_t total = 0;

  // Share of positives held by the k most frequent bug reports.
  double topk_share(std::size_t k) const;
  // Same over classes.
  double topk_class_share(std::size_t k) const;
};

// Throws std::invalid_argument when the dataset has no positives.
DistributionReport distribution_report(const Dataset& dataset);

}  // namespace bugaug

#endif  // BUGAUG_BALANCE_H_
