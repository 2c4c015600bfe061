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

#include "bugaug/balance.h"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>

namespace bugaug {
namespace {

std::vector<std::pair<std::string, std::size_t>> sorted_counts(
    const std::map<std::string, std::size_t>& counts) {
  std::vector<std::pair<std::string, std::size_t>> out(counts.begin(), counts.end());
  std::stable_sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
    return a.second > b.second;
  });
  return out;
}

double topk(const std::vector<std::pair<std::string, std::size_t>>& counts,
            std::size_t total, std::size_t k) {
  if (total == 0) return 0.0;
  std::size_t sum = 0;
  for (std::size_t i = 0; i < std::min(k, counts.size()); ++i) sum += counts[i].second;
  return static_cast<double>(sum) / static_cast<double>(total);
}

}  // namespace

void BalanceConfig::validate() const {
  if (!(alpha > 0.0) || !(omega > 0.0)) {
    throw std::invalid_argument("alpha and omega must be positive");
  }
}

std::size_t scaled_cap(double factor, std::size_t max_count) {
  return static_cast<std::size_t>(
      std::ceil(factor * static_cast<double>(max_count) - 1e-9));
}

BalanceResult balance_dataset(const Dataset& d_train, const BalanceConfig& config,
                              AugmentSource& augmenter, NegativeSampler& negatives) {
  config.validate();

  std::map<std::string, std::size_t> bug_count;
  std::map<std::string, std::size_t> class_count;
  // Distinct hunks per bug in first-seen order, with their classes.
  std::map<std::string, std::vector<std::pair<std::string, std::string>>> bug_hunks;
  for (const TrainingSample& s : d_train.samples) {
    if (s.label != Label::kPositive) continue;
    ++bug_count[s.origin_bug_id];
    ++class_count[s.class_name];
    auto& hunks = bug_hunks[s.origin_bug_id];
    if (std::none_of(hunks.begin(), hunks.end(),
                     [&](const auto& h) { return h.first == s.hunk_id; })) {
      hunks.emplace_back(s.hunk_id, s.class_name);
    }
  }

  BalanceResult out;
  out.dataset.name = "D_bl";
  out.dataset.samples = d_train.samples;
  std::size_t max_bug = 0;
  std::size_t max_class = 0;
  for (const auto& [_, c] : bug_count) max_bug = std::max(max_bug, c);
  for (const auto& [_, c] : class_count) max_class = std::max(max_class, c);
  out.max_br = scaled_cap(config.alpha, max_bug);
  out.max_cl = scaled_cap(config.omega, max_class);

  for (const auto& [bug, hunks] : bug_hunks) {
    std::uint32_t ordinal = 0;
    while (bug_count[bug] < out.max_br) {
      std::vector<std::size_t> eligible;
      for (std::size_t h = 0; h < hunks.size(); ++h) {
        if (class_count[hunks[h].second] < out.max_cl) eligible.push_back(h);
      }
      if (eligible.empty()) break;

      ++ordinal;
      Rng rng(derive_seed(config.seed, std::string_view("balance"), bug,
                          std::uint64_t{ordinal}));
      const auto& [hunk_id, class_name] = hunks[eligible[rng.uniform_index(eligible.size())]];
      AugmentedBugReport report = augmenter.augment(bug, ordinal);

      out.added_positives.push_back(out.dataset.samples.size());
      out.dataset.samples.push_back(
          {report.id, bug, hunk_id, class_name, Label::kPositive});
      out.dataset.samples.push_back(make_sample(report.id, bug, negatives.draw(bug, rng),
                                                Label::kNegative));
      ++bug_count[bug];
      ++class_count[class_name];
      out.reports.push_back(std::move(report));
    }
  }
  return out;
}

double DistributionReport::topk_share(std::size_t k) const {
  return topk(per_bug_counts, total, k);
}

double DistributionReport::topk_class_share(std::size_t k) const {
  return topk(per_class_counts, total, k);
}

DistributionReport distribution_report(const Dataset& dataset) {
  std::map<std::string, std::size_t> bugs;
  std::map<std::string, std::size_t> classes;
  DistributionReport report;
  for (const TrainingSample& s : dataset.samples) {
    if (s.label != Label::kPositive) continue;
    ++bugs[s.origin_bug_id];
    ++classes[s.class_name];
    ++report.total;
  }
  if (report.total == 0) {
    throw std::invalid_argument("dataset '" + dataset.name + "' has no positive samples");
  }
  report.per_bug_counts = sorted_counts(bugs);
  report.per_class_counts = sorted_counts(classes);
  return report;
}

}  // namespace bugaug
