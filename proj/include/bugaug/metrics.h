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

// Ranking metrics: MRR, MAP and P@K over runs and relevance judgments.

#ifndef BUGAUG_METRICS_H_
#define BUGAUG_METRICS_H_

#include <map>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace bugaug {

// bug id -> relevant hunk ids.
using Qrels = std::map<std::string, std::set<std::string>>;

struct RankedItem {
  std::string hunk_id;
  double score = 0.0;

  bool operator==(const RankedItem&) const = default;
};

using Ranking = std::vector<RankedItem>;
// bug id -> ranking, best first.
using RankingRun = std::map<std::string, Ranking>;

// Score descending, ties by hunk id; later duplicates of a hunk are removed.
void normalize_ranking(Ranking& ranking);

double reciprocal_rank(const Ranking& ranking, const std::set<std::string>& relevant);
double average_precision(const Ranking& ranking, const std::set<std::string>& relevant);
// Relevant items within the top k, divided by k.
double precision_at_k(const Ranking& ranking, const std::set<std::string>& relevant,
                      std::size_t k);

// Means over every judged bug. A bug absent from the run counts as an empty
// ranking. Throw std::invalid_argument on empty qrels.
double mrr(const RankingRun& run, const Qrels& qrels);
double mean_average_precision(const RankingRun& run, const Qrels& qrels);
double precision_at_k(const RankingRun& run, const Qrels& qrels, std::size_t k);

// Lines "bug_id hunk_id relevance"; relevance 0 lines are ignored.
Qrels parse_qrels(std::string_view text);
std::string format_qrels(const Qrels& qrels);

// Lines "bug_id hunk_id rank score". Rankings are normalized after reading.
RankingRun parse_run(std::string_view text);
std::string format_run(const RankingRun& run);

// Evaluates a comma-separated list such as "mrr,map,p@1,p@5", preserving
// its order. Throws std::invalid_argument for unknown names.
std::vector<std::pair<std::string, double>> evaluate(const RankingRun& run,
                                                     const Qrels& qrels,
                                                     std::string_view metric_list);

}  // namespace bugaug

#endif  // BUGAUG_METRICS_H_
