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

#include "bugaug/metrics.h"

#include <algorithm>
#include <cstdio>
#include <sstream>
#include <stdexcept>

#include "bugaug/types.h"

namespace bugaug {
namespace {

const Ranking& ranking_for(const RankingRun& run, const std::string& bug) {
  static const Ranking kEmpty;
  auto it = run.find(bug);
  return it == run.end() ? kEmpty : it->second;
}

template <typename PerBug>
double mean_over_judged(const RankingRun& run, const Qrels& qrels, PerBug per_bug) {
  double sum = 0.0;
  std::size_t n = 0;
  for (const auto& [bug, relevant] : qrels) {
    if (relevant.empty()) continue;
    sum += per_bug(ranking_for(run, bug), relevant);
    ++n;
  }
  if (n == 0) throw std::invalid_argument("qrels contain no judged bug");
  return sum / static_cast<double>(n);
}

std::vector<std::string> split_fields(std::string_view line) {
  std::vector<std::string> out;
  std::istringstream in{std::string(line)};
  std::string field;
  while (in >> field) out.push_back(field);
  return out;
}

template <typename Fn>
void for_each_line(std::string_view text, Fn fn) {
  std::size_t pos = 0;
  std::size_t line_no = 0;
  while (pos < text.size()) {
    std::size_t nl = text.find('\n', pos);
    if (nl == std::string_view::npos) nl = text.size();
    ++line_no;
    auto fields = split_fields(text.substr(pos, nl - pos));
    if (!fields.empty() && fields[0][0] != '#') fn(fields, line_no);
    pos = nl + 1;
  }
}

double parse_double(const std::string& s, std::size_t line_no) {
  try {
    std::size_t used = 0;
    double v = std::stod(s, &used);
    if (used != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw ParseError("invalid number '" + s + "'", line_no);
  }
}

}  // namespace

void normalize_ranking(Ranking& ranking) {
  std::stable_sort(ranking.begin(), ranking.end(),
                   [](const RankedItem& a, const RankedItem& b) {
                     if (a.score != b.score) return a.score > b.score;
                     return a.hunk_id < b.hunk_id;
                   });
  std::set<std::string> seen;
  std::erase_if(ranking, [&](const RankedItem& r) { return !seen.insert(r.hunk_id).second; });
}

double reciprocal_rank(const Ranking& ranking, const std::set<std::string>& relevant) {
  for (std::size_t i = 0; i < ranking.size(); ++i) {
    if (relevant.contains(ranking[i].hunk_id)) return 1.0 / static_cast<double>(i + 1);
  }
  return 0.0;
}

double average_precision(const Ranking& ranking, const std::set<std::string>& relevant) {
  if (relevant.empty()) return 0.0;
  double sum = 0.0;
  std::size_t hits = 0;
  for (std::size_t i = 0; i < ranking.size(); ++i) {
    if (relevant.contains(ranking[i].hunk_id)) {
      ++hits;
      sum += static_cast<double>(hits) / static_cast<double>(i + 1);
    }
  }
  return sum / static_cast<double>(relevant.size());
}

double precision_at_k(const Ranking& ranking, const std::set<std::string>& relevant,
                      std::size_t k) {
  if (k == 0) throw std::invalid_argument("precision_at_k: k must be positive");
  std::size_t hits = 0;
  for (std::size_t i = 0; i < std::min(k, ranking.size()); ++i) {
    if (relevant.contains(ranking[i].hunk_id)) ++hits;
  }
  return static_cast<double>(hits) / static_cast<double>(k);
}

double mrr(const RankingRun& run, const Qrels& qrels) {
  return mean_over_judged(run, qrels, [](const Ranking& r, const auto& rel) {
    return reciprocal_rank(r, rel);
  });
}

double mean_average_precision(const RankingRun& run, const Qrels& qrels) {
  return mean_over_judged(run, qrels, [](const Ranking& r, const auto& rel) {
    return average_precision(r, rel);
  });
}

double precision_at_k(const RankingRun& run, const Qrels& qrels, std::size_t k) {
  if (k == 0) throw std::invalid_argument("precision_at_k: k must be positive");
  return mean_over_judged(run, qrels, [k](const Ranking& r, const auto& rel) {
    return precision_at_k(r, rel, k);
  });
}

Qrels parse_qrels(std::string_view text) {
  Qrels qrels;
  for_each_line(text, [&](const std::vector<std::string>& f, std::size_t line_no) {
    if (f.size() != 3) throw ParseError("qrels lines need 3 fields", line_no);
    if (parse_double(f[2], line_no) > 0) qrels[f[0]].insert(f[1]);
  });
  return qrels;
}

std::string format_qrels(const Qrels& qrels) {
  std::string out;
  for (const auto& [bug, hunks] : qrels) {
    for (const std::string& h : hunks) out += bug + " " + h + " 1\n";
  }
  return out;
}

RankingRun parse_run(std::string_view text) {
  RankingRun run;
  for_each_line(text, [&](const std::vector<std::string>& f, std::size_t line_no) {
    if (f.size() != 4) throw ParseError("run lines need 4 fields", line_no);
    run[f[0]].push_back({f[1], parse_double(f[3], line_no)});
  });
  for (auto& [_, ranking] : run) normalize_ranking(ranking);
  return run;
}

std::string format_run(const RankingRun& run) {
  std::string out;
  char score[64];
  for (const auto& [bug, ranking] : run) {
    for (std::size_t i = 0; i < ranking.size(); ++i) {
      std::snprintf(score, sizeof(score), "%.17g", ranking[i].score);
      out += bug + " " + ranking[i].hunk_id + " " + std::to_string(i + 1) + " " +
             score + "\n";
    }
  }
  return out;
}

std::vector<std::pair<std::string, double>> evaluate(const RankingRun& run,
                                                     const Qrels& qrels,
                                                     std::string_view metric_list) {
  std::vector<std::pair<std::string, double>> out;
  std::size_t pos = 0;
  while (pos <= metric_list.size()) {
    std::size_t comma = metric_list.find(',', pos);
    if (comma == std::string_view::npos) comma = metric_list.size();
    std::string name(metric_list.substr(pos, comma - pos));
    pos = comma + 1;
    if (name.empty()) continue;
    if (name == "mrr") {
      out.emplace_back(name, mrr(run, qrels));
    } else if (name == "map") {
      out.emplace_back(name, mean_average_precision(run, qrels));
    } else if (name.starts_with("p@")) {
      std::size_t k = 0;
      try {
        k = std::stoul(name.substr(2));
      } catch (const std::exception&) {
        throw std::invalid_argument("bad metric '" + name + "'");
      }
      if (k == 0) throw std::invalid_argument("bad metric '" + name + "'");
      out.emplace_back(name, precision_at_k(run, qrels, k));
    } else {
      throw std::invalid_argument("unknown metric '" + name + "'");
    }
  }
  return out;
}

}  // namespace bugaug
