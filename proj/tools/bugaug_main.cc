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

// bugaug: command-line driver for the augmentation and balancing pipeline.

#include <cstdint>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <spdlog/sinks/stdout_color_sinks.h>
#include <spdlog/spdlog.h>

#include "bugaug/pipeline.h"

namespace {

using bugaug::fs::path;

struct AugmenterFlags {
  std::string corpus, structured, code_dict, patterns;
  std::uint64_t seed = 42;
  double p_drop = 0.5;
  std::string paraphraser = "identity";
  std::string service_url;

  void attach(CLI::App* cmd) {
    cmd->add_option("--corpus", corpus, "Corpus directory written by ingest");
    cmd->add_option("--structured", structured,
                    "Structured reports (default <corpus>/structured.jsonl)");
    cmd->add_option("--code-dict", code_dict,
                    "Per-bug code-name dictionary (default <corpus>/code_dict.json)");
    cmd->add_option("--patterns", patterns, "Pattern dictionary JSON (default: built-in)");
    cmd->add_option("--seed", seed, "Master seed")->capture_default_str();
    cmd->add_option("--p-drop", p_drop, "Probability of dropping one sample per report")
        ->check(CLI::Range(0.0, 1.0))
        ->capture_default_str();
    cmd->add_option("--paraphraser", paraphraser, "identity, shuffle or service")
        ->check(CLI::IsMember({"identity", "shuffle", "service"}))
        ->capture_default_str();
    cmd->add_option("--service-url", service_url,
                    "Paraphrase endpoint for --paraphraser service");
  }

  bugaug::AugmenterInputs inputs() const {
    bugaug::AugmenterInputs in;
    in.corpus = corpus;
    in.structured = structured;
    in.code_dict = code_dict;
    in.patterns = patterns;
    in.seed = seed;
    in.p_drop = p_drop;
    in.paraphraser = paraphraser;
    in.service_url = service_url;
    return in;
  }
};

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::size_t pos = 0;
  while (pos <= s.size()) {
    std::size_t comma = s.find(',', pos);
    if (comma == std::string::npos) comma = s.size();
    if (comma > pos) out.push_back(s.substr(pos, comma - pos));
    pos = comma + 1;
  }
  return out;
}

void print_metrics(const std::vector<std::pair<std::string, double>>& metrics) {
  for (const auto& [name, value] : metrics) std::cout << name << " " << value << "\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Augment and balance bug-localization training data"};
  app.require_subcommand(1);
  app.set_version_flag("--version", bugaug::version());
  std::string log_level = "info";
  app.add_option("--log-level", log_level, "trace, debug, info, warn, error or off")
      ->check(CLI::IsMember({"trace", "debug", "info", "warn", "error", "off"}))
      ->capture_default_str();

  // ingest
  bugaug::IngestOptions ingest;
  std::string ingest_bugs, ingest_diffs, ingest_changesets, ingest_links, ingest_out;
  auto* c_ingest = app.add_subcommand("ingest", "Parse raw inputs into a corpus directory");
  c_ingest->add_option("--bugs", ingest_bugs, "Bug reports (JSON lines)")->required();
  c_ingest->add_option("--diffs", ingest_diffs, "Directory of <changeset>.diff files")
      ->required();
  c_ingest->add_option("--changesets", ingest_changesets,
                       "Changeset metadata (default <diffs>/changesets.jsonl)");
  c_ingest->add_option("--links", ingest_links, "Bug to changeset links (JSON lines)")
      ->required();
  c_ingest->add_option("--seed", ingest.seed, "Seed for negative sampling")
      ->capture_default_str();
  c_ingest->add_option("--out", ingest_out, "Output corpus directory")->required();

  // extract
  std::string ex_corpus, ex_patterns, ex_prefixes, ex_out;
  auto* c_extract = app.add_subcommand("extract", "Split bug reports into typed samples");
  c_extract->add_option("--corpus", ex_corpus, "Corpus directory")->required();
  c_extract->add_option("--patterns", ex_patterns, "Pattern dictionary JSON");
  c_extract->add_option("--lib-prefixes", ex_prefixes,
                        "Comma-separated library package prefixes (default java.,javax.,sun.,jdk.)");
  c_extract->add_option("--out", ex_out, "Structured reports (JSON lines)")->required();

  // augment
  AugmenterFlags aug_flags;
  std::uint32_t factor = 10;
  std::string aug_out, rep_out;
  auto* c_augment = app.add_subcommand("augment", "Build D_aug and D_rep from D_ori");
  aug_flags.attach(c_augment);
  c_augment->get_option("--corpus")->required();
  c_augment->add_option("--factor", factor, "Augmented copies per positive")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  c_augment->add_option("--out", aug_out, "D_aug output (JSON lines)")->required();
  c_augment->add_option("--rep-out", rep_out, "D_rep output (default next to --out)");

  // balance
  AugmenterFlags bal_flags;
  double alpha = 0.85, omega = 2.0;
  std::string bal_train, bal_out;
  auto* c_balance = app.add_subcommand("balance", "Build D_bl with per-bug and per-class caps");
  bal_flags.attach(c_balance);
  c_balance->add_option("--train", bal_train, "Training dataset (JSON lines)")->required();
  c_balance->add_option("--alpha", alpha, "Per-bug cap factor")->capture_default_str();
  c_balance->add_option("--omega", omega, "Per-class cap factor")->capture_default_str();
  c_balance->add_option("--out", bal_out, "D_bl output (JSON lines)")->required();

  // stats
  std::vector<std::string> st_datasets;
  std::size_t top_k = 10;
  std::string st_out, st_csv;
  auto* c_stats = app.add_subcommand("stats", "Report per-bug and per-class skew");
  c_stats->add_option("--dataset", st_datasets, "Dataset file(s)")->required();
  c_stats->add_option("--top-k", top_k, "k for the top-k share")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  c_stats->add_option("--out", st_out, "Report JSON (default: stdout)");
  c_stats->add_option("--csv", st_csv, "Optional CSV of the count curves");

  // index
  std::string ix_corpus, ix_out;
  auto* c_index = app.add_subcommand("index", "Build the BM25 hunk index");
  c_index->add_option("--corpus", ix_corpus, "Corpus directory")->required();
  c_index->add_option("--out", ix_out, "Index directory")->required();

  // retrieve
  bugaug::RetrieveStageOptions retrieve;
  std::string rt_index, rt_bugs, rt_out;
  auto* c_retrieve = app.add_subcommand("retrieve", "Rank hunks for bug reports");
  c_retrieve->add_option("--index", rt_index, "Index or corpus directory")->required();
  c_retrieve->add_option("--bugs", rt_bugs, "Query bug reports (JSON lines)")->required();
  c_retrieve->add_option("--top-n", retrieve.top_n, "Hunks kept per bug (0 = all)")
      ->capture_default_str();
  c_retrieve->add_option("--out", rt_out, "Run file")->required();

  // eval
  bugaug::EvalStageOptions eval;
  std::string ev_run, ev_qrels, ev_out;
  auto* c_eval = app.add_subcommand("eval", "Score a run against relevance judgments");
  c_eval->add_option("--run", ev_run, "Run file")->required();
  c_eval->add_option("--qrels", ev_qrels, "Relevance judgments")->required();
  c_eval->add_option("--metrics", eval.metrics, "Comma-separated metric names")
      ->capture_default_str();
  c_eval->add_option("--out", ev_out, "Metrics JSON");

  // run
  bugaug::PipelineConfig pc;
  std::string p_bugs, p_diffs, p_changesets, p_links, p_patterns, p_out;
  auto* c_run = app.add_subcommand("run", "Run every stage in a work directory");
  c_run->add_option("--bugs", p_bugs, "Bug reports (JSON lines)")->required();
  c_run->add_option("--diffs", p_diffs, "Directory of <changeset>.diff files")->required();
  c_run->add_option("--changesets", p_changesets, "Changeset metadata");
  c_run->add_option("--links", p_links, "Bug to changeset links (JSON lines)")->required();
  c_run->add_option("--patterns", p_patterns, "Pattern dictionary JSON");
  c_run->add_option("--out", p_out, "Work directory")->required();
  c_run->add_option("--seed", pc.seed, "Master seed")->capture_default_str();
  c_run->add_option("--factor", pc.factor, "Augmented copies per positive")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  c_run->add_option("--alpha", pc.alpha, "Per-bug cap factor")->capture_default_str();
  c_run->add_option("--omega", pc.omega, "Per-class cap factor")->capture_default_str();
  c_run->add_option("--p-drop", pc.p_drop, "Drop probability")
      ->check(CLI::Range(0.0, 1.0))
      ->capture_default_str();
  c_run->add_option("--paraphraser", pc.paraphraser, "identity, shuffle or service")
      ->check(CLI::IsMember({"identity", "shuffle", "service"}))
      ->capture_default_str();
  c_run->add_option("--service-url", pc.service_url, "Paraphrase endpoint");
  c_run->add_option("--top-k", pc.top_k, "k for the top-k share")->capture_default_str();
  c_run->add_option("--top-n", pc.top_n, "Hunks kept per bug")->capture_default_str();
  c_run->add_option("--metrics", pc.metrics, "Comma-separated metric names")
      ->capture_default_str();
  c_run->add_flag("--force", pc.force, "Rerun stages whose outputs exist");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  auto logger = spdlog::stderr_color_mt("bugaug");
  spdlog::set_default_logger(logger);
  spdlog::set_pattern("[%l] %v");
  spdlog::set_level(spdlog::level::from_str(log_level));

  try {
    if (c_ingest->parsed()) {
      ingest.bugs = ingest_bugs;
      ingest.diffs = ingest_diffs;
      ingest.changesets = ingest_changesets;
      ingest.links = ingest_links;
      ingest.out = ingest_out;
      const auto s = bugaug::run_ingest(ingest);
      std::cout << "bugs " << s.bugs << " dropped " << s.dropped << " train " << s.train
                << " test " << s.test << " hunks " << s.hunks << " d_ori " << s.d_ori
                << "\n";
    } else if (c_extract->parsed()) {
      const auto n = bugaug::run_extract(
          {ex_corpus, ex_patterns, split_list(ex_prefixes), ex_out});
      std::cout << "reports " << n << "\n";
    } else if (c_augment->parsed()) {
      const auto s = bugaug::run_augment({aug_flags.inputs(), factor, aug_out, rep_out});
      std::cout << "d_ori " << s.d_ori << " d_aug " << s.d_aug << " d_rep " << s.d_rep
                << " qc_rejections " << s.stats.qc_rejections << "\n";
    } else if (c_balance->parsed()) {
      bugaug::BalanceStageOptions o;
      o.inputs = bal_flags.inputs();
      o.train = bal_train;
      o.alpha = alpha;
      o.omega = omega;
      o.out = bal_out;
      const auto s = bugaug::run_balance(o);
      std::cout << "d_train " << s.d_train << " d_bl " << s.d_bl << " max_br " << s.max_br
                << " max_cl " << s.max_cl << "\n";
    } else if (c_stats->parsed()) {
      bugaug::StatsStageOptions o;
      for (const auto& d : st_datasets) o.datasets.emplace_back(d);
      o.top_k = top_k;
      o.out = st_out;
      o.csv = st_csv;
      const auto report = bugaug::run_stats(o);
      if (st_out.empty()) std::cout << report.dump(2) << "\n";
    } else if (c_index->parsed()) {
      std::cout << "hunks " << bugaug::run_index(ix_corpus, ix_out) << "\n";
    } else if (c_retrieve->parsed()) {
      retrieve.index = rt_index;
      retrieve.bugs = rt_bugs;
      retrieve.out = rt_out;
      std::cout << "queries " << bugaug::run_retrieve(retrieve) << "\n";
    } else if (c_eval->parsed()) {
      eval.run = ev_run;
      eval.qrels = ev_qrels;
      eval.out = ev_out;
      print_metrics(bugaug::run_eval(eval));
    } else if (c_run->parsed()) {
      pc.bugs = p_bugs;
      pc.diffs = p_diffs;
      pc.changesets = p_changesets;
      pc.links = p_links;
      pc.patterns = p_patterns;
      pc.work = p_out;
      const auto r = bugaug::run_pipeline(pc);
      print_metrics(r.metrics);
    }
  } catch (const bugaug::UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
