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

// Pipeline stages over on-disk artifacts. Each stage can run on its own
// (one CLI subcommand each) or as part of run_pipeline, which chains them in
// a work directory, skips stages whose outputs exist and records a manifest.

#ifndef BUGAUG_PIPELINE_H_
#define BUGAUG_PIPELINE_H_

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "bugaug/builder.h"
#include "bugaug/corpus.h"
#include "bugaug/types.h"

namespace bugaug {

namespace fs = std::filesystem;

std::string version();

// A missing or unusable input; the CLI maps it to exit code 2.
class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Failure inside a named stage; the CLI maps it to exit code 1.
class StageError : public std::runtime_error {
 public:
  StageError(std::string stage, const std::string& cause)
      : std::runtime_error("stage '" + stage + "' failed: " + cause),
        stage_(std::move(stage)) {}
  const std::string& stage() const { return stage_; }

 private:
  std::string stage_;
};

// Throws UsageError naming `flag` when `path` does not exist.
void require_path(const fs::path& path, const std::string& flag);

// --- ingest ----------------------------------------------------------------

struct IngestOptions {
  fs::path bugs;
  fs::path diffs;       // directory of <changeset id>.diff
  fs::path changesets;  // metadata; empty means <diffs>/changesets.jsonl
  fs::path links;
  std::uint64_t seed = 0;
  fs::path out;
};

struct IngestSummary {
  std::size_t bugs = 0;
  std::size_t dropped = 0;
  std::size_t train = 0;
  std::size_t test = 0;
  std::size_t changesets = 0;
  std::size_t hunks = 0;
  std::size_t d_ori = 0;
  std::size_t excluded = 0;
  std::size_t judged = 0;  // test bugs with at least one relevant hunk
};

Corpus ingest_corpus(const fs::path& bugs, const fs::path& diffs,
                     const fs::path& changesets, const fs::path& links);
// Reads bugs.jsonl, changesets.jsonl and links.jsonl written by ingest.
Corpus load_corpus(const fs::path& dir);

// Writes bugs.jsonl, changesets.jsonl, links.jsonl, train_bugs.jsonl,
// test_bugs.jsonl, d_ori.jsonl, qrels.txt and code_dict.json into out.
IngestSummary run_ingest(const IngestOptions& options);

// --- extract ---------------------------------------------------------------

struct ExtractStageOptions {
  fs::path corpus;
  fs::path patterns;  // empty: built-in dictionary
  std::vector<std::string> library_prefixes;  // empty: built-in prefixes
  fs::path out;
};

std::size_t run_extract(const ExtractStageOptions& options);

// --- augment / balance -----------------------------------------------------

struct AugmenterInputs {
  fs::path corpus;
  fs::path structured;  // empty: <corpus>/structured.jsonl
  fs::path code_dict;   // empty: <corpus>/code_dict.json
  fs::path patterns;    // empty: built-in dictionary
  std::uint64_t seed = 0;
  double p_drop = 0.5;
  std::string paraphraser = "identity";
  std::string service_url;
};

struct AugmentStageOptions {
  AugmenterInputs inputs;
  std::uint32_t factor = 10;
  fs::path out;      // D_aug; reports go to <out stem>.reports.jsonl
  fs::path rep_out;  // D_rep; empty: d_rep.jsonl next to out
};

struct AugmentSummary {
  std::size_t d_ori = 0;
  std::size_t d_aug = 0;
  std::size_t d_rep = 0;
  AugmenterStats stats;
};

AugmentSummary run_augment(const AugmentStageOptions& options);

struct BalanceStageOptions {
  AugmenterInputs inputs;  // corpus empty: directory of `train`
  fs::path train;
  double alpha = 0.85;
  double omega = 2.0;
  fs::path out;
};

struct BalanceSummary {
  std::size_t d_train = 0;
  std::size_t d_bl = 0;
  std::size_t max_br = 0;
  std::size_t max_cl = 0;
  AugmenterStats stats;
};

BalanceSummary run_balance(const BalanceStageOptions& options);

// Sidecar path holding the augmented reports of a dataset file.
fs::path reports_path_for(const fs::path& dataset_path);

// --- stats -----------------------------------------------------------------

nlohmann::json stats_json(const Dataset& dataset, std::size_t top_k);
// Rank,count rows of both distributions (the curves behind the skew plots).
std::string stats_csv(const Dataset& dataset);

struct StatsStageOptions {
  std::vector<fs::path> datasets;
  std::size_t top_k = 10;
  fs::path out;
  fs::path csv;  // optional; with several datasets, one file per dataset stem
};

nlohmann::json run_stats(const StatsStageOptions& options);

// --- index / retrieve / eval -------------------------------------------------

// Writes <out>/index.json from the corpus hunks.
std::size_t run_index(const fs::path& corpus, const fs::path& out);

struct RetrieveStageOptions {
  fs::path index;  // directory with index.json, or a corpus directory
  fs::path bugs;
  std::size_t top_n = 100;
  fs::path out;
};

std::size_t run_retrieve(const RetrieveStageOptions& options);

struct EvalStageOptions {
  fs::path run;
  fs::path qrels;
  std::string metrics = "mrr,map,p@1,p@3,p@5";
  fs::path out;  // optional
};

std::vector<std::pair<std::string, double>> run_eval(const EvalStageOptions& options);

// --- full pipeline -----------------------------------------------------------

struct PipelineConfig {
  fs::path bugs;
  fs::path diffs;
  fs::path changesets;
  fs::path links;
  fs::path patterns;
  fs::path work;
  std::uint64_t seed = 42;
  std::uint32_t factor = 10;
  double alpha = 0.85;
  double omega = 2.0;
  double p_drop = 0.5;
  std::string paraphraser = "identity";
  std::string service_url;
  std::size_t top_k = 10;
  std::size_t top_n = 100;
  std::string metrics = "mrr,map,p@1,p@3,p@5";
  bool force = false;

  void validate() const;
};

struct PipelineResult {
  std::vector<std::string> ran;
  std::vector<std::string> skipped;
  std::vector<std::pair<std::string, double>> metrics;
  fs::path manifest;
};

// Stages: ingest, extract, augment, balance, stats, index, retrieve, eval.
// A stage is skipped when all of its outputs exist and no stage it reads
// from ran in this invocation, unless config.force.
// manifest.json lists config, input digests and artifact digests; it holds
// no timestamps or absolute work paths, so identical runs match byte for byte.
PipelineResult run_pipeline(const PipelineConfig& config);

}  // namespace bugaug

#endif  // BUGAUG_PIPELINE_H_
