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

#include "bugaug/pipeline.h"

#include <algorithm>
#include <functional>
#include <map>
#include <set>

#include <spdlog/spdlog.h>

#include "bugaug/balance.h"
#include "bugaug/code_ops.h"
#include "bugaug/digest.h"
#include "bugaug/extract.h"
#include "bugaug/json_io.h"
#include "bugaug/metrics.h"
#include "bugaug/nl_ops.h"
#include "bugaug/retrieval.h"

#ifndef BUGAUG_VERSION
#define BUGAUG_VERSION "0.0.0"
#endif

namespace bugaug {

using nlohmann::json;

std::string version() { return BUGAUG_VERSION; }

void require_path(const fs::path& path, const std::string& flag) {
  if (path.empty()) throw UsageError(flag + " is required");
  if (!fs::exists(path)) {
    throw UsageError(flag + ": path does not exist: " + path.string());
  }
}

// --- ingest ----------------------------------------------------------------

Corpus ingest_corpus(const fs::path& bugs, const fs::path& diffs,
                     const fs::path& changesets, const fs::path& links) {
  std::map<std::string, Changeset> by_id;
  const fs::path meta_path = changesets.empty() ? diffs / "changesets.jsonl" : changesets;
  if (fs::exists(meta_path)) {
    for (const ChangesetMeta& m : read_jsonl<ChangesetMeta>(meta_path)) {
      if (by_id.contains(m.id)) {
        throw std::invalid_argument("duplicate changeset metadata '" + m.id + "'");
      }
      by_id[m.id] = Changeset{m.id, m.author, m.committed_at, m.log_message, {}};
    }
  } else if (!changesets.empty()) {
    throw UsageError("--changesets: path does not exist: " + changesets.string());
  }

  for (const auto& entry : fs::directory_iterator(diffs)) {
    if (!entry.is_regular_file() || entry.path().extension() != ".diff") continue;
    const std::string id = entry.path().stem().string();
    Changeset& cs = by_id[id];
    if (cs.id.empty()) {
      spdlog::warn("diff {} has no changeset metadata", entry.path().string());
      cs.id = id;
    }
    try {
      cs.hunks = parse_unified_diff(read_text_file(entry.path()), id);
    } catch (const ParseError& e) {
      throw std::runtime_error(entry.path().string() + ": " + e.what());
    }
  }

  std::vector<Changeset> all;
  all.reserve(by_id.size());
  for (auto& [_, cs] : by_id) all.push_back(std::move(cs));
  return Corpus(read_jsonl<BugReport>(bugs), std::move(all), read_jsonl<LinkRecord>(links));
}

Corpus load_corpus(const fs::path& dir) {
  for (const char* name : {"bugs.jsonl", "changesets.jsonl", "links.jsonl"}) {
    if (!fs::exists(dir / name)) {
      throw UsageError("--corpus: " + (dir / name).string() + " not found");
    }
  }
  return Corpus(read_jsonl<BugReport>(dir / "bugs.jsonl"),
                read_jsonl<Changeset>(dir / "changesets.jsonl"),
                read_jsonl<LinkRecord>(dir / "links.jsonl"));
}

IngestSummary run_ingest(const IngestOptions& o) {
  require_path(o.bugs, "--bugs");
  require_path(o.diffs, "--diffs");
  require_path(o.links, "--links");
  if (o.out.empty()) throw UsageError("--out is required");

  const Corpus corpus = ingest_corpus(o.bugs, o.diffs, o.changesets, o.links);
  IngestSummary s;
  s.bugs = corpus.bugs().size();
  s.changesets = corpus.changesets().size();
  s.hunks = corpus.all_hunks().size();

  auto valid = drop_invalid_reports(corpus.bugs());
  s.dropped = s.bugs - valid.size();
  DateSplit split = split_by_date(std::move(valid));
  s.train = split.train.size();
  s.test = split.test.size();

  std::vector<std::string> excluded;
  const Dataset d_ori = build_d_ori(corpus, split.train, o.seed, &excluded);
  s.d_ori = d_ori.samples.size();
  s.excluded = excluded.size();

  Qrels qrels;
  for (const BugReport& b : split.test) {
    if (!corpus.link(b.id)) continue;
    for (const Hunk* h : corpus.positive_hunks(b.id)) qrels[b.id].insert(h->id);
  }
  s.judged = qrels.size();

  std::map<std::string, CodeNameDictionary> names;
  for (const LinkRecord& l : corpus.links()) names[l.bug_id] = mine_code_names(corpus, l.bug_id);

  fs::create_directories(o.out);
  write_jsonl(o.out / "bugs.jsonl", corpus.bugs());
  write_jsonl(o.out / "changesets.jsonl", corpus.changesets());
  write_jsonl(o.out / "links.jsonl", corpus.links());
  write_jsonl(o.out / "train_bugs.jsonl", split.train);
  write_jsonl(o.out / "test_bugs.jsonl", split.test);
  write_dataset(o.out / "d_ori.jsonl", d_ori);
  write_text_file(o.out / "qrels.txt", format_qrels(qrels));
  write_text_file(o.out / "code_dict.json", format_code_names(names));
  return s;
}

// --- extract ---------------------------------------------------------------

namespace {

PatternDictionary patterns_from(const fs::path& path) {
  if (path.empty()) return default_pattern_dictionary();
  require_path(path, "--patterns");
  return load_pattern_dictionary(path.string());
}

}  // namespace

std::size_t run_extract(const ExtractStageOptions& o) {
  require_path(o.corpus, "--corpus");
  if (o.out.empty()) throw UsageError("--out is required");
  ExtractOptions options;
  options.patterns = patterns_from(o.patterns);
  if (!o.library_prefixes.empty()) options.library_prefixes = o.library_prefixes;

  const auto bugs = read_jsonl<BugReport>(o.corpus / "bugs.jsonl");
  std::vector<StructuredBugReport> out;
  out.reserve(bugs.size());
  for (const BugReport& b : bugs) out.push_back(structure_bug_report(b, options));
  write_jsonl(o.out, out);
  return out.size();
}

// --- augment / balance -----------------------------------------------------

fs::path reports_path_for(const fs::path& dataset_path) {
  fs::path p = dataset_path;
  p.replace_extension();
  p += ".reports.jsonl";
  return p;
}

namespace {

// Everything a ReportAugmenter needs, owned in one place.
struct AugmenterBundle {
  Corpus corpus;
  PatternDictionary patterns;
  SubstituteDictionary substitutes;
  std::unique_ptr<Paraphraser> paraphraser;
  std::unique_ptr<ReportAugmenter> augmenter;
};

AugmenterBundle make_augmenter(const AugmenterInputs& in, const std::string& stage) {
  require_path(in.corpus, "--corpus");
  const fs::path structured_path =
      in.structured.empty() ? in.corpus / "structured.jsonl" : in.structured;
  const fs::path code_dict_path =
      in.code_dict.empty() ? in.corpus / "code_dict.json" : in.code_dict;
  require_path(structured_path, "--structured");
  require_path(code_dict_path, "--code-dict");

  AugmenterBundle b{load_corpus(in.corpus), patterns_from(in.patterns), {}, nullptr, nullptr};
  b.substitutes = SubstituteDictionary::from_patterns(b.patterns);
  b.paraphraser = make_paraphraser(in.paraphraser, b.substitutes, b.patterns, in.service_url);

  std::map<std::string, StructuredBugReport> structured;
  for (StructuredBugReport& r : read_jsonl<StructuredBugReport>(structured_path)) {
    std::string id = r.bug_id;
    structured.emplace(std::move(id), std::move(r));
  }

  AugmenterOptions options;
  options.nl.seed = in.seed;
  options.code.seed = in.seed;
  options.seed = in.seed;
  options.p_drop = in.p_drop;
  options.stage = stage;
  b.augmenter = std::make_unique<ReportAugmenter>(
      std::move(structured), parse_code_names(read_text_file(code_dict_path)),
      b.substitutes, b.patterns, *b.paraphraser, options);
  return b;
}

}  // namespace

AugmentSummary run_augment(const AugmentStageOptions& o) {
  if (o.out.empty()) throw UsageError("--out is required");
  if (o.factor < 1) throw UsageError("--factor must be at least 1");
  AugmenterBundle b = make_augmenter(o.inputs, "augment");
  const fs::path d_ori_path = o.inputs.corpus / "d_ori.jsonl";
  require_path(d_ori_path, "--corpus");
  const Dataset d_ori = read_dataset(d_ori_path, "D_ori");

  NegativeSampler negatives(b.corpus);
  GeneratedSet aug =
      generate_augmented_set(d_ori, o.factor, *b.augmenter, negatives, o.inputs.seed);
  const Dataset rep = generate_repeated_set(d_ori, o.factor, negatives, o.inputs.seed);

  const fs::path rep_out =
      o.rep_out.empty() ? o.out.parent_path() / "d_rep.jsonl" : o.rep_out;
  write_dataset(o.out, aug.dataset);
  write_jsonl(reports_path_for(o.out), aug.reports);
  write_dataset(rep_out, rep);
  return {d_ori.samples.size(), aug.dataset.samples.size(), rep.samples.size(),
          b.augmenter->stats()};
}

BalanceSummary run_balance(const BalanceStageOptions& o) {
  require_path(o.train, "--train");
  if (o.out.empty()) throw UsageError("--out is required");
  AugmenterInputs in = o.inputs;
  if (in.corpus.empty()) in.corpus = o.train.parent_path().empty() ? "." : o.train.parent_path();
  AugmenterBundle b = make_augmenter(in, "balance");
  const Dataset d_train = read_dataset(o.train, "D_ori");

  NegativeSampler negatives(b.corpus);
  BalanceResult r = balance_dataset(d_train, {o.alpha, o.omega, in.seed}, *b.augmenter,
                                    negatives);
  write_dataset(o.out, r.dataset);
  write_jsonl(reports_path_for(o.out), r.reports);
  return {d_train.samples.size(), r.dataset.samples.size(), r.max_br, r.max_cl,
          b.augmenter->stats()};
}

// --- stats -----------------------------------------------------------------

namespace {

json counts_json(const std::vector<std::pair<std::string, std::size_t>>& counts) {
  json out = json::array();
  for (const auto& [name, n] : counts) out.push_back({name, n});
  return out;
}

}  // namespace

json stats_json(const Dataset& dataset, std::size_t top_k) {
  const DistributionReport r = distribution_report(dataset);
  json shares = json::array();
  for (std::size_t k = 1; k <= top_k; ++k) {
    shares.push_back({{"k", k}, {"bug", r.topk_share(k)}, {"class", r.topk_class_share(k)}});
  }
  return json{{"dataset", dataset.name},
              {"samples", dataset.samples.size()},
              {"positives", dataset.count(Label::kPositive)},
              {"negatives", dataset.count(Label::kNegative)},
              {"bugs", r.per_bug_counts.size()},
              {"classes", r.per_class_counts.size()},
              {"top_k", top_k},
              {"topk_share", r.topk_share(top_k)},
              {"topk_class_share", r.topk_class_share(top_k)},
              {"shares", shares},
              {"per_bug_counts", counts_json(r.per_bug_counts)},
              {"per_class_counts", counts_json(r.per_class_counts)}};
}

std::string stats_csv(const Dataset& dataset) {
  const DistributionReport r = distribution_report(dataset);
  std::string out = "dataset,axis,rank,name,count\n";
  auto rows = [&](const char* axis, const auto& counts) {
    for (std::size_t i = 0; i < counts.size(); ++i) {
      out += dataset.name + "," + axis + "," + std::to_string(i + 1) + "," +
             counts[i].first + "," + std::to_string(counts[i].second) + "\n";
    }
  };
  rows("bug", r.per_bug_counts);
  rows("class", r.per_class_counts);
  return out;
}

namespace {

// "d_aug.jsonl" -> "D_aug"; other stems are used verbatim.
std::string dataset_name_for(const fs::path& path) {
  std::string stem = path.stem().string();
  for (const char* known : {"d_ori", "d_rep", "d_aug", "d_bl"}) {
    if (stem == known) return "D_" + stem.substr(2);
  }
  return stem;
}

}  // namespace

json run_stats(const StatsStageOptions& o) {
  if (o.datasets.empty()) throw UsageError("--dataset is required");
  for (const fs::path& p : o.datasets) require_path(p, "--dataset");
  json out;
  std::map<std::string, std::string> csv;
  for (const fs::path& p : o.datasets) {
    const Dataset d = read_dataset(p, dataset_name_for(p));
    json j = stats_json(d, o.top_k);
    if (o.datasets.size() == 1) {
      out = std::move(j);
    } else {
      out[d.name] = std::move(j);
    }
    if (!o.csv.empty()) csv[p.stem().string()] = stats_csv(d);
  }
  if (!o.out.empty()) write_text_file(o.out, out.dump(2) + "\n");
  if (!o.csv.empty()) {
    if (csv.size() == 1) {
      write_text_file(o.csv, csv.begin()->second);
    } else {
      for (const auto& [stem, text] : csv) {
        fs::path p = o.csv;
        p.replace_filename(o.csv.stem().string() + "_" + stem + o.csv.extension().string());
        write_text_file(p, text);
      }
    }
  }
  return out;
}

// --- index / retrieve / eval -------------------------------------------------

namespace {

HunkIndex index_from_corpus(const fs::path& corpus_dir) {
  std::vector<HunkDocument> docs;
  for (const Changeset& cs : read_jsonl<Changeset>(corpus_dir / "changesets.jsonl")) {
    for (const Hunk& h : cs.hunks) docs.push_back(hunk_document(h, cs.log_message));
  }
  return HunkIndex::build(docs);
}

}  // namespace

std::size_t run_index(const fs::path& corpus, const fs::path& out) {
  require_path(corpus / "changesets.jsonl", "--corpus");
  if (out.empty()) throw UsageError("--out is required");
  const HunkIndex index = index_from_corpus(corpus);
  write_text_file(out / "index.json", serialize_index(index));
  return index.hunks().size();
}

std::size_t run_retrieve(const RetrieveStageOptions& o) {
  require_path(o.index, "--index");
  require_path(o.bugs, "--bugs");
  if (o.out.empty()) throw UsageError("--out is required");
  HunkIndex index;
  if (fs::exists(o.index / "index.json")) {
    index = parse_index(read_text_file(o.index / "index.json"));
  } else if (fs::exists(o.index / "changesets.jsonl")) {
    index = index_from_corpus(o.index);
  } else {
    throw UsageError("--index: no index.json or changesets.jsonl in " + o.index.string());
  }
  RankingRun run;
  for (const BugReport& b : read_jsonl<BugReport>(o.bugs)) {
    run[b.id] = rank(b.full_text(), index, o.top_n);
  }
  write_text_file(o.out, format_run(run));
  return run.size();
}

std::vector<std::pair<std::string, double>> run_eval(const EvalStageOptions& o) {
  require_path(o.run, "--run");
  require_path(o.qrels, "--qrels");
  const RankingRun run = parse_run(read_text_file(o.run));
  const Qrels qrels = parse_qrels(read_text_file(o.qrels));
  auto values = evaluate(run, qrels, o.metrics);
  if (!o.out.empty()) {
    json metrics = json::object();
    for (const auto& [name, v] : values) metrics[name] = v;
    // Per-bug scores allow paired significance tests outside this tool.
    json per_bug = json::object();
    static const Ranking kEmpty;
    for (const auto& [bug, relevant] : qrels) {
      auto it = run.find(bug);
      const Ranking& r = it == run.end() ? kEmpty : it->second;
      per_bug[bug] = {{"rr", reciprocal_rank(r, relevant)},
                      {"ap", average_precision(r, relevant)}};
    }
    write_text_file(o.out, json{{"metrics", metrics}, {"per_bug", per_bug}}.dump(2) + "\n");
  }
  return values;
}

// --- full pipeline -----------------------------------------------------------

void PipelineConfig::validate() const {
  require_path(bugs, "--bugs");
  require_path(diffs, "--diffs");
  require_path(links, "--links");
  if (!changesets.empty()) require_path(changesets, "--changesets");
  if (!patterns.empty()) require_path(patterns, "--patterns");
  if (work.empty()) throw UsageError("--out is required");
  if (factor < 1) throw UsageError("--factor must be at least 1");
  if (!(alpha > 0.0)) throw UsageError("--alpha must be positive");
  if (!(omega > 0.0)) throw UsageError("--omega must be positive");
  if (!(p_drop >= 0.0 && p_drop <= 1.0)) throw UsageError("--p-drop must lie in [0, 1]");
  if (top_k < 1) throw UsageError("--top-k must be at least 1");
}

namespace {

struct Stage {
  std::string name;
  std::vector<std::string> depends_on;
  std::vector<fs::path> outputs;
  std::function<void()> run;
};

}  // namespace

PipelineResult run_pipeline(const PipelineConfig& c) {
  c.validate();
  const fs::path corpus = c.work / "corpus";
  const fs::path structured = corpus / "structured.jsonl";
  const fs::path d_aug = c.work / "d_aug.jsonl";
  const fs::path d_rep = c.work / "d_rep.jsonl";
  const fs::path d_bl = c.work / "d_bl.jsonl";
  const fs::path stats = c.work / "stats.json";
  const fs::path stats_curves = c.work / "stats.csv";
  const fs::path index_dir = c.work / "index";
  const fs::path run_file = c.work / "run.txt";
  const fs::path metrics_file = c.work / "metrics.json";

  AugmenterInputs aug_in;
  aug_in.corpus = corpus;
  aug_in.structured = structured;
  aug_in.patterns = c.patterns;
  aug_in.seed = c.seed;
  aug_in.p_drop = c.p_drop;
  aug_in.paraphraser = c.paraphraser;
  aug_in.service_url = c.service_url;

  PipelineResult result;
  std::vector<Stage> stages;
  stages.push_back({"ingest", {},
                    {corpus / "bugs.jsonl", corpus / "changesets.jsonl",
                     corpus / "links.jsonl", corpus / "train_bugs.jsonl",
                     corpus / "test_bugs.jsonl", corpus / "d_ori.jsonl",
                     corpus / "qrels.txt", corpus / "code_dict.json"},
                    [&] {
                      auto s = run_ingest({c.bugs, c.diffs, c.changesets, c.links, c.seed,
                                           corpus});
                      spdlog::info("ingest: {} bugs ({} dropped), {} train / {} test, "
                                   "{} hunks, |D_ori| = {}",
                                   s.bugs, s.dropped, s.train, s.test, s.hunks, s.d_ori);
                    }});
  stages.push_back({"extract", {"ingest"}, {structured}, [&] {
                      const auto n = run_extract({corpus, c.patterns, {}, structured});
                      spdlog::info("extract: {} structured reports", n);
                    }});
  stages.push_back({"augment", {"ingest", "extract"}, {d_aug, reports_path_for(d_aug), d_rep}, [&] {
                      auto s = run_augment({aug_in, c.factor, d_aug, d_rep});
                      spdlog::info("augment: |D_aug| = {}, |D_rep| = {}, {} QC rejections",
                                   s.d_aug, s.d_rep, s.stats.qc_rejections);
                    }});
  stages.push_back({"balance", {"ingest", "extract"}, {d_bl, reports_path_for(d_bl)}, [&] {
                      BalanceStageOptions o;
                      o.inputs = aug_in;
                      o.train = corpus / "d_ori.jsonl";
                      o.alpha = c.alpha;
                      o.omega = c.omega;
                      o.out = d_bl;
                      auto s = run_balance(o);
                      spdlog::info("balance: |D_bl| = {} (max_br {}, max_cl {})", s.d_bl,
                                   s.max_br, s.max_cl);
                    }});
  stages.push_back({"stats", {"ingest", "augment", "balance"}, {stats, stats_curves}, [&] {
                      const std::vector<fs::path> sets{corpus / "d_ori.jsonl", d_rep, d_aug,
                                                       d_bl};
                      run_stats({sets, c.top_k, stats, {}});
                      std::string csv;
                      for (const fs::path& p : sets) {
                        std::string part = stats_csv(read_dataset(p, dataset_name_for(p)));
                        csv += csv.empty() ? part : part.substr(part.find('\n') + 1);
                      }
                      write_text_file(stats_curves, csv);
                    }});
  stages.push_back({"index", {"ingest"}, {index_dir / "index.json"}, [&] {
                      spdlog::info("index: {} hunks", run_index(corpus, index_dir));
                    }});
  stages.push_back({"retrieve", {"ingest", "index"}, {run_file}, [&] {
                      run_retrieve({index_dir, corpus / "test_bugs.jsonl", c.top_n, run_file});
                    }});
  stages.push_back({"eval", {"ingest", "retrieve"}, {metrics_file}, [&] {
                      run_eval({run_file, corpus / "qrels.txt", c.metrics, metrics_file});
                    }});

  for (Stage& stage : stages) {
    const bool present = std::all_of(stage.outputs.begin(), stage.outputs.end(),
                                     [](const fs::path& p) { return fs::exists(p); });
    // A rerun of any input stage invalidates this one.
    const bool stale = std::any_of(
        stage.depends_on.begin(), stage.depends_on.end(), [&](const std::string& d) {
          return std::find(result.ran.begin(), result.ran.end(), d) != result.ran.end();
        });
    if (present && !c.force && !stale) {
      spdlog::info("{}: outputs present, skipped", stage.name);
      result.skipped.push_back(stage.name);
      continue;
    }
    try {
      stage.run();
    } catch (const UsageError&) {
      throw;
    } catch (const std::exception& e) {
      throw StageError(stage.name, e.what());
    }
    result.ran.push_back(stage.name);
  }

  // Recomputed so skipped runs still report them, in the requested order.
  result.metrics = evaluate(parse_run(read_text_file(run_file)),
                            parse_qrels(read_text_file(corpus / "qrels.txt")), c.metrics);

  json inputs = json::object();
  auto add_input = [&](const char* key, const fs::path& p) {
    if (!p.empty()) inputs[key] = {{"path", p.generic_string()}, {"sha256", sha256_path(p)}};
  };
  add_input("bugs", c.bugs);
  add_input("diffs", c.diffs);
  add_input("changesets", c.changesets);
  add_input("links", c.links);
  add_input("patterns", c.patterns);

  json artifacts = json::object();
  std::set<std::string> names;
  for (const Stage& stage : stages) {
    for (const fs::path& p : stage.outputs) names.insert(p.lexically_relative(c.work).generic_string());
  }
  for (const std::string& name : names) artifacts[name] = sha256_file(c.work / name);

  json stage_names = json::array();
  for (const Stage& s : stages) stage_names.push_back(s.name);

  const json manifest{
      {"tool", "bugaug"},
      {"version", version()},
      {"config",
       {{"seed", c.seed},
        {"factor", c.factor},
        {"alpha", c.alpha},
        {"omega", c.omega},
        {"p_drop", c.p_drop},
        {"paraphraser", c.paraphraser},
        {"top_k", c.top_k},
        {"top_n", c.top_n},
        {"metrics", c.metrics}}},
      {"stages", stage_names},
      {"inputs", inputs},
      {"artifacts", artifacts}};
  result.manifest = c.work / "manifest.json";
  const std::string text = manifest.dump(2) + "\n";
  if (!fs::exists(result.manifest) || read_text_file(result.manifest) != text) {
    write_text_file(result.manifest, text);
  }
  return result;
}

}  // namespace bugaug
