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

// Python bindings for the bugaug core.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include "bugaug/code_ops.h"
#include "bugaug/extract.h"
#include "bugaug/metrics.h"
#include "bugaug/nl_ops.h"
#include "bugaug/pipeline.h"
#include "bugaug/retrieval.h"
#include "bugaug/rng.h"

namespace py = pybind11;
using namespace bugaug;

namespace {

std::uint64_t derive_seed_py(std::uint64_t master, const py::args& parts) {
  SeedKey key(master);
  for (const py::handle& p : parts) {
    if (py::isinstance<py::str>(p)) {
      key.add(std::string_view(p.cast<std::string>()));
    } else if (py::isinstance<py::int_>(p)) {
      key.add(p.cast<std::uint64_t>());
    } else {
      throw py::type_error("seed key parts must be str or int");
    }
  }
  return key.value();
}

RankingRun to_run(const std::map<std::string, std::vector<std::pair<std::string, double>>>& in) {
  RankingRun run;
  for (const auto& [bug, items] : in) {
    Ranking& r = run[bug];
    for (const auto& [hunk, score] : items) r.push_back({hunk, score});
    normalize_ranking(r);
  }
  return run;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Bug report augmentation and hunk retrieval core";

  py::class_<Token>(m, "Token")
      .def(py::init<std::string, bool, std::uint32_t>(), py::arg("text"),
           py::arg("is_code") = false, py::arg("line") = 0)
      .def_readwrite("text", &Token::text)
      .def_readwrite("is_code", &Token::is_code)
      .def_readwrite("line", &Token::line)
      .def("__eq__", [](const Token& a, const Token& b) { return a == b; })
      .def("__repr__", [](const Token& t) {
        return "Token(" + py::repr(py::str(t.text)).cast<std::string>() +
               (t.is_code ? ", is_code=True" : "") + ")";
      });

  m.def("derive_seed", &derive_seed_py, py::arg("master"),
        "Stream seed for a master seed and a key path of str/int parts.");
  m.def("tokenize_prose", [](const std::string& s) { return tokenize_prose(s); });
  m.def("render_tokens", &render_tokens);
  m.def("classify_text", [](const std::string& s) {
    return std::string(to_string(classify_text(s, default_pattern_dictionary())));
  });
  m.def("reduced_stack_traces",
        [](const std::string& text) {
          std::vector<std::vector<std::string>> out;
          for (const StackTrace& t : extract_stack_traces(text).traces) {
            std::vector<std::string> lines;
            for (const StackFrame& f : reduce_stack_trace(t)) lines.push_back(f.raw);
            out.push_back(std::move(lines));
          }
          return out;
        },
        "Stack traces found in text, each reduced to its key frames.");
  m.def("levenshtein", [](const std::string& a, const std::string& b) { return levenshtein(a, b); });
  m.def("top_k_substitutes",
        [](const std::string& token, const std::vector<std::string>& names, std::size_t k) {
          return top_k_substitutes(token, names, k);
        },
        py::arg("token"), py::arg("names"), py::arg("k") = 20);
  m.def("random_swap",
        [](const std::vector<Token>& tokens, std::size_t n, std::uint64_t seed) {
          Rng rng(seed);
          return random_swap(tokens, n, rng);
        },
        py::arg("tokens"), py::arg("n"), py::arg("seed"));
  m.def("op_budget", [](std::size_t count, double lambda, const std::string& op) {
    static const std::map<std::string, NlOp> kOps{{"replace", NlOp::kReplace},
                                                  {"insert", NlOp::kInsert},
                                                  {"swap", NlOp::kSwap},
                                                  {"delete", NlOp::kDelete}};
    auto it = kOps.find(op);
    if (it == kOps.end()) throw py::value_error("unknown operator '" + op + "'");
    return op_budget(count, lambda, it->second);
  });

  m.def("bm25_rank",
        [](const std::string& query, const std::map<std::string, std::string>& docs,
           std::size_t top_n) {
          std::vector<HunkDocument> hd;
          for (const auto& [id, text] : docs) hd.push_back({id, "", text});
          std::vector<std::pair<std::string, double>> out;
          for (const RankedItem& r : rank(query, HunkIndex::build(hd), top_n)) {
            out.emplace_back(r.hunk_id, r.score);
          }
          return out;
        },
        py::arg("query"), py::arg("docs"), py::arg("top_n") = 0,
        "Ranks {id: text} documents against a query with BM25.");

  m.def("evaluate",
        [](const std::map<std::string, std::vector<std::pair<std::string, double>>>& run,
           const Qrels& qrels, const std::string& metrics) {
          std::map<std::string, double> out;
          for (const auto& [k, v] : evaluate(to_run(run), qrels, metrics)) out[k] = v;
          return out;
        },
        py::arg("run"), py::arg("qrels"), py::arg("metrics") = "mrr,map,p@1,p@3,p@5",
        "run: {bug: [(hunk, score), ...]}; qrels: {bug: {hunk, ...}}.");

  m.def("run_pipeline",
        [](const std::filesystem::path& bugs, const std::filesystem::path& diffs,
           const std::filesystem::path& links, const std::filesystem::path& work,
           std::uint64_t seed, std::uint32_t factor, double alpha, double omega, bool force) {
          PipelineConfig c;
          c.bugs = bugs;
          c.diffs = diffs;
          c.links = links;
          c.work = work;
          c.seed = seed;
          c.factor = factor;
          c.alpha = alpha;
          c.omega = omega;
          c.force = force;
          PipelineResult r;
          {
            py::gil_scoped_release release;
            r = run_pipeline(c);
          }
          py::dict out;
          out["ran"] = r.ran;
          out["skipped"] = r.skipped;
          py::dict metrics;
          for (const auto& [k, v] : r.metrics) metrics[py::str(k)] = v;
          out["metrics"] = metrics;
          out["manifest"] = r.manifest;
          return out;
        },
        py::arg("bugs"), py::arg("diffs"), py::arg("links"), py::arg("work"),
        py::arg("seed") = 42, py::arg("factor") = 10, py::arg("alpha") = 0.85,
        py::arg("omega") = 2.0, py::arg("force") = false);

  py::register_exception<UsageError>(m, "UsageError", PyExc_ValueError);
  m.attr("__version__") = BUGAUG_VERSION;
}
