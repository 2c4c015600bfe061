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

#include "bugaug/json_io.h"

#include <algorithm>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace bugaug {

using nlohmann::json;

namespace {

std::string_view marker_name(LineMarker m) {
  switch (m) {
    case LineMarker::kAdded: return "+";
    case LineMarker::kRemoved: return "-";
    case LineMarker::kContext: break;
  }
  return " ";
}

LineMarker parse_marker(const std::string& s) {
  if (s == "+") return LineMarker::kAdded;
  if (s == "-") return LineMarker::kRemoved;
  if (s == " ") return LineMarker::kContext;
  throw std::invalid_argument("unknown line marker '" + s + "'");
}

std::string_view label_name(Label l) {
  return l == Label::kPositive ? "positive" : "negative";
}

Label parse_label(const std::string& s) {
  if (s == "positive") return Label::kPositive;
  if (s == "negative") return Label::kNegative;
  throw std::invalid_argument("unknown label '" + s + "'");
}

}  // namespace

void to_json(json& j, const BugReport& v) {
  j = json{{"id", v.id},
           {"project", v.project},
           {"summary", v.summary},
           {"description", v.description},
           {"opened_at", v.opened_at},
           {"status", to_string(v.status)}};
}

void from_json(const json& j, BugReport& v) {
  j.at("id").get_to(v.id);
  v.project = j.value("project", "");
  j.at("summary").get_to(v.summary);
  v.description = j.value("description", "");
  j.at("opened_at").get_to(v.opened_at);
  v.status = parse_bug_status(j.value("status", "fixed"));
}

void to_json(json& j, const Hunk& v) {
  json lines = json::array();
  for (const HunkLine& l : v.lines) lines.push_back({marker_name(l.marker), l.text});
  j = json{{"id", v.id},
           {"changeset_id", v.changeset_id},
           {"file_path", v.file_path},
           {"class_name", v.class_name},
           {"old_start", v.old_start},
           {"old_len", v.old_len},
           {"new_start", v.new_start},
           {"new_len", v.new_len},
           {"lines", lines}};
}

void from_json(const json& j, Hunk& v) {
  j.at("id").get_to(v.id);
  j.at("changeset_id").get_to(v.changeset_id);
  j.at("file_path").get_to(v.file_path);
  j.at("class_name").get_to(v.class_name);
  j.at("old_start").get_to(v.old_start);
  j.at("old_len").get_to(v.old_len);
  j.at("new_start").get_to(v.new_start);
  j.at("new_len").get_to(v.new_len);
  v.lines.clear();
  for (const json& l : j.at("lines")) {
    v.lines.push_back({parse_marker(l.at(0).get<std::string>()), l.at(1).get<std::string>()});
  }
}

void to_json(json& j, const Changeset& v) {
  j = json{{"id", v.id},
           {"author", v.author},
           {"committed_at", v.committed_at},
           {"log_message", v.log_message},
           {"hunks", v.hunks}};
}

void from_json(const json& j, Changeset& v) {
  j.at("id").get_to(v.id);
  v.author = j.value("author", "");
  v.committed_at = j.value("committed_at", "");
  v.log_message = j.value("log_message", "");
  v.hunks = j.value("hunks", std::vector<Hunk>{});
}

void from_json(const json& j, ChangesetMeta& v) {
  j.at("id").get_to(v.id);
  v.author = j.value("author", "");
  v.committed_at = j.value("committed_at", "");
  v.log_message = j.value("log_message", "");
}

void to_json(json& j, const LinkRecord& v) {
  j = json{{"bug_id", v.bug_id},
           {"inducing_changeset_ids", v.inducing_changeset_ids},
           {"fixing_changeset_ids", v.fixing_changeset_ids}};
}

void from_json(const json& j, LinkRecord& v) {
  j.at("bug_id").get_to(v.bug_id);
  v.inducing_changeset_ids = j.value("inducing_changeset_ids", std::vector<std::string>{});
  v.fixing_changeset_ids = j.value("fixing_changeset_ids", std::vector<std::string>{});
}

void to_json(json& j, const TrainingSample& v) {
  j = json{{"bug_ref", v.bug_ref},
           {"origin_bug_id", v.origin_bug_id},
           {"hunk_id", v.hunk_id},
           {"class_name", v.class_name},
           {"label", label_name(v.label)}};
}

void from_json(const json& j, TrainingSample& v) {
  j.at("bug_ref").get_to(v.bug_ref);
  j.at("origin_bug_id").get_to(v.origin_bug_id);
  j.at("hunk_id").get_to(v.hunk_id);
  j.at("class_name").get_to(v.class_name);
  v.label = parse_label(j.at("label").get<std::string>());
}

void to_json(json& j, const Token& v) {
  j = json{{"text", v.text}, {"is_code", v.is_code}};
  if (v.line != 0) j["line"] = v.line;
}

void from_json(const json& j, Token& v) {
  j.at("text").get_to(v.text);
  v.is_code = j.value("is_code", false);
  v.line = j.value("line", std::uint32_t{0});
}

void to_json(json& j, const Sample& v) {
  j = json{{"kind", to_string(v.kind)},
           {"tokens", v.tokens},
           {"span", {v.source_span.start, v.source_span.end}}};
}

void from_json(const json& j, Sample& v) {
  v.kind = parse_sample_kind(j.at("kind").get<std::string>());
  j.at("tokens").get_to(v.tokens);
  const json& span = j.at("span");
  v.source_span = {span.at(0).get<std::size_t>(), span.at(1).get<std::size_t>()};
}

void to_json(json& j, const StructuredBugReport& v) {
  j = json{{"bug_id", v.bug_id}, {"samples", v.samples}};
}

void from_json(const json& j, StructuredBugReport& v) {
  j.at("bug_id").get_to(v.bug_id);
  j.at("samples").get_to(v.samples);
}

void to_json(json& j, const AugmentedBugReport& v) {
  json prov = json::array();
  for (const SampleProvenance& p : v.provenance) {
    prov.push_back({{"index", p.sample_index}, {"ops", p.applied_ops}, {"dropped", p.dropped}});
  }
  j = json{{"id", v.id},
           {"origin_bug_id", v.origin_bug_id},
           {"text", render_report(v.samples)},
           {"samples", v.samples},
           {"permutation", v.permutation},
           {"provenance", prov}};
}

void from_json(const json& j, AugmentedBugReport& v) {
  j.at("id").get_to(v.id);
  j.at("origin_bug_id").get_to(v.origin_bug_id);
  j.at("samples").get_to(v.samples);
  j.at("permutation").get_to(v.permutation);
  v.provenance.clear();
  for (const json& p : j.at("provenance")) {
    v.provenance.push_back({p.at("index").get<std::size_t>(),
                            p.at("ops").get<std::vector<std::string>>(),
                            p.at("dropped").get<bool>()});
  }
}

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open '" + path.string() + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_text_file(const std::filesystem::path& path, std::string_view text) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write '" + tmp.string() + "'");
    out.write(text.data(), static_cast<std::streamsize>(text.size()));
    if (!out) throw std::runtime_error("write failed for '" + tmp.string() + "'");
  }
  std::filesystem::rename(tmp, path);
}

void parse_jsonl_lines(std::string_view text, const std::string& source,
                       const std::function<void(const json&)>& fn) {
  std::size_t pos = 0;
  std::size_t line_no = 0;
  while (pos < text.size()) {
    std::size_t nl = text.find('\n', pos);
    if (nl == std::string_view::npos) nl = text.size();
    ++line_no;
    std::string_view line = text.substr(pos, nl - pos);
    pos = nl + 1;
    if (line.find_first_not_of(" \t\r") == std::string_view::npos) continue;
    try {
      fn(json::parse(line));
    } catch (const std::exception& e) {
      throw ParseError(source + ": " + e.what(), line_no);
    }
  }
}

Dataset read_dataset(const std::filesystem::path& path, std::string name) {
  return Dataset{std::move(name), read_jsonl<TrainingSample>(path)};
}

void write_dataset(const std::filesystem::path& path, const Dataset& dataset) {
  write_jsonl(path, dataset.samples);
}

std::map<std::string, CodeNameDictionary> parse_code_names(std::string_view json_text) {
  std::map<std::string, CodeNameDictionary> out;
  const json doc = json::parse(json_text);
  for (const auto& [bug, names] : doc.items()) {
    CodeNameDictionary d{bug, names.get<std::vector<std::string>>()};
    std::sort(d.names.begin(), d.names.end());
    d.names.erase(std::unique(d.names.begin(), d.names.end()), d.names.end());
    out.emplace(bug, std::move(d));
  }
  return out;
}

std::string format_code_names(const std::map<std::string, CodeNameDictionary>& names) {
  json doc = json::object();
  for (const auto& [bug, d] : names) doc[bug] = d.names;
  return doc.dump(1) + "\n";
}

}  // namespace bugaug
