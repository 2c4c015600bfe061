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

// JSON and JSON-lines encodings of the corpus, dataset and report types,
// plus small file helpers shared by the pipeline stages.

#ifndef BUGAUG_JSON_IO_H_
#define BUGAUG_JSON_IO_H_

#include <filesystem>
#include <functional>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "bugaug/builder.h"
#include "bugaug/code_ops.h"
#include "bugaug/types.h"

namespace bugaug {

// Changeset metadata as supplied next to the diff directory (no hunks).
struct ChangesetMeta {
  std::string id;
  std::string author;
  std::string committed_at;
  std::string log_message;
};

void to_json(nlohmann::json& j, const BugReport& v);
void from_json(const nlohmann::json& j, BugReport& v);
void to_json(nlohmann::json& j, const Hunk& v);
void from_json(const nlohmann::json& j, Hunk& v);
void to_json(nlohmann::json& j, const Changeset& v);
void from_json(const nlohmann::json& j, Changeset& v);
void from_json(const nlohmann::json& j, ChangesetMeta& v);
void to_json(nlohmann::json& j, const LinkRecord& v);
void from_json(const nlohmann::json& j, LinkRecord& v);
void to_json(nlohmann::json& j, const TrainingSample& v);
void from_json(const nlohmann::json& j, TrainingSample& v);
void to_json(nlohmann::json& j, const Token& v);
void from_json(const nlohmann::json& j, Token& v);
void to_json(nlohmann::json& j, const Sample& v);
void from_json(const nlohmann::json& j, Sample& v);
void to_json(nlohmann::json& j, const StructuredBugReport& v);
void from_json(const nlohmann::json& j, StructuredBugReport& v);
void to_json(nlohmann::json& j, const AugmentedBugReport& v);
void from_json(const nlohmann::json& j, AugmentedBugReport& v);

std::string read_text_file(const std::filesystem::path& path);
// Writes through a temporary sibling and renames, so readers never observe a
// half-written artifact.
void write_text_file(const std::filesystem::path& path, std::string_view text);

// One compact JSON document per line; blank lines are skipped. Errors carry
// the file name and line number.
template <typename T>
std::vector<T> parse_jsonl(std::string_view text, const std::string& source = "<input>");

template <typename T>
std::string format_jsonl(const std::vector<T>& values) {
  std::string out;
  for (const T& v : values) {
    out += nlohmann::json(v).dump();
    out += '\n';
  }
  return out;
}

template <typename T>
std::vector<T> read_jsonl(const std::filesystem::path& path) {
  return parse_jsonl<T>(read_text_file(path), path.string());
}

template <typename T>
void write_jsonl(const std::filesystem::path& path, const std::vector<T>& values) {
  write_text_file(path, format_jsonl(values));
}

// Dataset name is not stored per line; the caller supplies it.
Dataset read_dataset(const std::filesystem::path& path, std::string name);
void write_dataset(const std::filesystem::path& path, const Dataset& dataset);

// {"bug id": ["name", ...], ...}
std::map<std::string, CodeNameDictionary> parse_code_names(std::string_view json_text);
std::string format_code_names(const std::map<std::string, CodeNameDictionary>& names);

// ---------------------------------------------------------------------------

void parse_jsonl_lines(std::string_view text, const std::string& source,
                       const std::function<void(const nlohmann::json&)>& fn);

template <typename T>
std::vector<T> parse_jsonl(std::string_view text, const std::string& source) {
  std::vector<T> out;
  parse_jsonl_lines(text, source,
                    [&](const nlohmann::json& j) { out.push_back(j.get<T>()); });
  return out;
}

}  // namespace bugaug

#endif  // BUGAUG_JSON_IO_H_
