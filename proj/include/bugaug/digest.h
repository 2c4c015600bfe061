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

// SHA-256 digests of strings, files and directory trees.

#ifndef BUGAUG_DIGEST_H_
#define BUGAUG_DIGEST_H_

#include <filesystem>
#include <string>
#include <string_view>

namespace bugaug {

// Lowercase hex.
std::string sha256_hex(std::string_view data);
std::string sha256_file(const std::filesystem::path& path);
// Digest over the sorted relative paths and contents of every regular file.
std::string sha256_tree(const std::filesystem::path& dir);
// File or tree, whichever the path names.
std::string sha256_path(const std::filesystem::path& path);

}  // namespace bugaug

#endif  // BUGAUG_DIGEST_H_
