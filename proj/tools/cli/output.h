// Copyright 2026 The mmlab Authors.
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

#ifndef MMLAB_TOOLS_CLI_OUTPUT_H_
#define MMLAB_TOOLS_CLI_OUTPUT_H_

#include <cstdint>
#include <filesystem>
#include <mutex>
#include <nlohmann/json.hpp>
#include <string>
#include <string_view>
#include <vector>

namespace mmlab::cli {

// 64-bit FNV-1a.
std::uint64_t Fnv1a64(std::string_view bytes);

// FNV-1a of the compact JSON dump, as 16 lowercase hex digits.
std::string ConfigHash(const nlohmann::json& canonical);

// Prefixes `body` with the `# config_hash=<hex>` line.
std::string CsvWithHash(const std::string& hash, std::string_view body);

// Writes to `<path>.tmp` and renames over `path`. Throws Error(kIo).
void WriteFileAtomic(const std::filesystem::path& path,
                     std::string_view content);

// Six decimals in [1e-4, 1e6), scientific otherwise.
std::string FormatBoundValue(double value);

// Files of one command invocation. Begin() removes a stale `<stem>.done`;
// Finish() writes it, listing every file, once all writes succeeded.
class OutputSet {
 public:
  OutputSet(std::filesystem::path dir, std::string stem);

  void Begin();
  // Thread-safe; returns the written path.
  std::filesystem::path Write(const std::string& file_name,
                              std::string_view content);
  void Finish();

  const std::filesystem::path& dir() const { return dir_; }
  std::filesystem::path done_path() const;

 private:
  std::filesystem::path dir_;
  std::string stem_;
  std::mutex mu_;
  std::vector<std::string> written_;
};

}  // namespace mmlab::cli

#endif  // MMLAB_TOOLS_CLI_OUTPUT_H_
