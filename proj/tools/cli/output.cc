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

#include "cli/output.h"

#include <fmt/format.h>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <system_error>
#include <utility>

#include "mmlab/error.h"

namespace mmlab::cli {

namespace fs = std::filesystem;

std::uint64_t Fnv1a64(std::string_view bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (const unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::string ConfigHash(const nlohmann::json& canonical) {
  return fmt::format("{:016x}", Fnv1a64(canonical.dump()));
}

std::string CsvWithHash(const std::string& hash, std::string_view body) {
  std::string out = fmt::format("# config_hash={}\n", hash);
  out.append(body);
  return out;
}

void WriteFileAtomic(const fs::path& path, std::string_view content) {
  fs::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) {
      throw Error(ErrorCode::kIo,
                  fmt::format("cannot open '{}' for writing", tmp.string()));
    }
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    out.flush();
    if (!out) {
      throw Error(ErrorCode::kIo,
                  fmt::format("write to '{}' failed", tmp.string()));
    }
  }
  std::error_code ec;
  fs::rename(tmp, path, ec);
  if (ec) {
    fs::remove(tmp, ec);
    throw Error(ErrorCode::kIo,
                fmt::format("cannot rename onto '{}'", path.string()));
  }
}

std::string FormatBoundValue(double value) {
  if (std::isnan(value)) return "nan";
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  const double a = std::abs(value);
  if (a == 0.0 || (a >= 1e-4 && a < 1e6)) return fmt::format("{:.6f}", value);
  return fmt::format("{:.6e}", value);
}

OutputSet::OutputSet(fs::path dir, std::string stem)
    : dir_(std::move(dir)), stem_(std::move(stem)) {}

fs::path OutputSet::done_path() const { return dir_ / (stem_ + ".done"); }

void OutputSet::Begin() {
  std::error_code ec;
  fs::create_directories(dir_, ec);
  if (ec || !fs::is_directory(dir_)) {
    throw Error(ErrorCode::kIo, fmt::format("cannot create output directory "
                                            "'{}'",
                                            dir_.string()));
  }
  fs::remove(done_path(), ec);
  if (ec) {
    throw Error(ErrorCode::kIo,
                fmt::format("cannot remove stale '{}'", done_path().string()));
  }
}

fs::path OutputSet::Write(const std::string& file_name,
                          std::string_view content) {
  const fs::path path = dir_ / file_name;
  WriteFileAtomic(path, content);
  std::lock_guard<std::mutex> lock(mu_);
  written_.push_back(file_name);
  return path;
}

void OutputSet::Finish() {
  std::vector<std::string> files;
  {
    std::lock_guard<std::mutex> lock(mu_);
    files = written_;
  }
  std::sort(files.begin(), files.end());
  std::string body;
  for (const auto& f : files) body += f + "\n";
  WriteFileAtomic(done_path(), body);
}

}  // namespace mmlab::cli
