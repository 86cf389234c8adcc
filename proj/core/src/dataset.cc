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

#include "mmlab/dataset.h"

#include <fmt/format.h>

#include <cmath>
#include <random>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "mmlab/error.h"

namespace mmlab {

Dataset::Dataset(Matrix samples) : samples_(std::move(samples)) {
  if (samples_.rows() == 0) {
    throw Error(ErrorCode::kEmptyDataset, "dataset has no samples");
  }
  if (samples_.cols() == 0) {
    throw Error(ErrorCode::kInvalidArgument, "samples have dimension 0");
  }
  if (!samples_.allFinite()) {
    throw Error(ErrorCode::kInvalidArgument, "dataset has non-finite entries");
  }
  mean_ = samples_.colwise().mean().transpose();
}

Vector Dataset::sample(int i) const {
  if (i < 0 || i >= size()) {
    throw Error(ErrorCode::kIndexOutOfRange,
                fmt::format("sample index {} outside [0, {})", i, size()));
  }
  return samples_.row(i).transpose();
}

Dataset MakeGaussianDataset(int d, int n, std::uint64_t seed) {
  if (d < 1 || n < 1) {
    throw Error(ErrorCode::kInvalidArgument,
                fmt::format("need d >= 1 and n >= 1, got d={} n={}", d, n));
  }
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  Matrix samples(n, d);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < d; ++j) samples(i, j) = normal(rng);
  }
  return Dataset(std::move(samples));
}

void WriteDatasetCsv(const Dataset& data, std::ostream& out) {
  const Matrix& s = data.samples();
  fmt::memory_buffer buf;
  for (Eigen::Index i = 0; i < s.rows(); ++i) {
    for (Eigen::Index j = 0; j < s.cols(); ++j) {
      if (j > 0) buf.push_back(',');
      fmt::format_to(std::back_inserter(buf), "{:.17g}", s(i, j));
    }
    buf.push_back('\n');
  }
  out.write(buf.data(), static_cast<std::streamsize>(buf.size()));
}

Dataset ReadDatasetCsv(std::istream& in) {
  std::vector<std::vector<double>> rows;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::vector<double> row;
    std::stringstream fields(line);
    std::string field;
    while (std::getline(fields, field, ',')) {
      try {
        std::size_t used = 0;
        row.push_back(std::stod(field, &used));
        if (used != field.size()) throw std::invalid_argument(field);
      } catch (const std::exception&) {
        throw Error(ErrorCode::kIo,
                    fmt::format("line {}: cannot parse '{}'", line_no, field));
      }
    }
    if (!rows.empty() && row.size() != rows.front().size()) {
      throw Error(ErrorCode::kDimensionMismatch,
                  fmt::format("line {}: expected {} columns, got {}", line_no,
                              rows.front().size(), row.size()));
    }
    rows.push_back(std::move(row));
  }
  if (rows.empty()) throw Error(ErrorCode::kEmptyDataset, "empty CSV");
  Matrix samples(static_cast<Eigen::Index>(rows.size()),
                 static_cast<Eigen::Index>(rows.front().size()));
  for (std::size_t i = 0; i < rows.size(); ++i) {
    for (std::size_t j = 0; j < rows[i].size(); ++j) {
      samples(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) =
          rows[i][j];
    }
  }
  return Dataset(std::move(samples));
}

}  // namespace mmlab
