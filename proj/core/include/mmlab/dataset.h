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

#ifndef MMLAB_DATASET_H_
#define MMLAB_DATASET_H_

#include <Eigen/Core>
#include <cstdint>
#include <istream>
#include <ostream>
#include <string>

namespace mmlab {

using Vector = Eigen::VectorXd;
using Matrix =
    Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

// An ordered collection of n >= 1 samples of a common dimension d, stored
// one sample per row. The sample mean is computed once at construction.
class Dataset {
 public:
  // Throws kEmptyDataset for zero rows, kInvalidArgument for zero columns
  // or non-finite entries.
  explicit Dataset(Matrix samples);

  int size() const { return static_cast<int>(samples_.rows()); }
  int dim() const { return static_cast<int>(samples_.cols()); }
  Vector sample(int i) const;
  const Vector& mean() const { return mean_; }
  const Matrix& samples() const { return samples_; }

  friend bool operator==(const Dataset& a, const Dataset& b) {
    return a.samples_ == b.samples_;
  }

 private:
  Matrix samples_;
  Vector mean_;
};

// n i.i.d. N(0, I_d) samples drawn from a mt19937_64 stream seeded by `seed`.
Dataset MakeGaussianDataset(int d, int n, std::uint64_t seed);

// CSV without header, one sample per row, 17 significant digits so that a
// write/read round trip is exact.
void WriteDatasetCsv(const Dataset& data, std::ostream& out);
Dataset ReadDatasetCsv(std::istream& in);

}  // namespace mmlab

#endif  // MMLAB_DATASET_H_
