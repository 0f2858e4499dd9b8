// Copyright 2026 The pucl Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef PUCL_POINTS_HPP_
#define PUCL_POINTS_HPP_

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <vector>

namespace pucl {

// Flat row-major storage for a sequence of d-dimensional points.
class PointBuffer {
 public:
  // dim must be >= 1.
  explicit PointBuffer(std::size_t dim);
  // coords.size() must be a multiple of dim.
  PointBuffer(std::size_t dim, std::vector<double> coords);

  std::size_t dim() const { return dim_; }
  std::size_t size() const { return coords_.size() / dim_; }
  bool empty() const { return coords_.empty(); }

  std::span<const double> operator[](std::size_t i) const {
    return {coords_.data() + i * dim_, dim_};
  }

  // Appends one point; p.size() must equal dim().
  void push(std::span<const double> p);
  void reserve(std::size_t n) { coords_.reserve(n * dim_); }

  const std::vector<double>& raw() const { return coords_; }

 private:
  std::size_t dim_;
  std::vector<double> coords_;
};

// Binary-labeled sample; points[i] carries labels[i].
struct LabeledSample {
  PointBuffer points;
  std::vector<std::uint8_t> labels;

  std::size_t size() const { return labels.size(); }

  // Checks index alignment and that every label is 0 or 1.
  void validate() const;
};

// A fitted binary classifier as a plain callable.
using PredictFn = std::function<int(std::span<const double>)>;

}  // namespace pucl

#endif  // PUCL_POINTS_HPP_
