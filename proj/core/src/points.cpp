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

#include "pucl/points.hpp"

#include "pucl/errors.hpp"

namespace pucl {

PointBuffer::PointBuffer(std::size_t dim) : dim_(dim) {
  if (dim == 0) {
    throw InvalidParameterError("point dimension must be >= 1");
  }
}

PointBuffer::PointBuffer(std::size_t dim, std::vector<double> coords)
    : dim_(dim), coords_(std::move(coords)) {
  if (dim == 0) {
    throw InvalidParameterError("point dimension must be >= 1");
  }
  if (coords_.size() % dim != 0) {
    throw InvalidInputError(
        "flat coordinate array length must be a multiple of the dimension");
  }
}

void PointBuffer::push(std::span<const double> p) {
  if (p.size() != dim_) {
    throw InvalidInputError("appended point has the wrong dimension");
  }
  coords_.insert(coords_.end(), p.begin(), p.end());
}

void LabeledSample::validate() const {
  if (points.size() != labels.size()) {
    throw InvalidInputError("points and labels must have equal length");
  }
  for (std::uint8_t label : labels) {
    if (label > 1) {
      throw InvalidInputError("labels must be 0 or 1");
    }
  }
}

}  // namespace pucl
