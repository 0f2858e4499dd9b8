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

#include "pucl/grid.hpp"

#include <cmath>

#include "pucl/errors.hpp"

namespace pucl {

namespace {

void check_grid_params(std::size_t dim, double side) {
  if (dim == 0) {
    throw InvalidParameterError("grid dimension must be >= 1");
  }
  if (!(side > 0.0) || !std::isfinite(side)) {
    throw InvalidParameterError("grid side length must be positive");
  }
}

}  // namespace

GridPartition::GridPartition(std::size_t dim_in, double side_in)
    : dim(dim_in), side(side_in), anchor(dim_in, 0.0) {
  check_grid_params(dim, side);
}

GridPartition::GridPartition(std::size_t dim_in, double side_in,
                             std::vector<double> anchor_in)
    : dim(dim_in), side(side_in), anchor(std::move(anchor_in)) {
  check_grid_params(dim, side);
  if (anchor.size() != dim) {
    throw InvalidParameterError("grid anchor must have one entry per axis");
  }
}

double GridPartition::cell_volume() const {
  double volume = 1.0;
  for (std::size_t i = 0; i < dim; ++i) {
    volume *= side;
  }
  return volume;
}

std::vector<double> GridPartition::cell_origin(const GridCell& cell) const {
  if (cell.size() != dim) {
    throw InvalidInputError("cell index has the wrong dimension");
  }
  std::vector<double> origin(dim);
  for (std::size_t i = 0; i < dim; ++i) {
    origin[i] = anchor[i] + static_cast<double>(cell[i]) * side;
  }
  return origin;
}

double grid_side_length(std::size_t n, std::size_t d) {
  if (n == 0) {
    throw InvalidParameterError("sample size must be >= 1");
  }
  if (d == 0) {
    throw InvalidParameterError("dimension must be >= 1");
  }
  return std::pow(static_cast<double>(n),
                  -1.0 / (2.0 * static_cast<double>(d)));
}

GridCell cell_of(std::span<const double> x, const GridPartition& grid) {
  if (x.size() != grid.dim) {
    throw InvalidInputError("point dimension does not match the grid");
  }
  GridCell cell(grid.dim);
  for (std::size_t i = 0; i < grid.dim; ++i) {
    cell[i] =
        static_cast<std::int64_t>(std::floor((x[i] - grid.anchor[i]) / grid.side));
  }
  return cell;
}

std::int64_t cells_per_axis_for_unit_interval(double side) {
  if (!(side > 0.0) || !std::isfinite(side)) {
    throw InvalidParameterError("side length must be positive");
  }
  const double inv = 1.0 / side;
  const double rounded = std::nearbyint(inv);
  // 1/side that lands within 1e-9 of an integer is treated as exact.
  if (std::abs(inv - rounded) < 1e-9) {
    return static_cast<std::int64_t>(rounded);
  }
  return static_cast<std::int64_t>(std::ceil(inv));
}

}  // namespace pucl
