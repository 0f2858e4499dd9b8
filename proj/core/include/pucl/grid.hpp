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

#ifndef PUCL_GRID_HPP_
#define PUCL_GRID_HPP_

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace pucl {

// Integer index of one cube cell; one entry per axis, unbounded in either
// direction.
using GridCell = std::vector<std::int64_t>;

// Axis-aligned cube grid over R^d with half-open cells
// [anchor + k*side, anchor + (k+1)*side). Every point of R^d lies in exactly
// one cell. The grid itself is data-independent: it is fixed by (dim, side,
// anchor) before any sample is seen.
struct GridPartition {
  std::size_t dim;
  double side;
  std::vector<double> anchor;  // one offset per axis

  // Anchored at the origin. Requires dim >= 1, side > 0.
  GridPartition(std::size_t dim, double side);
  GridPartition(std::size_t dim, double side, std::vector<double> anchor);

  double cell_volume() const;  // side^dim

  // Lower corner of the cell, componentwise anchor + index*side.
  std::vector<double> cell_origin(const GridCell& cell) const;
};

// Cube side length r = n^(-1 / (2d)) used by the grid-based learners; decays
// slowly enough that the expected cell occupancy n * r^d grows with n.
double grid_side_length(std::size_t n, std::size_t d);

// Cell index of x: componentwise floor((x_i - anchor_i) / side).
GridCell cell_of(std::span<const double> x, const GridPartition& grid);

// Number of half-open cells of width `side` needed to cover [0, 1] per axis:
// ceil(1 / side), evaluated with a tolerance so that exact divisors do not
// round up from floating-point error.
std::int64_t cells_per_axis_for_unit_interval(double side);

}  // namespace pucl

#endif  // PUCL_GRID_HPP_
