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

#ifndef PUCL_DENSITY_HPP_
#define PUCL_DENSITY_HPP_

#include <cstddef>
#include <iosfwd>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "pucl/grid.hpp"
#include "pucl/laplace.hpp"
#include "pucl/points.hpp"
#include "pucl/rng.hpp"

namespace pucl {

// Axis-aligned half-open box [lo, hi); empty when lo_i >= hi_i on any axis.
struct Box {
  std::vector<double> lo;
  std::vector<double> hi;

  std::size_t dim() const { return lo.size(); }
  double volume() const;

  // Requires matching lengths and finite coordinates.
  void validate() const;
};

// Intersection volume of two boxes of equal dimension.
double box_intersection_volume(const Box& a, const Box& b);

// Density that is constant on each cell of a cube grid; cells absent from
// `values` carry density zero. Raw private estimates may integrate to less
// than one (thresholding removes mass) and are kept as released; normalized
// variants integrate to exactly one.
struct PiecewiseConstantDensity {
  GridPartition grid;
  std::map<GridCell, double> values;
  bool normalized = false;
  bool uniform_fallback = false;  // a degenerate estimate was replaced

  std::size_t nonzero_cells() const { return values.size(); }
  double value_at(std::span<const double> x) const;
  double total_mass() const;  // sum of value * cell volume

  // Bounding box of the cells with nonzero value; nullopt when empty.
  std::optional<Box> support_box() const;

  void to_text(std::ostream& out) const;
  std::string to_text() const;
  static PiecewiseConstantDensity from_text(std::istream& in);
  static PiecewiseConstantDensity from_text(const std::string& text);
};

// Density that is constant on finitely many pairwise-disjoint boxes; the
// closed-form side of exact L1 computations. pieces hold (region, density
// value).
struct PiecewiseConstantRef {
  std::vector<std::pair<Box, double>> pieces;

  double total_mass() const;
  // Exact mass of the query box under this density.
  double mass(const Box& query) const;
};

// View of a cell density as a boxy reference (one piece per nonzero cell).
PiecewiseConstantRef as_reference(const PiecewiseConstantDensity& f);

// The estimation grid a sample of size n in dimension d would use:
// origin-anchored cubes of side grid_side_length(n, d).
GridPartition density_grid(std::size_t n, std::size_t d);

// Private density estimate: stability-based histogram of grid-cell counts,
// scaled by 1 / (n * r^d). (epsilon, delta)-DP; requires delta > 0. The
// result is raw: thresholded cells are exactly zero and total mass may be
// below one. Valid over all of R^d, no domain restriction.
PiecewiseConstantDensity pcde_fit(const PointBuffer& points,
                                  const PrivacyBudget& budget, SeededRng& rng);

// Non-private counterpart on an explicit grid: cell count / (n * cell
// volume). Baseline for utility comparisons.
PiecewiseConstantDensity empirical_histogram_density(const PointBuffer& points,
                                                     const GridPartition& grid);

// Clips negative cells to zero and rescales so the total mass is one.
// Throws DegenerateDensityError when no positive mass remains.
PiecewiseConstantDensity normalize_density(const PiecewiseConstantDensity& f);

// normalize_density, except that a degenerate input yields the uniform
// density on the unit cube at the grid anchor (cells covering
// [anchor, anchor + ceil(1/side) * side)^d), with uniform_fallback set.
PiecewiseConstantDensity normalized_or_uniform_fallback(
    const PiecewiseConstantDensity& f);

// Exact integral of |f - g| over R^d (both sides piecewise constant, so the
// integral reduces to finite sums of box-overlap volumes).
double l1_distance(const PiecewiseConstantDensity& f,
                   const PiecewiseConstantRef& g);
double l1_distance(const PiecewiseConstantDensity& f,
                   const PiecewiseConstantDensity& g);

// Exact integral of |f - g| restricted to an axis-aligned box.
double l1_distance_on_box(const PiecewiseConstantDensity& f,
                          const PiecewiseConstantRef& g, const Box& region);

}  // namespace pucl

#endif  // PUCL_DENSITY_HPP_
