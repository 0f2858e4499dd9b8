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

#include "pucl/density.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>

#include "pucl/errors.hpp"
#include "pucl/serialize.hpp"
#include "pucl/stable_histogram.hpp"

namespace pucl {

namespace {

constexpr std::size_t kMaxFallbackCells = std::size_t{1} << 22;

Box cell_box(const GridPartition& grid, const GridCell& cell) {
  Box box;
  box.lo = grid.cell_origin(cell);
  box.hi = box.lo;
  for (double& h : box.hi) {
    h += grid.side;
  }
  return box;
}

}  // namespace

void Box::validate() const {
  if (lo.size() != hi.size() || lo.empty()) {
    throw InvalidInputError("box corners must have equal, nonzero dimension");
  }
  for (std::size_t i = 0; i < lo.size(); ++i) {
    if (!std::isfinite(lo[i]) || !std::isfinite(hi[i])) {
      throw InvalidInputError("box corners must be finite");
    }
  }
}

double Box::volume() const {
  double v = 1.0;
  for (std::size_t i = 0; i < lo.size(); ++i) {
    v *= std::max(0.0, hi[i] - lo[i]);
  }
  return v;
}

double box_intersection_volume(const Box& a, const Box& b) {
  if (a.dim() != b.dim()) {
    throw InvalidInputError("boxes must have equal dimension");
  }
  double v = 1.0;
  for (std::size_t i = 0; i < a.dim(); ++i) {
    v *= std::max(0.0, std::min(a.hi[i], b.hi[i]) - std::max(a.lo[i], b.lo[i]));
  }
  return v;
}

double PiecewiseConstantDensity::value_at(std::span<const double> x) const {
  const GridCell cell = cell_of(x, grid);
  auto it = values.find(cell);
  return it == values.end() ? 0.0 : it->second;
}

double PiecewiseConstantDensity::total_mass() const {
  const double volume = grid.cell_volume();
  double mass = 0.0;
  for (const auto& [cell, value] : values) {
    mass += value * volume;
  }
  return mass;
}

std::optional<Box> PiecewiseConstantDensity::support_box() const {
  GridCell lo;
  GridCell hi;
  bool any = false;
  for (const auto& [cell, value] : values) {
    if (value == 0.0) {
      continue;
    }
    if (!any) {
      lo = cell;
      hi = cell;
      any = true;
      continue;
    }
    for (std::size_t i = 0; i < grid.dim; ++i) {
      lo[i] = std::min(lo[i], cell[i]);
      hi[i] = std::max(hi[i], cell[i]);
    }
  }
  if (!any) {
    return std::nullopt;
  }
  Box box;
  box.lo = grid.cell_origin(lo);
  for (std::size_t i = 0; i < grid.dim; ++i) {
    ++hi[i];
  }
  box.hi = grid.cell_origin(hi);
  return box;
}

double PiecewiseConstantRef::total_mass() const {
  double mass = 0.0;
  for (const auto& [box, value] : pieces) {
    mass += value * box.volume();
  }
  return mass;
}

double PiecewiseConstantRef::mass(const Box& query) const {
  double mass = 0.0;
  for (const auto& [box, value] : pieces) {
    mass += value * box_intersection_volume(box, query);
  }
  return mass;
}

PiecewiseConstantRef as_reference(const PiecewiseConstantDensity& f) {
  PiecewiseConstantRef ref;
  ref.pieces.reserve(f.values.size());
  for (const auto& [cell, value] : f.values) {
    ref.pieces.emplace_back(cell_box(f.grid, cell), value);
  }
  return ref;
}

GridPartition density_grid(std::size_t n, std::size_t d) {
  return GridPartition(d, grid_side_length(n, d));
}

PiecewiseConstantDensity pcde_fit(const PointBuffer& points,
                                  const PrivacyBudget& budget,
                                  SeededRng& rng) {
  if (points.empty()) {
    throw InvalidInputError("density estimation requires a nonempty sample");
  }
  const std::size_t n = points.size();
  PiecewiseConstantDensity density{density_grid(n, points.dim()), {}, false,
                                   false};
  std::vector<GridCell> keys;
  keys.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    keys.push_back(cell_of(points[i], density.grid));
  }
  const NoisyHistogram<GridCell> histogram =
      stable_histogram(keys, budget, rng);
  const double scale =
      1.0 / (static_cast<double>(n) * density.grid.cell_volume());
  for (const auto& [cell, value] : histogram.entries) {
    density.values.emplace(cell, value * scale);
  }
  return density;
}

PiecewiseConstantDensity empirical_histogram_density(
    const PointBuffer& points, const GridPartition& grid) {
  if (points.empty()) {
    throw InvalidInputError("density estimation requires a nonempty sample");
  }
  PiecewiseConstantDensity density{grid, {}, false, false};
  std::map<GridCell, std::size_t> counts;
  const std::size_t n = points.size();
  for (std::size_t i = 0; i < n; ++i) {
    ++counts[cell_of(points[i], grid)];
  }
  const double scale =
      1.0 / (static_cast<double>(n) * grid.cell_volume());
  for (const auto& [cell, count] : counts) {
    density.values.emplace(cell, static_cast<double>(count) * scale);
  }
  return density;
}

PiecewiseConstantDensity normalize_density(const PiecewiseConstantDensity& f) {
  PiecewiseConstantDensity out{f.grid, {}, true, false};
  double mass = 0.0;
  const double volume = f.grid.cell_volume();
  for (const auto& [cell, value] : f.values) {
    if (value > 0.0) {
      mass += value * volume;
    }
  }
  if (!(mass > 0.0)) {
    throw DegenerateDensityError("density estimate retained no mass");
  }
  for (const auto& [cell, value] : f.values) {
    if (value > 0.0) {
      out.values.emplace(cell, value / mass);
    }
  }
  return out;
}

PiecewiseConstantDensity normalized_or_uniform_fallback(
    const PiecewiseConstantDensity& f) {
  try {
    return normalize_density(f);
  } catch (const DegenerateDensityError&) {
    PiecewiseConstantDensity out{f.grid, {}, true, true};
    const std::int64_t m = cells_per_axis_for_unit_interval(f.grid.side);
    std::size_t total = 1;
    for (std::size_t i = 0; i < f.grid.dim; ++i) {
      if (total > kMaxFallbackCells / static_cast<std::size_t>(m)) {
        throw CapacityError("fallback density would exceed the cell cap");
      }
      total *= static_cast<std::size_t>(m);
    }
    const double value =
        1.0 / (static_cast<double>(total) * f.grid.cell_volume());
    GridCell cell(f.grid.dim, 0);
    for (std::size_t flat = 0; flat < total; ++flat) {
      out.values.emplace(cell, value);
      for (std::size_t i = f.grid.dim; i-- > 0;) {
        if (++cell[i] < m) {
          break;
        }
        cell[i] = 0;
      }
    }
    return out;
  }
}

double l1_distance(const PiecewiseConstantDensity& f,
                   const PiecewiseConstantRef& g) {
  double total = 0.0;
  for (const auto& [cell, v] : f.values) {
    const Box cb = cell_box(f.grid, cell);
    double covered = 0.0;
    for (const auto& [piece, w] : g.pieces) {
      const double overlap = box_intersection_volume(cb, piece);
      if (overlap > 0.0) {
        total += std::abs(v - w) * overlap;
        covered += overlap;
      }
    }
    total += std::abs(v) * std::max(0.0, cb.volume() - covered);
  }
  for (const auto& [piece, w] : g.pieces) {
    double covered = 0.0;
    for (const auto& [cell, v] : f.values) {
      covered += box_intersection_volume(cell_box(f.grid, cell), piece);
    }
    total += std::abs(w) * std::max(0.0, piece.volume() - covered);
  }
  return total;
}

double l1_distance(const PiecewiseConstantDensity& f,
                   const PiecewiseConstantDensity& g) {
  return l1_distance(f, as_reference(g));
}

double l1_distance_on_box(const PiecewiseConstantDensity& f,
                          const PiecewiseConstantRef& g, const Box& region) {
  region.validate();
  double total = 0.0;
  for (const auto& [cell, v] : f.values) {
    const Box cb = cell_box(f.grid, cell);
    const double cell_in_region = box_intersection_volume(cb, region);
    if (cell_in_region == 0.0) {
      continue;
    }
    Box clipped = cb;
    for (std::size_t i = 0; i < clipped.dim(); ++i) {
      clipped.lo[i] = std::max(clipped.lo[i], region.lo[i]);
      clipped.hi[i] = std::min(clipped.hi[i], region.hi[i]);
    }
    double covered = 0.0;
    for (const auto& [piece, w] : g.pieces) {
      const double overlap = box_intersection_volume(clipped, piece);
      if (overlap > 0.0) {
        total += std::abs(v - w) * overlap;
        covered += overlap;
      }
    }
    total += std::abs(v) * std::max(0.0, cell_in_region - covered);
  }
  for (const auto& [piece, w] : g.pieces) {
    const double piece_in_region = box_intersection_volume(piece, region);
    if (piece_in_region == 0.0) {
      continue;
    }
    Box clipped = piece;
    for (std::size_t i = 0; i < clipped.dim(); ++i) {
      clipped.lo[i] = std::max(clipped.lo[i], region.lo[i]);
      clipped.hi[i] = std::min(clipped.hi[i], region.hi[i]);
    }
    double covered = 0.0;
    for (const auto& [cell, v] : f.values) {
      covered += box_intersection_volume(cell_box(f.grid, cell), clipped);
    }
    total += std::abs(w) * std::max(0.0, piece_in_region - covered);
  }
  return total;
}

void PiecewiseConstantDensity::to_text(std::ostream& out) const {
  out << "pucl_density 1\n";
  out << "dim " << grid.dim << "\n";
  out << "side " << format_double(grid.side) << "\n";
  out << "anchor";
  for (double a : grid.anchor) {
    out << " " << format_double(a);
  }
  out << "\n";
  out << "normalized " << (normalized ? 1 : 0) << "\n";
  out << "fallback " << (uniform_fallback ? 1 : 0) << "\n";
  out << "cells " << values.size() << "\n";
  for (const auto& [cell, value] : values) {
    for (std::int64_t k : cell) {
      out << k << " ";
    }
    out << format_double(value) << "\n";
  }
}

std::string PiecewiseConstantDensity::to_text() const {
  std::ostringstream out;
  to_text(out);
  return out.str();
}

PiecewiseConstantDensity PiecewiseConstantDensity::from_text(
    std::istream& in) {
  std::string magic;
  int version = 0;
  in >> magic >> version;
  if (magic != "pucl_density" || version != 1) {
    throw InvalidInputError("unrecognized density serialization header");
  }
  std::string tag;
  std::size_t dim = 0;
  in >> tag >> dim;
  if (tag != "dim" || dim == 0) {
    throw InvalidInputError("malformed density serialization");
  }
  std::string side_text;
  in >> tag >> side_text;
  if (tag != "side") {
    throw InvalidInputError("malformed density serialization");
  }
  const double side = parse_double(side_text);
  std::vector<double> anchor(dim);
  in >> tag;
  if (tag != "anchor") {
    throw InvalidInputError("malformed density serialization");
  }
  for (double& a : anchor) {
    std::string word;
    in >> word;
    a = parse_double(word);
  }
  int normalized_flag = 0;
  int fallback_flag = 0;
  in >> tag >> normalized_flag;
  if (tag != "normalized") {
    throw InvalidInputError("malformed density serialization");
  }
  in >> tag >> fallback_flag;
  if (tag != "fallback") {
    throw InvalidInputError("malformed density serialization");
  }
  std::size_t cells = 0;
  in >> tag >> cells;
  if (tag != "cells") {
    throw InvalidInputError("malformed density serialization");
  }
  PiecewiseConstantDensity density{GridPartition(dim, side, std::move(anchor)),
                                   {},
                                   normalized_flag != 0,
                                   fallback_flag != 0};
  for (std::size_t i = 0; i < cells; ++i) {
    GridCell cell(dim);
    for (std::int64_t& k : cell) {
      in >> k;
    }
    std::string word;
    in >> word;
    density.values.emplace(std::move(cell), parse_double(word));
  }
  if (!in) {
    throw InvalidInputError("truncated density serialization");
  }
  return density;
}

PiecewiseConstantDensity PiecewiseConstantDensity::from_text(
    const std::string& text) {
  std::istringstream in(text);
  return from_text(in);
}

}  // namespace pucl
