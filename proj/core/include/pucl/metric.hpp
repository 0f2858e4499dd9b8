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

#ifndef PUCL_METRIC_HPP_
#define PUCL_METRIC_HPP_

#include <cstddef>
#include <functional>
#include <span>
#include <string>

#include "pucl/points.hpp"

namespace pucl {

using DistanceFn =
    std::function<double(std::span<const double>, std::span<const double>)>;

// A metric space made concrete for experiments: a named metric together with
// a fixed, data-independent candidate net that is dense enough to seed
// packings. The net stands in for "all points of the space" during greedy
// packing construction; its covering radius is at most net_spacing.
struct MetricSpaceDescriptor {
  std::string name;
  std::size_t dim;  // dimension used in radius schedules
  DistanceFn distance;
  PointBuffer candidate_net;
  double net_spacing;
};

// Centers of an r-separated packing. Voronoi cells are induced by
// nearest-center assignment with ties broken toward the lowest index.
struct MetricPartition {
  PointBuffer centers;
  double radius;
};

// Packing radius r = n^(-1 / (4d)) used by the Voronoi-based learners.
double packing_side_length(std::size_t n, std::size_t d);

// [0, 1]^dim with the Euclidean metric; the candidate net is the uniform
// lattice {0, 1/m, ..., 1}^dim with 1/m <= net_spacing.
MetricSpaceDescriptor euclidean_unit_cube(std::size_t dim,
                                          double net_spacing = 0.01);

// Circle of unit circumference, parameterized by arc position in [0, 1), with
// wrap-around arc-length distance min(|a - b|, 1 - |a - b|).
MetricSpaceDescriptor unit_circle(double net_spacing = 0.01);

// Resolves a bundled descriptor by name: "euclidean_1d", "euclidean_2d",
// "euclidean_3d", or "circle".
MetricSpaceDescriptor bundled_metric_space(const std::string& name,
                                           double net_spacing = 0.01);

// Distance function of a bundled space, without materializing its candidate
// net. Used when deserializing fitted models.
DistanceFn bundled_distance(const std::string& name);

inline constexpr std::size_t kDefaultCenterCap = std::size_t{1} << 20;

// Greedy scan of the candidate net in storage order, keeping every candidate
// at distance >= r from all previously kept centers. The result is an
// r-packing that is maximal with respect to the net, hence also covers the
// net within r. Construction depends only on (space, r); it never sees
// private data. Requires net_spacing <= r / 10 so the discretization error is
// negligible at the tested radii, and throws CapacityError if more than
// center_cap centers would be kept.
MetricPartition build_maximal_packing(const MetricSpaceDescriptor& space,
                                      double r,
                                      std::size_t center_cap = kDefaultCenterCap);

// Index of the nearest center; the lowest index wins ties.
std::size_t voronoi_cell(std::span<const double> x,
                         const MetricPartition& partition,
                         const DistanceFn& distance);

}  // namespace pucl

#endif  // PUCL_METRIC_HPP_
