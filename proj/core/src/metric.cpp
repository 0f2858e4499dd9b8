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

#include "pucl/metric.hpp"

#include <cmath>
#include <cstdint>

#include "pucl/errors.hpp"
#include "pucl/grid.hpp"

namespace pucl {

namespace {

// Largest candidate net a bundled descriptor may materialize.
constexpr std::size_t kMaxNetPoints = 8'000'000;

double euclidean_distance(std::span<const double> a,
                          std::span<const double> b) {
  double sum = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double diff = a[i] - b[i];
    sum += diff * diff;
  }
  return std::sqrt(sum);
}

double circle_distance(std::span<const double> a, std::span<const double> b) {
  const double gap = std::abs(a[0] - b[0]);
  return gap <= 0.5 ? gap : 1.0 - gap;
}

void check_spacing(double net_spacing) {
  if (!(net_spacing > 0.0) || !(net_spacing <= 0.5)) {
    throw InvalidParameterError("net spacing must be in (0, 0.5]");
  }
}

}  // namespace

double packing_side_length(std::size_t n, std::size_t d) {
  if (n == 0) {
    throw InvalidParameterError("sample size must be >= 1");
  }
  if (d == 0) {
    throw InvalidParameterError("dimension must be >= 1");
  }
  return std::pow(static_cast<double>(n),
                  -1.0 / (4.0 * static_cast<double>(d)));
}

MetricSpaceDescriptor euclidean_unit_cube(std::size_t dim,
                                          double net_spacing) {
  if (dim == 0) {
    throw InvalidParameterError("dimension must be >= 1");
  }
  check_spacing(net_spacing);
  const std::int64_t m = cells_per_axis_for_unit_interval(net_spacing);
  const std::size_t per_axis = static_cast<std::size_t>(m) + 1;
  std::size_t total = 1;
  for (std::size_t i = 0; i < dim; ++i) {
    if (total > kMaxNetPoints / per_axis) {
      throw CapacityError("candidate net would exceed the point cap");
    }
    total *= per_axis;
  }
  PointBuffer net(dim);
  net.reserve(total);
  std::vector<double> point(dim, 0.0);
  std::vector<std::size_t> index(dim, 0);
  for (std::size_t flat = 0; flat < total; ++flat) {
    for (std::size_t i = 0; i < dim; ++i) {
      point[i] = static_cast<double>(index[i]) / static_cast<double>(m);
    }
    net.push(point);
    // Row-major increment: the last axis varies fastest.
    for (std::size_t i = dim; i-- > 0;) {
      if (++index[i] <= static_cast<std::size_t>(m)) {
        break;
      }
      index[i] = 0;
    }
  }
  return MetricSpaceDescriptor{
      .name = "euclidean_" + std::to_string(dim) + "d",
      .dim = dim,
      .distance = euclidean_distance,
      .candidate_net = std::move(net),
      .net_spacing = 1.0 / static_cast<double>(m)};
}

MetricSpaceDescriptor unit_circle(double net_spacing) {
  check_spacing(net_spacing);
  const std::int64_t m = cells_per_axis_for_unit_interval(net_spacing);
  if (static_cast<std::size_t>(m) > kMaxNetPoints) {
    throw CapacityError("candidate net would exceed the point cap");
  }
  PointBuffer net(1);
  net.reserve(static_cast<std::size_t>(m));
  for (std::int64_t j = 0; j < m; ++j) {
    const double x = static_cast<double>(j) / static_cast<double>(m);
    net.push(std::span<const double>(&x, 1));
  }
  return MetricSpaceDescriptor{.name = "circle",
                               .dim = 1,
                               .distance = circle_distance,
                               .candidate_net = std::move(net),
                               .net_spacing = 1.0 / static_cast<double>(m)};
}

MetricSpaceDescriptor bundled_metric_space(const std::string& name,
                                           double net_spacing) {
  if (name == "euclidean_1d") return euclidean_unit_cube(1, net_spacing);
  if (name == "euclidean_2d") return euclidean_unit_cube(2, net_spacing);
  if (name == "euclidean_3d") return euclidean_unit_cube(3, net_spacing);
  if (name == "circle") return unit_circle(net_spacing);
  throw InvalidParameterError("unknown metric space: " + name);
}

DistanceFn bundled_distance(const std::string& name) {
  if (name == "euclidean_1d" || name == "euclidean_2d" ||
      name == "euclidean_3d") {
    return euclidean_distance;
  }
  if (name == "circle") {
    return circle_distance;
  }
  throw InvalidParameterError("unknown metric space: " + name);
}

MetricPartition build_maximal_packing(const MetricSpaceDescriptor& space,
                                      double r, std::size_t center_cap) {
  if (!(r > 0.0) || !std::isfinite(r)) {
    throw InvalidParameterError("packing radius must be positive");
  }
  if (space.candidate_net.empty()) {
    throw InvalidInputError("candidate net must be nonempty");
  }
  if (!(space.net_spacing <= r / 10.0)) {
    throw InvalidParameterError(
        "candidate net spacing must be at most r / 10");
  }
  MetricPartition partition{PointBuffer(space.candidate_net.dim()), r};
  const std::size_t n = space.candidate_net.size();
  for (std::size_t i = 0; i < n; ++i) {
    const std::span<const double> candidate = space.candidate_net[i];
    bool separated = true;
    // Recent centers are the likely rejectors under a sweep order, so scan
    // them first.
    for (std::size_t j = partition.centers.size(); j-- > 0;) {
      if (space.distance(candidate, partition.centers[j]) < r) {
        separated = false;
        break;
      }
    }
    if (!separated) {
      continue;
    }
    if (partition.centers.size() >= center_cap) {
      throw CapacityError("packing would exceed the center cap");
    }
    partition.centers.push(candidate);
  }
  return partition;
}

std::size_t voronoi_cell(std::span<const double> x,
                         const MetricPartition& partition,
                         const DistanceFn& distance) {
  if (partition.centers.empty()) {
    throw InvalidInputError("partition has no centers");
  }
  std::size_t best = 0;
  double best_distance = distance(x, partition.centers[0]);
  const std::size_t k = partition.centers.size();
  for (std::size_t j = 1; j < k; ++j) {
    const double d = distance(x, partition.centers[j]);
    if (d < best_distance) {
      best_distance = d;
      best = j;
    }
  }
  return best;
}

}  // namespace pucl
