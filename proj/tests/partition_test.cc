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

#include <cmath>
#include <cstddef>
#include <vector>

#include "gtest/gtest.h"
#include "pucl/errors.hpp"
#include "pucl/grid.hpp"
#include "pucl/metric.hpp"
#include "pucl/serialize.hpp"

namespace pucl {
namespace {

TEST(GridSchedule, SideLengthValues) {
  EXPECT_DOUBLE_EQ(grid_side_length(16, 1), 0.25);
  EXPECT_DOUBLE_EQ(grid_side_length(10000, 2), 0.1);
  EXPECT_DOUBLE_EQ(grid_side_length(65536, 2), 0.0625);
  EXPECT_NEAR(grid_side_length(100, 1), 0.1, 1e-15);
}

TEST(GridSchedule, PackingRadiusValues) {
  EXPECT_DOUBLE_EQ(packing_side_length(16, 1), 0.5);
  EXPECT_DOUBLE_EQ(packing_side_length(65536, 1), 0.0625);
  EXPECT_DOUBLE_EQ(packing_side_length(65536, 2), 0.25);
}

TEST(GridPartitionTest, CellOfExamples) {
  const GridPartition grid(1, 0.25);
  EXPECT_EQ(cell_of(std::vector<double>{0.3}, grid), (GridCell{1}));
  EXPECT_EQ(cell_of(std::vector<double>{0.0}, grid), (GridCell{0}));
  EXPECT_EQ(cell_of(std::vector<double>{-0.1}, grid), (GridCell{-1}));
  EXPECT_EQ(cell_of(std::vector<double>{1.0}, grid), (GridCell{4}));

  const GridPartition plane(2, 0.5);
  EXPECT_EQ(cell_of(std::vector<double>{0.75, 0.1}, plane), (GridCell{1, 0}));

  const GridPartition shifted(1, 0.25, {0.5});
  EXPECT_EQ(cell_of(std::vector<double>{0.6}, shifted), (GridCell{0}));
  EXPECT_EQ(cell_of(std::vector<double>{0.4}, shifted), (GridCell{-1}));
}

TEST(GridPartitionTest, CellOriginAndVolume) {
  const GridPartition grid(2, 0.25, {0.5, 0.0});
  const std::vector<double> origin = grid.cell_origin(GridCell{2, -1});
  EXPECT_DOUBLE_EQ(origin[0], 1.0);
  EXPECT_DOUBLE_EQ(origin[1], -0.25);
  EXPECT_DOUBLE_EQ(grid.cell_volume(), 0.0625);
}

TEST(GridPartitionTest, RejectsBadParameters) {
  EXPECT_THROW(GridPartition(0, 0.5), InvalidParameterError);
  EXPECT_THROW(GridPartition(1, 0.0), InvalidParameterError);
  EXPECT_THROW(GridPartition(2, 0.5, {0.0}), InvalidParameterError);
  const GridPartition grid(2, 0.5);
  EXPECT_THROW(cell_of(std::vector<double>{0.1}, grid), InvalidInputError);
}

TEST(GridPartitionTest, CellsPerAxisHandlesExactDivisors) {
  EXPECT_EQ(cells_per_axis_for_unit_interval(0.25), 4);
  EXPECT_EQ(cells_per_axis_for_unit_interval(0.3), 4);
  EXPECT_EQ(cells_per_axis_for_unit_interval(1.0 / 3.0), 3);
  // grid_side_length(100, 1) is 0.1 up to rounding; 1/side must not round up
  // to 11 cells.
  EXPECT_EQ(cells_per_axis_for_unit_interval(grid_side_length(100, 1)), 10);
}

TEST(MetricSpaces, EuclideanNetIsLattice) {
  const MetricSpaceDescriptor line = euclidean_unit_cube(1, 0.01);
  ASSERT_EQ(line.candidate_net.size(), 101u);
  EXPECT_DOUBLE_EQ(line.candidate_net[0][0], 0.0);
  EXPECT_DOUBLE_EQ(line.candidate_net[100][0], 1.0);
  EXPECT_NEAR(line.candidate_net[37][0], 0.37, 1e-12);

  const MetricSpaceDescriptor plane = euclidean_unit_cube(2, 0.05);
  EXPECT_EQ(plane.candidate_net.size(), 21u * 21u);
  EXPECT_DOUBLE_EQ(
      plane.distance(plane.candidate_net[0],
                     plane.candidate_net[plane.candidate_net.size() - 1]),
      std::sqrt(2.0));
}

TEST(MetricSpaces, CircleDistanceWrapsAround) {
  const MetricSpaceDescriptor circle = unit_circle(0.01);
  EXPECT_EQ(circle.candidate_net.size(), 100u);
  const std::vector<double> a{0.05};
  const std::vector<double> b{0.95};
  EXPECT_NEAR(circle.distance(a, b), 0.1, 1e-12);
  const std::vector<double> c{0.2};
  const std::vector<double> d{0.7};
  EXPECT_NEAR(circle.distance(c, d), 0.5, 1e-12);
}

TEST(MetricSpaces, BundledNamesResolve) {
  EXPECT_EQ(bundled_metric_space("euclidean_2d").dim, 2u);
  EXPECT_EQ(bundled_metric_space("circle").dim, 1u);
  EXPECT_THROW(bundled_metric_space("hyperbolic"), InvalidParameterError);
  const DistanceFn dist = bundled_distance("euclidean_1d");
  const std::vector<double> x{0.25};
  const std::vector<double> y{0.5};
  EXPECT_DOUBLE_EQ(dist(x, y), 0.25);
}

TEST(MaximalPacking, WorkedLineExample) {
  const MetricSpaceDescriptor line = euclidean_unit_cube(1, 0.01);
  const MetricPartition packing = build_maximal_packing(line, 0.5);
  ASSERT_EQ(packing.centers.size(), 3u);
  EXPECT_DOUBLE_EQ(packing.centers[0][0], 0.0);
  EXPECT_DOUBLE_EQ(packing.centers[1][0], 0.5);
  EXPECT_DOUBLE_EQ(packing.centers[2][0], 1.0);
  EXPECT_DOUBLE_EQ(packing.radius, 0.5);
}

TEST(MaximalPacking, CircleKeepsBoundaryPair) {
  // Centers at exact distance r stay: 0 and 0.75 are 0.25 apart after wrap.
  const MetricSpaceDescriptor circle = unit_circle(0.01);
  const MetricPartition packing = build_maximal_packing(circle, 0.25);
  ASSERT_EQ(packing.centers.size(), 4u);
  for (std::size_t i = 0; i < packing.centers.size(); ++i) {
    for (std::size_t j = i + 1; j < packing.centers.size(); ++j) {
      EXPECT_GE(circle.distance(packing.centers[i], packing.centers[j]),
                0.25 - 1e-12);
    }
  }
}

TEST(MaximalPacking, SeparationAndCoverOnPlane) {
  const MetricSpaceDescriptor plane = euclidean_unit_cube(2, 0.02);
  const double r = 0.25;
  const MetricPartition packing = build_maximal_packing(plane, r);
  for (std::size_t i = 0; i < packing.centers.size(); ++i) {
    for (std::size_t j = i + 1; j < packing.centers.size(); ++j) {
      EXPECT_GE(plane.distance(packing.centers[i], packing.centers[j]), r);
    }
  }
  // Maximality: every net point is within r of some center.
  for (std::size_t p = 0; p < plane.candidate_net.size(); ++p) {
    double best = 1e300;
    for (std::size_t c = 0; c < packing.centers.size(); ++c) {
      best = std::min(best,
                      plane.distance(plane.candidate_net[p],
                                     packing.centers[c]));
    }
    ASSERT_LT(best, r);
  }
}

TEST(MaximalPacking, ConstructionIsDataIndependent) {
  const MetricSpaceDescriptor line = euclidean_unit_cube(1, 0.005);
  const MetricPartition a = build_maximal_packing(line, 0.1);
  const MetricPartition b = build_maximal_packing(line, 0.1);
  ASSERT_EQ(a.centers.size(), b.centers.size());
  for (std::size_t i = 0; i < a.centers.size(); ++i) {
    EXPECT_DOUBLE_EQ(a.centers[i][0], b.centers[i][0]);
  }
}

TEST(MaximalPacking, RejectsCoarseNets) {
  const MetricSpaceDescriptor line = euclidean_unit_cube(1, 0.01);
  // net_spacing 0.01 > r / 10 = 0.005.
  EXPECT_THROW(build_maximal_packing(line, 0.05), InvalidParameterError);
  EXPECT_THROW(build_maximal_packing(line, 0.0), InvalidParameterError);
}

TEST(MaximalPacking, HonorsCenterCap) {
  const MetricSpaceDescriptor line = euclidean_unit_cube(1, 0.005);
  EXPECT_THROW(build_maximal_packing(line, 0.1, 2), CapacityError);
}

TEST(VoronoiAssignment, NearestCenterWithLowTieBreak) {
  const MetricSpaceDescriptor line = euclidean_unit_cube(1, 0.01);
  const MetricPartition packing = build_maximal_packing(line, 0.5);
  const DistanceFn& dist = line.distance;
  EXPECT_EQ(voronoi_cell(std::vector<double>{0.3}, packing, dist), 1u);
  EXPECT_EQ(voronoi_cell(std::vector<double>{0.9}, packing, dist), 2u);
  // 0.25 is equidistant from centers 0 and 1; the lowest index wins.
  EXPECT_EQ(voronoi_cell(std::vector<double>{0.25}, packing, dist), 0u);
}

TEST(DoubleRoundTrip, ShortestFormSurvivesParsing) {
  for (const double value :
       {0.1, 1.0 / 3.0, 6.991464547107982, -0.0625, 1e-17, 12345.678}) {
    EXPECT_EQ(parse_double(format_double(value)), value);
  }
  EXPECT_THROW(parse_double("12x"), InvalidInputError);
  EXPECT_THROW(parse_double(""), InvalidInputError);
}

}  // namespace
}  // namespace pucl
