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
#include "pucl/synthetic.hpp"

namespace pucl {
namespace {

TEST(Checkerboard, EtaAlternatesByCellParity) {
  const SyntheticDistribution board = make_checkerboard(1, 4, 0.1);
  EXPECT_DOUBLE_EQ(board.eta(std::vector<double>{0.1}), 0.9);
  EXPECT_DOUBLE_EQ(board.eta(std::vector<double>{0.3}), 0.1);
  EXPECT_DOUBLE_EQ(board.eta(std::vector<double>{0.6}), 0.9);
  EXPECT_DOUBLE_EQ(board.eta(std::vector<double>{0.99}), 0.1);
  // The right edge belongs to the last cell rather than a phantom fifth one.
  EXPECT_DOUBLE_EQ(board.eta(std::vector<double>{1.0}), 0.1);
  EXPECT_DOUBLE_EQ(board.bayes_error(), 0.1);

  const SyntheticDistribution plane = make_checkerboard(2, 2, 0.2);
  EXPECT_DOUBLE_EQ(plane.eta(std::vector<double>{0.25, 0.25}), 0.8);
  EXPECT_DOUBLE_EQ(plane.eta(std::vector<double>{0.75, 0.25}), 0.2);
  EXPECT_DOUBLE_EQ(plane.eta(std::vector<double>{0.75, 0.75}), 0.8);
}

TEST(Checkerboard, BoxMassIsExact) {
  const SyntheticDistribution board = make_checkerboard(1, 4, 0.1);
  Box half;
  half.lo = {0.25};
  half.hi = {0.75};
  EXPECT_NEAR(board.box_mass(half), 0.5, 1e-12);
  Box outside;
  outside.lo = {1.5};
  outside.hi = {2.0};
  EXPECT_DOUBLE_EQ(board.box_mass(outside), 0.0);
}

TEST(Checkerboard, RejectsDegenerateNoise) {
  EXPECT_THROW(make_checkerboard(1, 4, 0.5), InvalidParameterError);
  EXPECT_THROW(make_checkerboard(1, 4, -0.1), InvalidParameterError);
  EXPECT_THROW(make_checkerboard(0, 4, 0.1), InvalidParameterError);
  EXPECT_THROW(make_checkerboard(1, 0, 0.1), InvalidParameterError);
}

TEST(Checkerboard, SampledLabelsMatchEta) {
  const SyntheticDistribution board = make_checkerboard(1, 4, 0.1);
  SeededRng rng(31, 0);
  const LabeledSample sample = board.sample_labeled(100000, rng);
  std::size_t even_ones = 0;
  std::size_t even_total = 0;
  double coordinate_sum = 0.0;
  for (std::size_t i = 0; i < sample.size(); ++i) {
    coordinate_sum += sample.points[i][0];
    if (board.eta(sample.points[i]) > 0.5) {
      even_total += 1;
      even_ones += sample.labels[i];
    }
  }
  EXPECT_NEAR(coordinate_sum / sample.size(), 0.5, 0.005);
  EXPECT_NEAR(static_cast<double>(even_ones) / even_total, 0.9, 0.01);
}

TEST(SyntheticDraws, AreDeterministicAndStreamAligned) {
  const SyntheticDistribution board = make_checkerboard(2, 3, 0.1);
  SeededRng a(5, 9);
  SeededRng b(5, 9);
  const PointBuffer pa = board.sample_points(50, a);
  const PointBuffer pb = board.sample_points(50, b);
  for (std::size_t i = 0; i < 50; ++i) {
    EXPECT_DOUBLE_EQ(pa[i][0], pb[i][0]);
    EXPECT_DOUBLE_EQ(pa[i][1], pb[i][1]);
  }
  // Each point consumes exactly 1 + dim uniforms, so both rngs are at the
  // same stream position afterward.
  EXPECT_EQ(a.next_u64(), b.next_u64());
}

TEST(BoxMixture, MassesAndDensitiesAreExact) {
  const SyntheticDistribution mix = bundled_distribution("two_boxes_1d");
  Box first;
  first.lo = {0.0};
  first.hi = {0.25};
  Box second;
  second.lo = {0.5};
  second.hi = {1.0};
  EXPECT_NEAR(mix.box_mass(first), 0.6, 1e-12);
  EXPECT_NEAR(mix.box_mass(second), 0.4, 1e-12);
  Box gap;
  gap.lo = {0.25};
  gap.hi = {0.5};
  EXPECT_DOUBLE_EQ(mix.box_mass(gap), 0.0);

  SeededRng rng(11, 0);
  const PointBuffer points = mix.sample_points(50000, rng);
  std::size_t in_first = 0;
  for (std::size_t i = 0; i < points.size(); ++i) {
    EXPECT_TRUE(points[i][0] < 0.25 || points[i][0] >= 0.5);
    in_first += points[i][0] < 0.25 ? 1 : 0;
  }
  EXPECT_NEAR(static_cast<double>(in_first) / points.size(), 0.6, 0.01);
}

TEST(BoxMixture, RejectsOverlapsAndBadMasses) {
  Box a;
  a.lo = {0.0};
  a.hi = {0.6};
  Box b;
  b.lo = {0.5};
  b.hi = {1.0};
  EXPECT_THROW(make_box_mixture({{a, 0.5}, {b, 0.5}}), InvalidParameterError);
  Box c;
  c.lo = {0.7};
  c.hi = {1.0};
  EXPECT_THROW(make_box_mixture({{a, 0.5}, {c, 0.4}}), InvalidParameterError);
  EXPECT_THROW(make_box_mixture({{a, 1.2}, {c, -0.2}}),
               InvalidParameterError);
}

TEST(ThresholdDistribution, IsRealizable) {
  const SyntheticDistribution dist = make_threshold_realizable(0.3);
  EXPECT_DOUBLE_EQ(dist.bayes_error(), 0.0);
  EXPECT_DOUBLE_EQ(dist.eta(std::vector<double>{0.29}), 0.0);
  EXPECT_DOUBLE_EQ(dist.eta(std::vector<double>{0.3}), 1.0);
  SeededRng rng(3, 0);
  const LabeledSample sample = dist.sample_labeled(1000, rng);
  for (std::size_t i = 0; i < sample.size(); ++i) {
    EXPECT_EQ(sample.labels[i], sample.points[i][0] >= 0.3 ? 1 : 0);
  }
}

TEST(CircleCheckerboard, WrapsEta) {
  const SyntheticDistribution dist = make_circle_checkerboard(4, 0.2);
  EXPECT_DOUBLE_EQ(dist.eta(std::vector<double>{0.1}), 0.8);
  EXPECT_DOUBLE_EQ(dist.eta(std::vector<double>{0.3}), 0.2);
  EXPECT_DOUBLE_EQ(dist.eta(std::vector<double>{0.9}), 0.2);
  EXPECT_DOUBLE_EQ(dist.bayes_error(), 0.2);
}

TEST(BundledDistributions, NamesParse) {
  EXPECT_EQ(bundled_distribution("checkerboard_2d_4_p0.3").dim(), 2u);
  EXPECT_DOUBLE_EQ(bundled_distribution("checkerboard_2d_4_p0.3").bayes_error(),
                   0.3);
  EXPECT_EQ(bundled_distribution("uniform_2d").dim(), 2u);
  EXPECT_DOUBLE_EQ(bundled_distribution("threshold_0.4").eta(
                       std::vector<double>{0.5}),
                   1.0);
  EXPECT_EQ(bundled_distribution("circle_checkerboard_6_p0.1").dim(), 1u);
  EXPECT_EQ(bundled_distribution("four_boxes_2d").dim(), 2u);
  EXPECT_THROW(bundled_distribution("gaussian_1d"), InvalidParameterError);
  EXPECT_THROW(bundled_distribution("checkerboard_1d_4_p0.7"),
               InvalidParameterError);
}

TEST(BayesClassifier, AchievesBayesError) {
  const SyntheticDistribution board = make_checkerboard(1, 4, 0.1);
  const PredictFn bayes = bayes_classifier(board);
  EXPECT_EQ(bayes(std::vector<double>{0.1}), 1);
  EXPECT_EQ(bayes(std::vector<double>{0.3}), 0);
  SeededRng rng(17, 0);
  EXPECT_NEAR(empirical_error(bayes, board, 100000, rng), 0.1, 0.005);

  const SyntheticDistribution realizable = make_threshold_realizable(0.5);
  SeededRng rng2(18, 0);
  EXPECT_DOUBLE_EQ(
      empirical_error(bayes_classifier(realizable), realizable, 2000, rng2),
      0.0);
}

TEST(EmpiricalError, MatchesClosedFormForConstantRule) {
  // Predicting 1 everywhere on a p = 0 checkerboard errs exactly on the odd
  // cells, which carry half the mass.
  const SyntheticDistribution board = make_checkerboard(1, 4, 0.0);
  const PredictFn ones = [](std::span<const double>) { return 1; };
  SeededRng rng(23, 0);
  EXPECT_NEAR(empirical_error(ones, board, 100000, rng), 0.5, 0.006);
}

}  // namespace
}  // namespace pucl
