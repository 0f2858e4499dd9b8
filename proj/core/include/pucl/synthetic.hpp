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

#ifndef PUCL_SYNTHETIC_HPP_
#define PUCL_SYNTHETIC_HPP_

#include <cstddef>
#include <functional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "pucl/density.hpp"
#include "pucl/points.hpp"
#include "pucl/rng.hpp"

namespace pucl {

// Ground-truth distribution with a closed-form marginal, regression function
// eta(x) = P(y = 1 | x), and Bayes error. The oracle side of every
// statistical test: exact box masses, exact eta, exact optimal error.
class SyntheticDistribution {
 public:
  using EtaFn = std::function<double(std::span<const double>)>;

  SyntheticDistribution(std::string name, PiecewiseConstantRef marginal,
                        EtaFn eta, double bayes_error);

  const std::string& name() const { return name_; }
  std::size_t dim() const { return dim_; }
  double eta(std::span<const double> x) const { return eta_(x); }
  double bayes_error() const { return bayes_error_; }
  const PiecewiseConstantRef& marginal() const { return marginal_; }

  // Exact marginal mass of an axis-aligned box.
  double box_mass(const Box& query) const { return marginal_.mass(query); }

  // One draw from the marginal. Consumes exactly 1 + dim uniforms, so stream
  // positions are predictable.
  void sample_point(SeededRng& rng, std::span<double> out) const;
  PointBuffer sample_points(std::size_t n, SeededRng& rng) const;

  // Draws (x, y) with y ~ Bernoulli(eta(x)); 2 + dim uniforms per pair.
  LabeledSample sample_labeled(std::size_t n, SeededRng& rng) const;

 private:
  std::string name_;
  std::size_t dim_;
  PiecewiseConstantRef marginal_;
  std::vector<double> cumulative_;  // piece masses, cumulative
  EtaFn eta_;
  double bayes_error_;
};

// Uniform marginal on [0, 1]^d; eta alternates between 1 - p and p on a
// cells_per_axis^d checkerboard, with value 1 - p on cells whose coordinate
// indices sum to an even number. Bayes error p. Requires p in [0, 0.5).
SyntheticDistribution make_checkerboard(std::size_t d,
                                        std::size_t cells_per_axis, double p);

// Marginal supported on pairwise-disjoint boxes with the given positive
// masses (which must sum to 1); uniform within each box. eta == 0, so the
// Bayes error is 0 and the distribution is primarily a density-estimation
// target.
SyntheticDistribution make_box_mixture(
    std::vector<std::pair<Box, double>> boxes_with_masses);

// Uniform marginal on [0, 1]; eta(x) = 1[x >= cut]: realizable by an oriented
// threshold, Bayes error 0.
SyntheticDistribution make_threshold_realizable(double cut);

// Circle analogue of the 1-d checkerboard: uniform marginal on arc positions
// [0, 1), eta alternating between 1 - p and p across `arcs` equal arcs.
SyntheticDistribution make_circle_checkerboard(std::size_t arcs, double p);

// Resolves bundled distributions by name (see the repository README for the
// accepted names and parameters).
SyntheticDistribution bundled_distribution(const std::string& name);

// Exact optimal classifier: 1 iff eta(x) > 1/2.
PredictFn bayes_classifier(const SyntheticDistribution& dist);

// Monte-Carlo estimate of the misclassification probability of h under the
// distribution, using m_test fresh draws.
double empirical_error(const PredictFn& h, const SyntheticDistribution& dist,
                       std::size_t m_test, SeededRng& rng);

}  // namespace pucl

#endif  // PUCL_SYNTHETIC_HPP_
