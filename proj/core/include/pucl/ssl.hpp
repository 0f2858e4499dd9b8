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

#ifndef PUCL_SSL_HPP_
#define PUCL_SSL_HPP_

#include <cstddef>
#include <span>
#include <vector>

#include "pucl/density.hpp"
#include "pucl/laplace.hpp"
#include "pucl/points.hpp"
#include "pucl/rng.hpp"

namespace pucl {

// Oriented threshold (decision stump) on the real line. direction 1 predicts
// 1 at and to the right of the cut; direction 0 predicts 1 strictly to the
// left of it.
struct ThresholdHypothesis {
  double cut = 0.0;
  int direction = 1;

  int predict(double x) const {
    return direction == 1 ? (x >= cut ? 1 : 0) : (x < cut ? 1 : 0);
  }
};

// Finite hypothesis net induced by an unlabeled set: one cut in each gap
// between consecutive distinct sorted values (at the midpoint), one cut below
// the minimum and one above the maximum, each in both orientations. An empty
// unlabeled set yields the two constant hypotheses (cut at -infinity). Any
// oriented threshold agrees with some net element on the unlabeled points.
std::vector<ThresholdHypothesis> build_threshold_net(
    std::span<const double> unlabeled);

// Number of labeled mistakes of h; changing one labeled pair moves this by at
// most 1, which is the sensitivity the selection step relies on.
std::size_t labeled_errors(const ThresholdHypothesis& h,
                           const LabeledSample& labeled);

// Exponential mechanism over a finite candidate set: picks index i with
// probability proportional to exp(epsilon * score_i / 2). epsilon-DP when
// each score has sensitivity at most 1 in the private data. Consumes exactly
// one uniform draw.
std::size_t exponential_mechanism_select(std::span<const double> scores,
                                         double epsilon, SeededRng& rng);

// epsilon-DP (in the labeled sample) selection of a net hypothesis, scoring
// each candidate by minus its labeled error count. The unlabeled points only
// shape the candidate net; they receive no privacy protection here.
ThresholdHypothesis semi_private_learn(const LabeledSample& labeled,
                                       std::span<const double> unlabeled,
                                       double epsilon, SeededRng& rng);

// Budgets for the private semi-supervised pipeline.
struct SslBudgets {
  std::size_t m_labeled = 0;     // labeled sample size
  std::size_t n_unlabeled = 0;   // synthetic unlabeled points to resample
  double alpha = 0.1;            // excess-error target
  double beta = 0.1;             // failure probability target
};

// VC dimension of oriented thresholds on the line.
inline constexpr std::size_t kThresholdVcDimension = 2;

// Leading constant in the labeled-budget rule below, frozen from a pilot run
// of the bundled benchmark.
inline constexpr double kSslBudgetConstant = 2.2;

// Labeled sample size m = ceil((k / (epsilon * alpha)) * vc * ln(1 /
// (alpha * beta))) sufficient for the exponential-mechanism learner to reach
// excess error alpha with failure probability beta on realizable targets.
std::size_t labeled_budget(double k, double epsilon, double alpha, double beta,
                           std::size_t vc_dimension);

// i.i.d. draws from a normalized piecewise-constant density: cell chosen by
// mass, position uniform within the cell. Consumes 1 + dim uniforms per
// point.
PointBuffer sample_from_density(const PiecewiseConstantDensity& density,
                                std::size_t count, SeededRng& rng);

// Private semi-supervised pipeline on the line: fit a private density to the
// unlabeled points, resample budgets.n_unlabeled synthetic points from its
// normalized (or fallback) version, and run the semi-private learner on the
// labeled sample with the synthetic net. A neighboring change touches either
// one unlabeled point (covered by the density release, then post-processing)
// or one labeled pair (covered by the selection step), so the released
// hypothesis is (budget.epsilon, budget.delta)-DP with respect to the whole
// input. Requires budget.delta > 0.
ThresholdHypothesis private_cssl(const LabeledSample& labeled,
                                 const PointBuffer& unlabeled,
                                 const PrivacyBudget& budget,
                                 const SslBudgets& budgets, SeededRng& rng);

}  // namespace pucl

#endif  // PUCL_SSL_HPP_
