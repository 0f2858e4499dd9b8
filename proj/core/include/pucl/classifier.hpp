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

#ifndef PUCL_CLASSIFIER_HPP_
#define PUCL_CLASSIFIER_HPP_

#include <cstddef>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "pucl/grid.hpp"
#include "pucl/laplace.hpp"
#include "pucl/metric.hpp"
#include "pucl/points.hpp"
#include "pucl/rng.hpp"

namespace pucl {

// Per-cell vote state: the sum of (label - 1/2) over the cell's sample
// points, the number of such points, and the Laplace noise frozen at fit
// time. Releasing the full vector of noisy sums is what makes the classifier
// private; everything else is post-processing.
struct VoteCell {
  double signed_sum = 0.0;
  std::int64_t count = 0;
  double noise = 0.0;
};

// Noisy majority vote: 1 iff signed_sum + noise > 0. An exact tie loses.
inline int decide_cell(double signed_sum, double noise) {
  return signed_sum + noise > 0.0 ? 1 : 0;
}

// Plug-in rule for a regression estimate: 1 iff eta_hat(x) > 1/2, so an exact
// tie predicts 0.
int plugin_classify(
    const std::function<double(std::span<const double>)>& eta_hat,
    std::span<const double> x);

// A fitted partition classifier. All noise is drawn at fit time and frozen;
// predictions are a deterministic function of the fitted state, so repeated
// queries are free under post-processing.
class PartitionClassifier {
 public:
  enum class Kind {
    kGridVote,          // cube grid, noisy majority per cell
    kVoronoiVote,       // packing-induced Voronoi cells, noisy majority
    kVoronoiHistogram,  // Voronoi cells, two stability-histogram releases
  };

  int predict(std::span<const double> x) const;

  // Self-contained callable; copies the fitted state so it may outlive the
  // classifier object.
  PredictFn predictor() const;

  // Noisy per-cell estimate of P(y = 1 | cell of x), clamped to [0, 1].
  // Consistent with predict: predict(x) == 1 iff noisy_eta(x) > 1/2.
  double noisy_eta(std::span<const double> x) const;

  Kind kind() const { return kind_; }
  std::size_t cell_count() const;

  // Index of the decision cell containing x.
  std::size_t cell_index(std::span<const double> x) const;

  // Vote table for kGridVote / kVoronoiVote, indexed by decision cell.
  const std::vector<VoteCell>& votes() const { return votes_; }

  // Released histogram values for kVoronoiHistogram, indexed by center.
  const std::vector<double>& released_counts() const { return count_hat_; }
  const std::vector<double>& released_ones() const { return ones_hat_; }

  const std::optional<GridPartition>& grid() const { return grid_; }
  const std::optional<MetricPartition>& partition() const { return centers_; }
  const std::string& space_name() const { return space_name_; }

  // Text serialization of the fitted decision table (format documented in the
  // repository README). Round-trips through from_text for grid classifiers
  // and for Voronoi classifiers over bundled metric spaces.
  void to_text(std::ostream& out) const;
  std::string to_text() const;
  static PartitionClassifier from_text(std::istream& in);
  static PartitionClassifier from_text(const std::string& text);

  friend PartitionClassifier pcl_fit_scaled_noise(const LabeledSample& sample,
                                                  double epsilon,
                                                  double noise_scale_factor,
                                                  SeededRng& rng);
  friend PartitionClassifier pcl2_fit(const LabeledSample& sample,
                                      const MetricSpaceDescriptor& space,
                                      double epsilon, SeededRng& rng,
                                      std::size_t center_cap);
  friend PartitionClassifier pcl2b_fit(const LabeledSample& sample,
                                       const MetricSpaceDescriptor& space,
                                       const PrivacyBudget& budget,
                                       SeededRng& rng, std::size_t center_cap);

 private:
  PartitionClassifier() = default;

  void rebuild_decisions();

  Kind kind_ = Kind::kGridVote;
  // Grid backend.
  std::optional<GridPartition> grid_;
  std::int64_t cells_per_axis_ = 0;
  // Voronoi backend.
  std::optional<MetricPartition> centers_;
  DistanceFn distance_;
  std::string space_name_;
  // Decision tables, indexed by flattened grid cell or by center.
  std::vector<VoteCell> votes_;
  std::vector<double> count_hat_;
  std::vector<double> ones_hat_;
  std::vector<std::uint8_t> decisions_;
};

// Grid-based private classifier on [0, 1]^d. The grid has side
// r = grid_side_length(n, d) and materializes every cell meeting the unit
// cube; each cell's signed vote gets one Laplace(1 / epsilon) draw, empty
// cells included, in row-major cell order. Replacing one labeled point moves
// the signed-vote vector by at most 1 in L1, so the released table (and hence
// the classifier) is epsilon-DP. Points must lie in [0, 1]^d; boundary points
// with a coordinate exactly 1 are assigned to the last cell on that axis.
PartitionClassifier pcl_fit(const LabeledSample& sample, double epsilon,
                            SeededRng& rng);

// Audit instrumentation: identical to pcl_fit except that every noise draw is
// scaled by noise_scale_factor. Factor 1 is the real mechanism; factors < 1
// deliberately underprotect, which privacy audits use as a negative control.
PartitionClassifier pcl_fit_scaled_noise(const LabeledSample& sample,
                                         double epsilon,
                                         double noise_scale_factor,
                                         SeededRng& rng);

// Voronoi-based private classifier on a bounded metric space: builds an
// r-maximal packing with r = packing_side_length(n, space.dim), assigns
// sample points to nearest-center cells, and runs the same noisy vote with
// one Laplace(1 / epsilon) draw per center (empty cells included, in center
// order). epsilon-DP for the same reason as pcl_fit. Throws CapacityError if
// the packing exceeds center_cap.
PartitionClassifier pcl2_fit(const LabeledSample& sample,
                             const MetricSpaceDescriptor& space,
                             double epsilon, SeededRng& rng,
                             std::size_t center_cap = kDefaultCenterCap);

// Voronoi-based private classifier for spaces where the packing may be huge:
// releases two stability-based histograms over occupied cells only (all
// points; then label-1 points) and predicts 1 on cell j iff
// min(ones_hat_j, count_hat_j) > count_hat_j / 2. Cells with count_hat_j == 0
// predict 0. Two (epsilon, delta) releases make the classifier
// (2 epsilon, 2 delta)-DP. Requires budget.delta > 0.
PartitionClassifier pcl2b_fit(const LabeledSample& sample,
                              const MetricSpaceDescriptor& space,
                              const PrivacyBudget& budget, SeededRng& rng,
                              std::size_t center_cap = kDefaultCenterCap);

}  // namespace pucl

#endif  // PUCL_CLASSIFIER_HPP_
