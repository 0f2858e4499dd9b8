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

#include "pucl/classifier.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <memory>
#include <ostream>
#include <sstream>
#include <utility>

#include "pucl/errors.hpp"
#include "pucl/serialize.hpp"
#include "pucl/stable_histogram.hpp"

namespace pucl {

namespace {

// Largest decision table a grid classifier may materialize.
constexpr std::size_t kMaxGridCells = std::size_t{1} << 22;

void check_fit_inputs(const LabeledSample& sample, double epsilon) {
  sample.validate();
  if (sample.size() == 0) {
    throw InvalidInputError("training sample must be nonempty");
  }
  if (!(epsilon > 0.0) || !std::isfinite(epsilon)) {
    throw InvalidParameterError("epsilon must be positive");
  }
}

void check_unit_cube(const PointBuffer& points) {
  const std::size_t n = points.size();
  for (std::size_t i = 0; i < n; ++i) {
    for (double c : points[i]) {
      if (!(c >= 0.0) || !(c <= 1.0)) {
        throw InvalidInputError("points must lie in the unit cube");
      }
    }
  }
}

std::size_t grid_table_size(std::int64_t cells_per_axis, std::size_t dim) {
  std::size_t total = 1;
  const std::size_t m = static_cast<std::size_t>(cells_per_axis);
  for (std::size_t i = 0; i < dim; ++i) {
    if (total > kMaxGridCells / m) {
      throw CapacityError("grid decision table would exceed the cell cap");
    }
    total *= m;
  }
  return total;
}

}  // namespace

int plugin_classify(
    const std::function<double(std::span<const double>)>& eta_hat,
    std::span<const double> x) {
  return eta_hat(x) > 0.5 ? 1 : 0;
}

std::size_t PartitionClassifier::cell_count() const {
  return kind_ == Kind::kVoronoiHistogram ? count_hat_.size() : votes_.size();
}

std::size_t PartitionClassifier::cell_index(std::span<const double> x) const {
  if (kind_ == Kind::kGridVote) {
    const GridPartition& grid = *grid_;
    if (x.size() != grid.dim) {
      throw InvalidInputError("point dimension does not match the grid");
    }
    std::size_t flat = 0;
    for (std::size_t i = 0; i < grid.dim; ++i) {
      std::int64_t k = static_cast<std::int64_t>(
          std::floor((x[i] - grid.anchor[i]) / grid.side));
      // Queries on or beyond the domain boundary clamp to the nearest cell;
      // in-domain points are unaffected.
      k = std::clamp<std::int64_t>(k, 0, cells_per_axis_ - 1);
      flat = flat * static_cast<std::size_t>(cells_per_axis_) +
             static_cast<std::size_t>(k);
    }
    return flat;
  }
  return voronoi_cell(x, *centers_, distance_);
}

int PartitionClassifier::predict(std::span<const double> x) const {
  return decisions_[cell_index(x)];
}

PredictFn PartitionClassifier::predictor() const {
  auto state = std::make_shared<PartitionClassifier>(*this);
  return [state](std::span<const double> x) { return state->predict(x); };
}

double PartitionClassifier::noisy_eta(std::span<const double> x) const {
  const std::size_t idx = cell_index(x);
  if (kind_ == Kind::kVoronoiHistogram) {
    const double c = count_hat_[idx];
    if (!(c > 0.0)) {
      return 0.0;
    }
    return std::min(ones_hat_[idx], c) / c;
  }
  const VoteCell& cell = votes_[idx];
  if (cell.count == 0) {
    // No data in the cell: the noisy vote alone decides.
    return cell.noise > 0.0 ? 1.0 : 0.0;
  }
  const double eta = (cell.signed_sum + cell.noise) /
                         static_cast<double>(cell.count) +
                     0.5;
  return std::clamp(eta, 0.0, 1.0);
}

void PartitionClassifier::rebuild_decisions() {
  if (kind_ == Kind::kVoronoiHistogram) {
    decisions_.resize(count_hat_.size());
    for (std::size_t j = 0; j < count_hat_.size(); ++j) {
      const double c = count_hat_[j];
      decisions_[j] = std::min(ones_hat_[j], c) > c / 2.0 ? 1 : 0;
    }
    return;
  }
  decisions_.resize(votes_.size());
  for (std::size_t j = 0; j < votes_.size(); ++j) {
    decisions_[j] = static_cast<std::uint8_t>(
        decide_cell(votes_[j].signed_sum, votes_[j].noise));
  }
}

PartitionClassifier pcl_fit(const LabeledSample& sample, double epsilon,
                            SeededRng& rng) {
  return pcl_fit_scaled_noise(sample, epsilon, 1.0, rng);
}

PartitionClassifier pcl_fit_scaled_noise(const LabeledSample& sample,
                                         double epsilon,
                                         double noise_scale_factor,
                                         SeededRng& rng) {
  check_fit_inputs(sample, epsilon);
  if (!(noise_scale_factor > 0.0) || !std::isfinite(noise_scale_factor)) {
    throw InvalidParameterError("noise scale factor must be positive");
  }
  check_unit_cube(sample.points);

  const std::size_t n = sample.size();
  const std::size_t d = sample.points.dim();
  const double r = grid_side_length(n, d);

  PartitionClassifier fitted;
  fitted.kind_ = PartitionClassifier::Kind::kGridVote;
  fitted.grid_.emplace(d, r);
  fitted.cells_per_axis_ = cells_per_axis_for_unit_interval(r);
  fitted.votes_.assign(grid_table_size(fitted.cells_per_axis_, d), VoteCell{});

  for (std::size_t i = 0; i < n; ++i) {
    VoteCell& cell = fitted.votes_[fitted.cell_index(sample.points[i])];
    cell.signed_sum += static_cast<double>(sample.labels[i]) - 0.5;
    cell.count += 1;
  }
  // One draw per materialized cell, occupied or not, in row-major order.
  for (VoteCell& cell : fitted.votes_) {
    cell.noise = noise_scale_factor * sample_laplace(1.0 / epsilon, rng);
  }
  fitted.rebuild_decisions();
  return fitted;
}

PartitionClassifier pcl2_fit(const LabeledSample& sample,
                             const MetricSpaceDescriptor& space,
                             double epsilon, SeededRng& rng,
                             std::size_t center_cap) {
  check_fit_inputs(sample, epsilon);
  if (sample.points.dim() != space.candidate_net.dim()) {
    throw InvalidInputError("sample dimension does not match the space");
  }
  const std::size_t n = sample.size();
  const double r = packing_side_length(n, space.dim);

  PartitionClassifier fitted;
  fitted.kind_ = PartitionClassifier::Kind::kVoronoiVote;
  fitted.centers_ = build_maximal_packing(space, r, center_cap);
  fitted.distance_ = space.distance;
  fitted.space_name_ = space.name;
  fitted.votes_.assign(fitted.centers_->centers.size(), VoteCell{});

  for (std::size_t i = 0; i < n; ++i) {
    VoteCell& cell = fitted.votes_[fitted.cell_index(sample.points[i])];
    cell.signed_sum += static_cast<double>(sample.labels[i]) - 0.5;
    cell.count += 1;
  }
  // One draw per center, occupied or not, in center order.
  for (VoteCell& cell : fitted.votes_) {
    cell.noise = sample_laplace(1.0 / epsilon, rng);
  }
  fitted.rebuild_decisions();
  return fitted;
}

PartitionClassifier pcl2b_fit(const LabeledSample& sample,
                              const MetricSpaceDescriptor& space,
                              const PrivacyBudget& budget, SeededRng& rng,
                              std::size_t center_cap) {
  check_fit_inputs(sample, budget.epsilon);
  if (sample.points.dim() != space.candidate_net.dim()) {
    throw InvalidInputError("sample dimension does not match the space");
  }
  const std::size_t n = sample.size();
  const double r = packing_side_length(n, space.dim);

  PartitionClassifier fitted;
  fitted.kind_ = PartitionClassifier::Kind::kVoronoiHistogram;
  fitted.centers_ = build_maximal_packing(space, r, center_cap);
  fitted.distance_ = space.distance;
  fitted.space_name_ = space.name;

  std::vector<std::size_t> all_cells;
  std::vector<std::size_t> one_cells;
  all_cells.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t j = fitted.cell_index(sample.points[i]);
    all_cells.push_back(j);
    if (sample.labels[i] == 1) {
      one_cells.push_back(j);
    }
  }
  // Two releases; only occupied cells are touched, so the cost stays
  // proportional to the sample even when the packing is huge.
  const NoisyHistogram<std::size_t> counts =
      stable_histogram(all_cells, budget, rng);
  const NoisyHistogram<std::size_t> ones =
      stable_histogram(one_cells, budget, rng);

  const std::size_t k = fitted.centers_->centers.size();
  fitted.count_hat_.assign(k, 0.0);
  fitted.ones_hat_.assign(k, 0.0);
  for (const auto& [cell, value] : counts.entries) {
    fitted.count_hat_[cell] = value;
  }
  for (const auto& [cell, value] : ones.entries) {
    fitted.ones_hat_[cell] = value;
  }
  fitted.rebuild_decisions();
  return fitted;
}

void PartitionClassifier::to_text(std::ostream& out) const {
  out << "pucl_classifier 1\n";
  switch (kind_) {
    case Kind::kGridVote: {
      out << "kind grid_vote\n";
      out << "dim " << grid_->dim << "\n";
      out << "side " << format_double(grid_->side) << "\n";
      out << "anchor";
      for (double a : grid_->anchor) {
        out << " " << format_double(a);
      }
      out << "\n";
      out << "cells_per_axis " << cells_per_axis_ << "\n";
      break;
    }
    case Kind::kVoronoiVote:
    case Kind::kVoronoiHistogram: {
      out << "kind "
          << (kind_ == Kind::kVoronoiVote ? "voronoi_vote"
                                          : "voronoi_histogram")
          << "\n";
      out << "space " << space_name_ << "\n";
      out << "radius " << format_double(centers_->radius) << "\n";
      out << "centers " << centers_->centers.size() << " "
          << centers_->centers.dim() << "\n";
      for (std::size_t j = 0; j < centers_->centers.size(); ++j) {
        const auto center = centers_->centers[j];
        for (std::size_t i = 0; i < center.size(); ++i) {
          out << (i == 0 ? "" : " ") << format_double(center[i]);
        }
        out << "\n";
      }
      break;
    }
  }
  if (kind_ == Kind::kVoronoiHistogram) {
    out << "released " << count_hat_.size() << "\n";
    for (std::size_t j = 0; j < count_hat_.size(); ++j) {
      out << format_double(count_hat_[j]) << " " << format_double(ones_hat_[j])
          << "\n";
    }
  } else {
    out << "votes " << votes_.size() << "\n";
    for (const VoteCell& cell : votes_) {
      out << format_double(cell.signed_sum) << " " << cell.count << " "
          << format_double(cell.noise) << "\n";
    }
  }
}

std::string PartitionClassifier::to_text() const {
  std::ostringstream out;
  to_text(out);
  return out.str();
}

PartitionClassifier PartitionClassifier::from_text(std::istream& in) {
  std::string magic;
  int version = 0;
  in >> magic >> version;
  if (magic != "pucl_classifier" || version != 1) {
    throw InvalidInputError("unrecognized classifier serialization header");
  }
  std::string tag;
  std::string kind;
  in >> tag >> kind;
  if (tag != "kind") {
    throw InvalidInputError("malformed classifier serialization");
  }
  PartitionClassifier fitted;
  if (kind == "grid_vote") {
    fitted.kind_ = Kind::kGridVote;
    std::size_t dim = 0;
    std::string side_text;
    in >> tag >> dim;
    if (tag != "dim" || dim == 0) {
      throw InvalidInputError("malformed classifier serialization");
    }
    in >> tag >> side_text;
    if (tag != "side") {
      throw InvalidInputError("malformed classifier serialization");
    }
    const double side = parse_double(side_text);
    std::vector<double> anchor(dim);
    in >> tag;
    if (tag != "anchor") {
      throw InvalidInputError("malformed classifier serialization");
    }
    for (double& a : anchor) {
      std::string word;
      in >> word;
      a = parse_double(word);
    }
    fitted.grid_.emplace(dim, side, std::move(anchor));
    in >> tag >> fitted.cells_per_axis_;
    if (tag != "cells_per_axis" || fitted.cells_per_axis_ <= 0) {
      throw InvalidInputError("malformed classifier serialization");
    }
  } else if (kind == "voronoi_vote" || kind == "voronoi_histogram") {
    fitted.kind_ = kind == "voronoi_vote" ? Kind::kVoronoiVote
                                          : Kind::kVoronoiHistogram;
    in >> tag >> fitted.space_name_;
    if (tag != "space") {
      throw InvalidInputError("malformed classifier serialization");
    }
    fitted.distance_ = bundled_distance(fitted.space_name_);
    std::string radius_text;
    in >> tag >> radius_text;
    if (tag != "radius") {
      throw InvalidInputError("malformed classifier serialization");
    }
    const double radius = parse_double(radius_text);
    std::size_t count = 0;
    std::size_t dim = 0;
    in >> tag >> count >> dim;
    if (tag != "centers" || dim == 0) {
      throw InvalidInputError("malformed classifier serialization");
    }
    PointBuffer centers(dim);
    centers.reserve(count);
    std::vector<double> point(dim);
    for (std::size_t j = 0; j < count; ++j) {
      for (double& c : point) {
        std::string word;
        in >> word;
        c = parse_double(word);
      }
      centers.push(point);
    }
    fitted.centers_ = MetricPartition{std::move(centers), radius};
  } else {
    throw InvalidInputError("unknown classifier kind: " + kind);
  }

  std::size_t rows = 0;
  in >> tag >> rows;
  if (fitted.kind_ == Kind::kVoronoiHistogram) {
    if (tag != "released") {
      throw InvalidInputError("malformed classifier serialization");
    }
    fitted.count_hat_.resize(rows);
    fitted.ones_hat_.resize(rows);
    for (std::size_t j = 0; j < rows; ++j) {
      std::string a;
      std::string b;
      in >> a >> b;
      fitted.count_hat_[j] = parse_double(a);
      fitted.ones_hat_[j] = parse_double(b);
    }
  } else {
    if (tag != "votes") {
      throw InvalidInputError("malformed classifier serialization");
    }
    fitted.votes_.resize(rows);
    for (VoteCell& cell : fitted.votes_) {
      std::string a;
      std::string b;
      in >> a >> cell.count >> b;
      cell.signed_sum = parse_double(a);
      cell.noise = parse_double(b);
    }
  }
  if (!in) {
    throw InvalidInputError("truncated classifier serialization");
  }
  fitted.rebuild_decisions();
  return fitted;
}

PartitionClassifier PartitionClassifier::from_text(const std::string& text) {
  std::istringstream in(text);
  return from_text(in);
}

}  // namespace pucl
