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

#include "pucl/ssl.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <utility>

#include "pucl/errors.hpp"

namespace pucl {

std::vector<ThresholdHypothesis> build_threshold_net(
    std::span<const double> unlabeled) {
  std::vector<double> cuts;
  if (unlabeled.empty()) {
    cuts.push_back(-std::numeric_limits<double>::infinity());
  } else {
    std::vector<double> sorted(unlabeled.begin(), unlabeled.end());
    std::sort(sorted.begin(), sorted.end());
    sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
    cuts.reserve(sorted.size() + 1);
    cuts.push_back(sorted.front() - 1.0);
    for (std::size_t i = 0; i + 1 < sorted.size(); ++i) {
      cuts.push_back(sorted[i] + (sorted[i + 1] - sorted[i]) / 2.0);
    }
    cuts.push_back(sorted.back() + 1.0);
  }
  std::vector<ThresholdHypothesis> net;
  net.reserve(2 * cuts.size());
  for (double cut : cuts) {
    net.push_back(ThresholdHypothesis{cut, 0});
    net.push_back(ThresholdHypothesis{cut, 1});
  }
  return net;
}

std::size_t labeled_errors(const ThresholdHypothesis& h,
                           const LabeledSample& labeled) {
  labeled.validate();
  if (labeled.points.dim() != 1) {
    throw InvalidInputError("threshold hypotheses require dimension 1");
  }
  std::size_t mistakes = 0;
  for (std::size_t i = 0; i < labeled.size(); ++i) {
    if (h.predict(labeled.points[i][0]) != static_cast<int>(labeled.labels[i])) {
      ++mistakes;
    }
  }
  return mistakes;
}

std::size_t exponential_mechanism_select(std::span<const double> scores,
                                         double epsilon, SeededRng& rng) {
  if (scores.empty()) {
    throw InvalidInputError("candidate set must be nonempty");
  }
  if (!(epsilon > 0.0) || !std::isfinite(epsilon)) {
    throw InvalidParameterError("epsilon must be positive");
  }
  const double top = *std::max_element(scores.begin(), scores.end());
  std::vector<double> weights(scores.size());
  double total = 0.0;
  for (std::size_t i = 0; i < scores.size(); ++i) {
    // Shift by the maximum so weights stay in (0, 1] and never overflow.
    weights[i] = std::exp(epsilon * (scores[i] - top) / 2.0);
    total += weights[i];
  }
  const double u = rng.next_uniform() * total;
  double running = 0.0;
  for (std::size_t i = 0; i < weights.size(); ++i) {
    running += weights[i];
    if (u <= running) {
      return i;
    }
  }
  return weights.size() - 1;
}

ThresholdHypothesis semi_private_learn(const LabeledSample& labeled,
                                       std::span<const double> unlabeled,
                                       double epsilon, SeededRng& rng) {
  labeled.validate();
  if (labeled.size() == 0) {
    throw InvalidInputError("labeled sample must be nonempty");
  }
  if (labeled.points.dim() != 1) {
    throw InvalidInputError("threshold learning requires dimension 1");
  }
  const std::vector<ThresholdHypothesis> net = build_threshold_net(unlabeled);

  // Error counts for every cut via one sorted pass: with the labeled values
  // sorted and ones counted by prefix, an oriented threshold's mistakes are a
  // constant-time function of lower_bound(cut).
  const std::size_t m = labeled.size();
  std::vector<std::pair<double, std::uint8_t>> ordered(m);
  for (std::size_t i = 0; i < m; ++i) {
    ordered[i] = {labeled.points[i][0], labeled.labels[i]};
  }
  std::sort(ordered.begin(), ordered.end());
  std::vector<double> values(m);
  std::vector<std::size_t> prefix_ones(m + 1, 0);
  for (std::size_t i = 0; i < m; ++i) {
    values[i] = ordered[i].first;
    prefix_ones[i + 1] = prefix_ones[i] + ordered[i].second;
  }
  const std::size_t total_ones = prefix_ones[m];

  std::vector<double> scores(net.size());
  for (std::size_t i = 0; i < net.size(); ++i) {
    const std::size_t idx = static_cast<std::size_t>(
        std::lower_bound(values.begin(), values.end(), net[i].cut) -
        values.begin());
    const std::size_t left_ones = prefix_ones[idx];
    const std::size_t left_zeros = idx - left_ones;
    const std::size_t right_ones = total_ones - left_ones;
    const std::size_t right_zeros = (m - idx) - right_ones;
    const std::size_t mistakes = net[i].direction == 1
                                     ? left_ones + right_zeros
                                     : left_zeros + right_ones;
    scores[i] = -static_cast<double>(mistakes);
  }
  return net[exponential_mechanism_select(scores, epsilon, rng)];
}

std::size_t labeled_budget(double k, double epsilon, double alpha, double beta,
                           std::size_t vc_dimension) {
  if (!(k > 0.0) || !(epsilon > 0.0)) {
    throw InvalidParameterError("budget constants must be positive");
  }
  if (!(alpha > 0.0) || !(alpha < 1.0) || !(beta > 0.0) || !(beta < 1.0)) {
    throw InvalidParameterError("alpha and beta must be in (0, 1)");
  }
  if (vc_dimension == 0) {
    throw InvalidParameterError("vc dimension must be >= 1");
  }
  const double m = std::ceil(k / (epsilon * alpha) *
                             static_cast<double>(vc_dimension) *
                             std::log(1.0 / (alpha * beta)));
  return static_cast<std::size_t>(m);
}

PointBuffer sample_from_density(const PiecewiseConstantDensity& density,
                                std::size_t count, SeededRng& rng) {
  if (!density.normalized) {
    throw InvalidInputError("sampling requires a normalized density");
  }
  if (density.values.empty()) {
    throw InvalidInputError("sampling requires at least one nonzero cell");
  }
  const double volume = density.grid.cell_volume();
  std::vector<const GridCell*> cells;
  std::vector<double> cumulative;
  cells.reserve(density.values.size());
  cumulative.reserve(density.values.size());
  double mass = 0.0;
  for (const auto& [cell, value] : density.values) {
    mass += value * volume;
    cells.push_back(&cell);
    cumulative.push_back(mass);
  }
  PointBuffer points(density.grid.dim);
  points.reserve(count);
  std::vector<double> x(density.grid.dim);
  for (std::size_t i = 0; i < count; ++i) {
    const double u = rng.next_uniform() * mass;
    const std::size_t pick = std::min<std::size_t>(
        static_cast<std::size_t>(
            std::lower_bound(cumulative.begin(), cumulative.end(), u) -
            cumulative.begin()),
        cells.size() - 1);
    const std::vector<double> origin = density.grid.cell_origin(*cells[pick]);
    for (std::size_t j = 0; j < x.size(); ++j) {
      x[j] = origin[j] + rng.next_uniform() * density.grid.side;
    }
    points.push(x);
  }
  return points;
}

ThresholdHypothesis private_cssl(const LabeledSample& labeled,
                                 const PointBuffer& unlabeled,
                                 const PrivacyBudget& budget,
                                 const SslBudgets& budgets, SeededRng& rng) {
  labeled.validate();
  if (labeled.size() == 0 || unlabeled.empty()) {
    throw InvalidInputError(
        "pipeline requires nonempty labeled and unlabeled samples");
  }
  if (labeled.points.dim() != 1 || unlabeled.dim() != 1) {
    throw InvalidInputError("threshold learning requires dimension 1");
  }
  if (budgets.n_unlabeled == 0) {
    throw InvalidParameterError("synthetic unlabeled budget must be >= 1");
  }
  const PiecewiseConstantDensity raw = pcde_fit(unlabeled, budget, rng);
  const PiecewiseConstantDensity marginal = normalized_or_uniform_fallback(raw);
  const PointBuffer synthetic =
      sample_from_density(marginal, budgets.n_unlabeled, rng);
  return semi_private_learn(labeled, synthetic.raw(), budget.epsilon, rng);
}

}  // namespace pucl
