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

#include "pucl/synthetic.hpp"

#include <algorithm>
#include <cmath>
#include <memory>

#include "pucl/errors.hpp"
#include "pucl/serialize.hpp"

namespace pucl {

namespace {

// Checkerboard cell index along one axis, clamping the closed upper boundary
// into the last cell.
std::int64_t board_index(double coord, std::size_t cells) {
  std::int64_t k = static_cast<std::int64_t>(
      std::floor(coord * static_cast<double>(cells)));
  return std::clamp<std::int64_t>(k, 0, static_cast<std::int64_t>(cells) - 1);
}

Box unit_cube_box(std::size_t d) {
  Box box;
  box.lo.assign(d, 0.0);
  box.hi.assign(d, 1.0);
  return box;
}

}  // namespace

SyntheticDistribution::SyntheticDistribution(std::string name,
                                             PiecewiseConstantRef marginal,
                                             EtaFn eta, double bayes_error)
    : name_(std::move(name)),
      marginal_(std::move(marginal)),
      eta_(std::move(eta)),
      bayes_error_(bayes_error) {
  if (marginal_.pieces.empty()) {
    throw InvalidParameterError("marginal must have at least one piece");
  }
  dim_ = marginal_.pieces.front().first.dim();
  double mass = 0.0;
  cumulative_.reserve(marginal_.pieces.size());
  for (std::size_t i = 0; i < marginal_.pieces.size(); ++i) {
    const auto& [box, value] = marginal_.pieces[i];
    box.validate();
    if (box.dim() != dim_) {
      throw InvalidParameterError("marginal pieces must share one dimension");
    }
    if (!(value > 0.0) || !(box.volume() > 0.0)) {
      throw InvalidParameterError(
          "marginal pieces must carry positive density on positive volume");
    }
    for (std::size_t j = i + 1; j < marginal_.pieces.size(); ++j) {
      if (box_intersection_volume(box, marginal_.pieces[j].first) > 0.0) {
        throw InvalidParameterError("marginal pieces must be disjoint");
      }
    }
    mass += value * box.volume();
    cumulative_.push_back(mass);
  }
  if (std::abs(mass - 1.0) > 1e-9) {
    throw InvalidParameterError("marginal must integrate to one");
  }
  if (!(bayes_error_ >= 0.0) || !(bayes_error_ <= 0.5)) {
    throw InvalidParameterError("bayes error must lie in [0, 0.5]");
  }
}

void SyntheticDistribution::sample_point(SeededRng& rng,
                                         std::span<double> out) const {
  if (out.size() != dim_) {
    throw InvalidInputError("output span has the wrong dimension");
  }
  const double u = rng.next_uniform() * cumulative_.back();
  const std::size_t piece_index = static_cast<std::size_t>(
      std::lower_bound(cumulative_.begin(), cumulative_.end(), u) -
      cumulative_.begin());
  const Box& box =
      marginal_.pieces[std::min(piece_index, marginal_.pieces.size() - 1)]
          .first;
  for (std::size_t i = 0; i < dim_; ++i) {
    out[i] = box.lo[i] + rng.next_uniform() * (box.hi[i] - box.lo[i]);
  }
}

PointBuffer SyntheticDistribution::sample_points(std::size_t n,
                                                 SeededRng& rng) const {
  PointBuffer points(dim_);
  points.reserve(n);
  std::vector<double> x(dim_);
  for (std::size_t i = 0; i < n; ++i) {
    sample_point(rng, x);
    points.push(x);
  }
  return points;
}

LabeledSample SyntheticDistribution::sample_labeled(std::size_t n,
                                                    SeededRng& rng) const {
  LabeledSample sample{PointBuffer(dim_), {}};
  sample.points.reserve(n);
  sample.labels.reserve(n);
  std::vector<double> x(dim_);
  for (std::size_t i = 0; i < n; ++i) {
    sample_point(rng, x);
    const double u = rng.next_uniform();
    sample.points.push(x);
    sample.labels.push_back(u < eta_(x) ? 1 : 0);
  }
  return sample;
}

SyntheticDistribution make_checkerboard(std::size_t d,
                                        std::size_t cells_per_axis, double p) {
  if (d == 0 || cells_per_axis == 0) {
    throw InvalidParameterError(
        "checkerboard needs dimension >= 1 and cells_per_axis >= 1");
  }
  if (!(p >= 0.0) || !(p < 0.5)) {
    throw InvalidParameterError("checkerboard flip rate must be in [0, 0.5)");
  }
  PiecewiseConstantRef marginal;
  marginal.pieces.emplace_back(unit_cube_box(d), 1.0);
  auto eta = [cells_per_axis, p](std::span<const double> x) {
    std::int64_t parity = 0;
    for (double coord : x) {
      parity += board_index(coord, cells_per_axis);
    }
    return parity % 2 == 0 ? 1.0 - p : p;
  };
  const std::string name = "checkerboard_" + std::to_string(d) + "d_" +
                           std::to_string(cells_per_axis) + "_p" +
                           format_double(p);
  return SyntheticDistribution(name, std::move(marginal), std::move(eta), p);
}

SyntheticDistribution make_box_mixture(
    std::vector<std::pair<Box, double>> boxes_with_masses) {
  if (boxes_with_masses.empty()) {
    throw InvalidParameterError("box mixture needs at least one box");
  }
  PiecewiseConstantRef marginal;
  for (auto& [box, mass] : boxes_with_masses) {
    box.validate();
    const double volume = box.volume();
    if (!(mass > 0.0) || !(volume > 0.0)) {
      throw InvalidParameterError(
          "box mixture needs positive masses on positive volumes");
    }
    marginal.pieces.emplace_back(std::move(box), mass / volume);
  }
  auto eta = [](std::span<const double>) { return 0.0; };
  const std::string name =
      "box_mixture_" + std::to_string(marginal.pieces.size());
  // The constructor validates disjointness and total mass one.
  return SyntheticDistribution(name, std::move(marginal), std::move(eta), 0.0);
}

SyntheticDistribution make_threshold_realizable(double cut) {
  if (!(cut >= 0.0) || !(cut <= 1.0)) {
    throw InvalidParameterError("threshold cut must be in [0, 1]");
  }
  PiecewiseConstantRef marginal;
  marginal.pieces.emplace_back(unit_cube_box(1), 1.0);
  auto eta = [cut](std::span<const double> x) {
    return x[0] >= cut ? 1.0 : 0.0;
  };
  return SyntheticDistribution("threshold_" + format_double(cut),
                               std::move(marginal), std::move(eta), 0.0);
}

SyntheticDistribution make_circle_checkerboard(std::size_t arcs, double p) {
  if (arcs == 0) {
    throw InvalidParameterError("circle checkerboard needs arcs >= 1");
  }
  if (!(p >= 0.0) || !(p < 0.5)) {
    throw InvalidParameterError("checkerboard flip rate must be in [0, 0.5)");
  }
  PiecewiseConstantRef marginal;
  marginal.pieces.emplace_back(unit_cube_box(1), 1.0);
  auto eta = [arcs, p](std::span<const double> x) {
    return board_index(x[0], arcs) % 2 == 0 ? 1.0 - p : p;
  };
  const std::string name =
      "circle_checkerboard_" + std::to_string(arcs) + "_p" + format_double(p);
  return SyntheticDistribution(name, std::move(marginal), std::move(eta), p);
}

SyntheticDistribution bundled_distribution(const std::string& name) {
  auto parse_tail = [&name](const std::string& prefix, std::size_t* count,
                            double* p) {
    // <prefix><count>_p<p>
    const std::string tail = name.substr(prefix.size());
    const std::size_t sep = tail.find("_p");
    if (sep == std::string::npos) {
      throw InvalidParameterError("unknown distribution: " + name);
    }
    *count = static_cast<std::size_t>(std::stoul(tail.substr(0, sep)));
    *p = parse_double(tail.substr(sep + 2));
  };

  if (name.rfind("checkerboard_", 0) == 0) {
    // checkerboard_<d>d_<cells>_p<p>
    const std::string tail = name.substr(std::string("checkerboard_").size());
    const std::size_t d_end = tail.find("d_");
    if (d_end == std::string::npos) {
      throw InvalidParameterError("unknown distribution: " + name);
    }
    const std::size_t d =
        static_cast<std::size_t>(std::stoul(tail.substr(0, d_end)));
    std::size_t cells = 0;
    double p = 0.0;
    parse_tail("checkerboard_" + tail.substr(0, d_end) + "d_", &cells, &p);
    return make_checkerboard(d, cells, p);
  }
  if (name.rfind("circle_checkerboard_", 0) == 0) {
    std::size_t arcs = 0;
    double p = 0.0;
    parse_tail("circle_checkerboard_", &arcs, &p);
    return make_circle_checkerboard(arcs, p);
  }
  if (name.rfind("threshold_", 0) == 0) {
    return make_threshold_realizable(
        parse_double(name.substr(std::string("threshold_").size())));
  }
  if (name == "uniform_1d" || name == "uniform_2d" || name == "uniform_3d") {
    const std::size_t d = static_cast<std::size_t>(name[8] - '0');
    std::vector<std::pair<Box, double>> boxes;
    boxes.emplace_back(unit_cube_box(d), 1.0);
    return make_box_mixture(std::move(boxes));
  }
  if (name == "two_boxes_1d") {
    std::vector<std::pair<Box, double>> boxes;
    boxes.emplace_back(Box{{0.0}, {0.25}}, 0.6);
    boxes.emplace_back(Box{{0.5}, {1.0}}, 0.4);
    return make_box_mixture(std::move(boxes));
  }
  if (name == "three_boxes_1d") {
    std::vector<std::pair<Box, double>> boxes;
    boxes.emplace_back(Box{{0.0}, {0.2}}, 0.5);
    boxes.emplace_back(Box{{0.4}, {0.6}}, 0.3);
    boxes.emplace_back(Box{{0.8}, {1.0}}, 0.2);
    return make_box_mixture(std::move(boxes));
  }
  if (name == "four_boxes_2d") {
    std::vector<std::pair<Box, double>> boxes;
    boxes.emplace_back(Box{{0.0, 0.0}, {0.4, 0.4}}, 0.4);
    boxes.emplace_back(Box{{0.6, 0.0}, {1.0, 0.4}}, 0.3);
    boxes.emplace_back(Box{{0.0, 0.6}, {0.4, 1.0}}, 0.2);
    boxes.emplace_back(Box{{0.6, 0.6}, {1.0, 1.0}}, 0.1);
    return make_box_mixture(std::move(boxes));
  }
  throw InvalidParameterError("unknown distribution: " + name);
}

PredictFn bayes_classifier(const SyntheticDistribution& dist) {
  auto state = std::make_shared<SyntheticDistribution>(dist);
  return [state](std::span<const double> x) {
    return state->eta(x) > 0.5 ? 1 : 0;
  };
}

double empirical_error(const PredictFn& h, const SyntheticDistribution& dist,
                       std::size_t m_test, SeededRng& rng) {
  if (m_test == 0) {
    throw InvalidParameterError("test size must be >= 1");
  }
  std::vector<double> x(dist.dim());
  std::size_t mistakes = 0;
  for (std::size_t i = 0; i < m_test; ++i) {
    dist.sample_point(rng, x);
    const double u = rng.next_uniform();
    const int y = u < dist.eta(x) ? 1 : 0;
    if (h(x) != y) {
      ++mistakes;
    }
  }
  return static_cast<double>(mistakes) / static_cast<double>(m_test);
}

}  // namespace pucl
