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

#include "pucl/audit.hpp"

#include <cmath>
#include <map>
#include <memory>
#include <set>
#include <sstream>
#include <utility>

#include "pucl/errors.hpp"
#include "pucl/serialize.hpp"
#include "pucl/stable_histogram.hpp"

namespace pucl {

namespace {

void check_neighbors(const LabeledSample& first, const LabeledSample& second) {
  first.validate();
  second.validate();
  if (first.size() != second.size() ||
      first.points.dim() != second.points.dim()) {
    throw InvalidInputError(
        "neighboring datasets must agree in size and dimension");
  }
  std::size_t differing = 0;
  for (std::size_t i = 0; i < first.size(); ++i) {
    bool same = first.labels[i] == second.labels[i];
    if (same) {
      const auto a = first.points[i];
      const auto b = second.points[i];
      for (std::size_t j = 0; j < a.size(); ++j) {
        if (a[j] != b[j]) {
          same = false;
          break;
        }
      }
    }
    if (!same) {
      ++differing;
    }
  }
  if (differing > 1) {
    throw InvalidInputError(
        "datasets differ in more than one record; not neighbors");
  }
}

std::map<std::uint32_t, std::size_t> event_counts(const MechanismFn& mechanism,
                                                  const LabeledSample& data,
                                                  std::size_t runs,
                                                  SeededRng& rng) {
  std::map<std::uint32_t, std::size_t> counts;
  for (std::size_t r = 0; r < runs; ++r) {
    SeededRng run_rng(rng.next_u64(), r);
    ++counts[mechanism(data, run_rng)];
  }
  return counts;
}

}  // namespace

AuditReport audit_privacy(const std::string& mechanism_name,
                          const MechanismFn& mechanism,
                          const LabeledSample& first,
                          const LabeledSample& second, double epsilon,
                          double delta, std::size_t runs, SeededRng& rng) {
  check_neighbors(first, second);
  if (!(epsilon > 0.0) || !std::isfinite(epsilon)) {
    throw InvalidParameterError("audited epsilon must be positive");
  }
  if (!(delta >= 0.0) || !(delta < 1.0)) {
    throw InvalidParameterError("audited delta must be in [0, 1)");
  }
  if (runs < 100) {
    throw InvalidParameterError("audit needs at least 100 runs per dataset");
  }

  const auto first_counts = event_counts(mechanism, first, runs, rng);
  const auto second_counts = event_counts(mechanism, second, runs, rng);

  std::set<std::uint32_t> support;
  for (const auto& [event, count] : first_counts) {
    support.insert(event);
  }
  for (const auto& [event, count] : second_counts) {
    support.insert(event);
  }

  AuditReport report;
  report.mechanism = mechanism_name;
  report.epsilon = epsilon;
  report.delta = delta;
  report.runs = runs;
  const double blowup = std::exp(epsilon);
  const double n = static_cast<double>(runs);

  bool first_event = true;
  for (int direction = 0; direction < 2; ++direction) {
    const auto& p_counts = direction == 0 ? first_counts : second_counts;
    const auto& q_counts = direction == 0 ? second_counts : first_counts;
    for (std::uint32_t event : support) {
      AuditEvent audited;
      audited.direction = direction;
      audited.event = event;
      auto p_it = p_counts.find(event);
      auto q_it = q_counts.find(event);
      audited.p_hat =
          p_it == p_counts.end() ? 0.0 : static_cast<double>(p_it->second) / n;
      audited.q_hat =
          q_it == q_counts.end() ? 0.0 : static_cast<double>(q_it->second) / n;
      audited.violation =
          audited.p_hat - blowup * audited.q_hat - delta;
      const double variance =
          audited.p_hat * (1.0 - audited.p_hat) / n +
          blowup * blowup * audited.q_hat * (1.0 - audited.q_hat) / n;
      audited.slack = 3.0 * std::sqrt(variance);
      report.events.push_back(audited);
      if (first_event || audited.violation > report.max_violation) {
        report.max_violation = audited.violation;
        report.slack_at_max = audited.slack;
        first_event = false;
      }
    }
  }
  report.pass = true;
  for (const AuditEvent& audited : report.events) {
    if (audited.violation > audited.slack) {
      report.pass = false;
      break;
    }
  }
  return report;
}

std::string AuditReport::to_text() const {
  std::ostringstream out;
  out << "mechanism " << mechanism << "\n";
  if (!pair_description.empty()) {
    out << "pair " << pair_description << "\n";
  }
  out << "epsilon " << format_double(epsilon) << "\n";
  out << "delta " << format_double(delta) << "\n";
  out << "runs_per_dataset " << runs << "\n";
  out << "direction event p_hat q_hat violation slack\n";
  for (const AuditEvent& audited : events) {
    out << audited.direction << " " << audited.event << " "
        << format_double_digits(audited.p_hat, 6) << " "
        << format_double_digits(audited.q_hat, 6) << " "
        << format_double_digits(audited.violation, 6) << " "
        << format_double_digits(audited.slack, 6) << "\n";
  }
  out << "max_violation " << format_double_digits(max_violation, 6)
      << " slack " << format_double_digits(slack_at_max, 6) << "\n";
  out << "result " << (pass ? "PASS" : "FAIL") << "\n";
  return out.str();
}

std::uint32_t prediction_event(const PartitionClassifier& classifier,
                               const PointBuffer& probes) {
  if (probes.size() > 32) {
    throw InvalidParameterError("at most 32 probe points are supported");
  }
  std::uint32_t event = 0;
  for (std::size_t i = 0; i < probes.size(); ++i) {
    if (classifier.predict(probes[i]) == 1) {
      event |= std::uint32_t{1} << i;
    }
  }
  return event;
}

MechanismFn pcl_prediction_mechanism(double epsilon, PointBuffer probes,
                                     double noise_scale_factor) {
  if (probes.empty() || probes.size() > 32) {
    throw InvalidParameterError("need between 1 and 32 probe points");
  }
  return [epsilon, probes = std::move(probes), noise_scale_factor](
             const LabeledSample& sample, SeededRng& rng) {
    const PartitionClassifier fitted =
        pcl_fit_scaled_noise(sample, epsilon, noise_scale_factor, rng);
    return prediction_event(fitted, probes);
  };
}

MechanismFn pcl2b_prediction_mechanism(MetricSpaceDescriptor space,
                                       PrivacyBudget budget,
                                       PointBuffer probes) {
  if (probes.empty() || probes.size() > 32) {
    throw InvalidParameterError("need between 1 and 32 probe points");
  }
  auto shared_space =
      std::make_shared<const MetricSpaceDescriptor>(std::move(space));
  return [shared_space, budget, probes = std::move(probes)](
             const LabeledSample& sample, SeededRng& rng) {
    const PartitionClassifier fitted =
        pcl2b_fit(sample, *shared_space, budget, rng);
    return prediction_event(fitted, probes);
  };
}

MechanismFn stable_histogram_mechanism(PrivacyBudget budget,
                                       GridPartition grid,
                                       std::vector<GridCell> tracked) {
  if (tracked.empty() || tracked.size() > 32) {
    throw InvalidParameterError("need between 1 and 32 tracked cells");
  }
  return [budget, grid = std::move(grid), tracked = std::move(tracked)](
             const LabeledSample& sample, SeededRng& rng) {
    std::vector<GridCell> keys;
    keys.reserve(sample.points.size());
    for (std::size_t i = 0; i < sample.points.size(); ++i) {
      keys.push_back(cell_of(sample.points[i], grid));
    }
    const NoisyHistogram<GridCell> histogram =
        stable_histogram(keys, budget, rng);
    std::uint32_t event = 0;
    for (std::size_t i = 0; i < tracked.size(); ++i) {
      if (histogram.value_or_zero(tracked[i]) != 0.0) {
        event |= std::uint32_t{1} << i;
      }
    }
    return event;
  };
}

}  // namespace pucl
