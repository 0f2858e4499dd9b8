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

#ifndef PUCL_AUDIT_HPP_
#define PUCL_AUDIT_HPP_

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "pucl/classifier.hpp"
#include "pucl/density.hpp"
#include "pucl/grid.hpp"
#include "pucl/laplace.hpp"
#include "pucl/metric.hpp"
#include "pucl/points.hpp"
#include "pucl/rng.hpp"

namespace pucl {

// A randomized mechanism under audit, coarsened to finitely many outcomes:
// one full run maps (dataset, fresh randomness) to an event id.
using MechanismFn =
    std::function<std::uint32_t(const LabeledSample&, SeededRng&)>;

// One audited outcome in one direction. violation = p_hat - e^eps * q_hat -
// delta must stay within `slack` (three standard errors of the estimated
// difference) for the DP inequality to be consistent with the frequencies.
struct AuditEvent {
  int direction = 0;  // 0: P = first dataset; 1: P = second dataset
  std::uint32_t event = 0;
  double p_hat = 0.0;
  double q_hat = 0.0;
  double violation = 0.0;
  double slack = 0.0;
};

struct AuditReport {
  std::string mechanism;
  std::string pair_description;
  double epsilon = 0.0;
  double delta = 0.0;
  std::size_t runs = 0;
  std::vector<AuditEvent> events;
  double max_violation = 0.0;  // most positive violation across events
  double slack_at_max = 0.0;
  bool pass = false;

  std::string to_text() const;
};

// Frequency-based check of the (epsilon, delta)-DP inequality on one
// neighboring pair: runs the mechanism `runs` times on each dataset,
// estimates every event's probability, and fails if any event in either
// direction violates p <= e^eps * q + delta beyond three standard errors.
// A PASS is evidence of privacy on this pair and coarsening, not a proof;
// a FAIL is strong evidence of a bug. The two datasets must differ in at
// most one (point, label) pair.
AuditReport audit_privacy(const std::string& mechanism_name,
                          const MechanismFn& mechanism,
                          const LabeledSample& first,
                          const LabeledSample& second, double epsilon,
                          double delta, std::size_t runs, SeededRng& rng);

// Coarsening for classifiers: bit i of the event is the prediction on
// probes[i]. Requires probes.size() <= 32.
std::uint32_t prediction_event(const PartitionClassifier& classifier,
                               const PointBuffer& probes);

// Mechanism adapters for the bundled audits. Each run refits the learner on
// the dataset with fresh noise and reports the probe predictions.
MechanismFn pcl_prediction_mechanism(double epsilon, PointBuffer probes,
                                     double noise_scale_factor = 1.0);
MechanismFn pcl2b_prediction_mechanism(MetricSpaceDescriptor space,
                                       PrivacyBudget budget,
                                       PointBuffer probes);

// Stability-histogram release coarsened to the zero / nonzero pattern of the
// tracked cells; labels are ignored. Requires tracked.size() <= 32.
MechanismFn stable_histogram_mechanism(PrivacyBudget budget,
                                       GridPartition grid,
                                       std::vector<GridCell> tracked);

}  // namespace pucl

#endif  // PUCL_AUDIT_HPP_
