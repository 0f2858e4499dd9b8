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

#ifndef PUCL_EXPERIMENT_HPP_
#define PUCL_EXPERIMENT_HPP_

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "pucl/audit.hpp"
#include "pucl/points.hpp"

namespace pucl {

enum class AlgorithmId { kPcl, kPcl2, kPcl2b, kPcde, kCssl };

std::string algorithm_name(AlgorithmId id);
AlgorithmId algorithm_from_name(const std::string& name);

// delta as a function of the sample size. Private learners in this library
// accept a schedule rather than a constant so sweeps over n can shrink delta.
struct DeltaSchedule {
  enum class Kind {
    kNone,             // pure-DP algorithm; delta is identically zero
    kFixed,            // delta = value
    kInversePower,     // delta = coefficient * n^(-exponent)
  };
  Kind kind = Kind::kNone;
  double value = 0.0;
  double coefficient = 1.0;
  double exponent = 2.0;

  double at(std::size_t n) const;

  // Family-level validation: fixed schedules need value in (0, 1); inverse
  // power schedules need positive coefficient and exponent, and are
  // additionally checked to produce delta in (0, 1) at every n in the grid.
  void validate(const std::vector<std::size_t>& n_grid) const;
};

// Sweep configuration shared by the convergence, density, and ssl runners.
// Parsed from JSON (see the repository README for the schema).
struct ExperimentConfig {
  AlgorithmId algorithm = AlgorithmId::kPcl;
  std::string distribution;  // bundled distribution name
  std::vector<std::size_t> n_grid;
  std::size_t trials = 30;
  double epsilon = 1.0;
  DeltaSchedule delta;
  std::size_t m_test = 10000;
  std::size_t occupancy_k = 3;
  // Voronoi-based algorithms only.
  std::string space = "euclidean_1d";
  double net_spacing = 0.01;
  // ssl only.
  std::vector<std::size_t> m_labeled_grid;
  std::size_t ssl_n_unlabeled = 10000;
  double ssl_alpha = 0.1;
  double ssl_beta = 0.1;

  static ExperimentConfig from_json_text(const std::string& text);
  static ExperimentConfig from_json_file(const std::string& path);

  // Throws ConfigError on any inconsistency.
  void validate() const;
};

// Aggregated sweep point. metric_main / metric_aux are mode-dependent:
// classifiers report (excess error, mean |eta - noisy eta|); the density
// runner reports (exact L1 to the truth, exact L1 restricted to the unit
// cube). occupancy_le_k is the test-point probability of landing in a cell
// holding at most occupancy_k training points.
struct ConvergenceRow {
  std::size_t n = 0;
  double mean_main = 0.0;
  double stderr_main = 0.0;
  double mean_aux = 0.0;
  double stderr_aux = 0.0;
  double mean_occupancy_le_k = 0.0;
};

// One trial's raw outcome, kept so invariants can be checked trial by trial.
struct TrialDetail {
  std::size_t n = 0;
  std::size_t trial = 0;
  double metric_main = 0.0;
  double metric_aux = 0.0;
  double occupancy_le_k = 0.0;
};

struct ConvergenceResult {
  std::vector<ConvergenceRow> rows;
  std::vector<TrialDetail> trials;  // ordered by (n index, trial index)
};

// Error-convergence sweep for pcl / pcl2 / pcl2b. Deterministic in
// (config, master_seed): per-trial random streams are derived from the
// master seed and trial coordinates, so results do not depend on `threads`.
ConvergenceResult run_convergence(const ExperimentConfig& config,
                                  std::uint64_t master_seed, unsigned threads);

// L1-convergence sweep for pcde; same determinism contract.
ConvergenceResult run_density(const ExperimentConfig& config,
                              std::uint64_t master_seed, unsigned threads);

struct SslRow {
  std::size_t m_labeled = 0;
  std::size_t n_unlabeled = 0;
  double success_rate = 0.0;  // fraction of trials with error <= alpha
  double stderr_success = 0.0;
};

// Success-rate benchmark for the private semi-supervised pipeline over the
// m_labeled grid; same determinism contract.
std::vector<SslRow> run_ssl_benchmark(const ExperimentConfig& config,
                                      std::uint64_t master_seed,
                                      unsigned threads);

// CSV writers; one header line, one row per sweep point, '\n' line ends,
// shortest round-trip number formatting. Byte-identical for identical
// inputs.
void write_convergence_csv(std::ostream& out, const ConvergenceResult& result);
void write_density_csv(std::ostream& out, const ConvergenceResult& result);
void write_ssl_csv(std::ostream& out, const std::vector<SslRow>& rows);

// A privacy-audit job: which mechanism, on which neighboring pair, against
// which (epsilon, delta) claim.
struct AuditConfig {
  std::string mechanism = "pcl";  // pcl | pcl2b | stable_histogram
  double epsilon = 1.0;
  double delta = 0.0;             // claim being audited
  std::size_t runs = 200000;
  double noise_scale_factor = 1.0;  // pcl only; != 1 is a negative control
  PointBuffer probe_points{1};
  LabeledSample first{PointBuffer{1}, {}};
  LabeledSample second{PointBuffer{1}, {}};
  // stable_histogram mechanism only.
  double grid_side = 1.0;
  std::vector<GridCell> tracked_cells;
  // pcl2b only.
  std::string space = "euclidean_1d";
  double net_spacing = 0.01;
  PrivacyBudget mechanism_budget{1.0, 0.0};  // per-release budget for pcl2b

  static AuditConfig from_json_text(const std::string& text);
  static AuditConfig from_json_file(const std::string& path);
  void validate() const;
};

AuditReport run_audit(const AuditConfig& config, std::uint64_t master_seed);

}  // namespace pucl

#endif  // PUCL_EXPERIMENT_HPP_
