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

#include "pucl/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <fstream>
#include <map>
#include <memory>
#include <mutex>
#include <ostream>
#include <sstream>
#include <thread>
#include <utility>

#include <json.hpp>

#include "pucl/classifier.hpp"
#include "pucl/density.hpp"
#include "pucl/errors.hpp"
#include "pucl/serialize.hpp"
#include "pucl/ssl.hpp"
#include "pucl/stats.hpp"
#include "pucl/synthetic.hpp"

namespace pucl {

namespace {

using nlohmann::json;

// Stream-derivation purposes; one tag per independent randomness consumer.
constexpr std::uint64_t kTagSample = 0;
constexpr std::uint64_t kTagMechanism = 1;
constexpr std::uint64_t kTagEvaluation = 2;
constexpr std::uint64_t kTagOccupancy = 3;
constexpr std::uint64_t kTagPool = 4;
constexpr std::uint64_t kTagAudit = 11;

std::uint64_t algorithm_tag(AlgorithmId id) {
  return static_cast<std::uint64_t>(id) + 1;
}

// Runs fn(0..task_count) across threads; any task exception is rethrown
// after all workers drain.
void run_parallel(std::size_t task_count, unsigned threads,
                  const std::function<void(std::size_t)>& fn) {
  if (threads <= 1 || task_count <= 1) {
    for (std::size_t i = 0; i < task_count; ++i) {
      fn(i);
    }
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto worker = [&]() {
    while (true) {
      const std::size_t i = next.fetch_add(1);
      if (i >= task_count) {
        return;
      }
      try {
        fn(i);
      } catch (...) {
        std::lock_guard<std::mutex> lock(failure_mutex);
        if (!failure) {
          failure = std::current_exception();
        }
      }
    }
  };
  std::vector<std::thread> pool;
  const unsigned worker_count =
      static_cast<unsigned>(std::min<std::size_t>(threads, task_count));
  pool.reserve(worker_count);
  for (unsigned t = 0; t < worker_count; ++t) {
    pool.emplace_back(worker);
  }
  for (std::thread& t : pool) {
    t.join();
  }
  if (failure) {
    std::rethrow_exception(failure);
  }
}

ConvergenceRow aggregate_row(std::size_t n,
                             std::span<const TrialDetail> details) {
  std::vector<double> main_values;
  std::vector<double> aux_values;
  std::vector<double> occupancy;
  main_values.reserve(details.size());
  aux_values.reserve(details.size());
  occupancy.reserve(details.size());
  for (const TrialDetail& d : details) {
    main_values.push_back(d.metric_main);
    aux_values.push_back(d.metric_aux);
    occupancy.push_back(d.occupancy_le_k);
  }
  const MeanStderr main_stats = mean_stderr(main_values);
  const MeanStderr aux_stats = mean_stderr(aux_values);
  const MeanStderr occ_stats = mean_stderr(occupancy);
  return ConvergenceRow{n,
                        main_stats.mean,
                        main_stats.stderr_of_mean,
                        aux_stats.mean,
                        aux_stats.stderr_of_mean,
                        occ_stats.mean};
}

double json_number(const json& j, const char* key) {
  if (!j.contains(key) || !j.at(key).is_number()) {
    throw ConfigError(std::string("missing or non-numeric field: ") + key);
  }
  return j.at(key).get<double>();
}

std::size_t json_size(const json& j, const char* key) {
  if (!j.contains(key) || !j.at(key).is_number_unsigned()) {
    throw ConfigError(std::string("missing or non-unsigned field: ") + key);
  }
  return j.at(key).get<std::size_t>();
}

std::string json_string(const json& j, const char* key) {
  if (!j.contains(key) || !j.at(key).is_string()) {
    throw ConfigError(std::string("missing or non-string field: ") + key);
  }
  return j.at(key).get<std::string>();
}

std::vector<std::size_t> json_size_array(const json& j, const char* key) {
  if (!j.contains(key) || !j.at(key).is_array()) {
    throw ConfigError(std::string("missing or non-array field: ") + key);
  }
  std::vector<std::size_t> values;
  for (const json& v : j.at(key)) {
    if (!v.is_number_unsigned()) {
      throw ConfigError(std::string("array entries must be unsigned: ") + key);
    }
    values.push_back(v.get<std::size_t>());
  }
  return values;
}

DeltaSchedule parse_delta(const json& j) {
  DeltaSchedule schedule;
  if (!j.contains("delta")) {
    schedule.kind = DeltaSchedule::Kind::kNone;
    return schedule;
  }
  const json& d = j.at("delta");
  if (d.is_number()) {
    schedule.kind = DeltaSchedule::Kind::kFixed;
    schedule.value = d.get<double>();
    return schedule;
  }
  if (!d.is_object()) {
    throw ConfigError("delta must be a number or an object");
  }
  const std::string kind = json_string(d, "kind");
  if (kind == "none") {
    schedule.kind = DeltaSchedule::Kind::kNone;
  } else if (kind == "fixed") {
    schedule.kind = DeltaSchedule::Kind::kFixed;
    schedule.value = json_number(d, "value");
  } else if (kind == "inverse_n_squared") {
    schedule.kind = DeltaSchedule::Kind::kInversePower;
    schedule.coefficient = 1.0;
    schedule.exponent = 2.0;
  } else if (kind == "inverse_power") {
    schedule.kind = DeltaSchedule::Kind::kInversePower;
    schedule.coefficient = json_number(d, "coefficient");
    schedule.exponent = json_number(d, "exponent");
  } else {
    throw ConfigError("unknown delta schedule kind: " + kind);
  }
  return schedule;
}

PointBuffer parse_points(const json& j, const char* key) {
  if (!j.contains(key) || !j.at(key).is_array() || j.at(key).empty()) {
    throw ConfigError(std::string("missing or empty point array: ") + key);
  }
  const json& arr = j.at(key);
  if (!arr.front().is_array() || arr.front().empty()) {
    throw ConfigError(std::string("points must be coordinate arrays: ") + key);
  }
  PointBuffer points(arr.front().size());
  std::vector<double> x;
  for (const json& p : arr) {
    if (!p.is_array() || p.size() != points.dim()) {
      throw ConfigError(std::string("ragged point array: ") + key);
    }
    x.clear();
    for (const json& c : p) {
      if (!c.is_number()) {
        throw ConfigError(std::string("non-numeric coordinate in: ") + key);
      }
      x.push_back(c.get<double>());
    }
    points.push(x);
  }
  return points;
}

std::vector<std::uint8_t> parse_labels(const json& j, const char* key) {
  if (!j.contains(key) || !j.at(key).is_array()) {
    throw ConfigError(std::string("missing label array: ") + key);
  }
  std::vector<std::uint8_t> labels;
  for (const json& v : j.at(key)) {
    if (!v.is_number_unsigned() || v.get<std::size_t>() > 1) {
      throw ConfigError(std::string("labels must be 0 or 1: ") + key);
    }
    labels.push_back(static_cast<std::uint8_t>(v.get<std::size_t>()));
  }
  return labels;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw ConfigError("cannot open config file: " + path);
  }
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

// Exact misclassification probability of an oriented threshold against the
// realizable target eta(x) = 1[x >= target_cut], under the distribution's
// marginal on [0, 1].
double exact_threshold_error(const SyntheticDistribution& dist,
                             double target_cut,
                             const ThresholdHypothesis& h) {
  const double t = std::clamp(h.cut, 0.0, 1.0);
  Box between;
  between.lo = {std::min(t, target_cut)};
  between.hi = {std::max(t, target_cut)};
  const double mass = dist.box_mass(between);
  return h.direction == 1 ? mass : 1.0 - mass;
}

}  // namespace

std::string algorithm_name(AlgorithmId id) {
  switch (id) {
    case AlgorithmId::kPcl:
      return "pcl";
    case AlgorithmId::kPcl2:
      return "pcl2";
    case AlgorithmId::kPcl2b:
      return "pcl2b";
    case AlgorithmId::kPcde:
      return "pcde";
    case AlgorithmId::kCssl:
      return "cssl";
  }
  throw InvalidParameterError("unknown algorithm id");
}

AlgorithmId algorithm_from_name(const std::string& name) {
  if (name == "pcl") return AlgorithmId::kPcl;
  if (name == "pcl2") return AlgorithmId::kPcl2;
  if (name == "pcl2b") return AlgorithmId::kPcl2b;
  if (name == "pcde") return AlgorithmId::kPcde;
  if (name == "cssl") return AlgorithmId::kCssl;
  throw ConfigError("unknown algorithm: " + name);
}

double DeltaSchedule::at(std::size_t n) const {
  switch (kind) {
    case Kind::kNone:
      return 0.0;
    case Kind::kFixed:
      return value;
    case Kind::kInversePower:
      return coefficient *
             std::pow(static_cast<double>(n), -exponent);
  }
  throw InvalidParameterError("unknown delta schedule kind");
}

void DeltaSchedule::validate(const std::vector<std::size_t>& n_grid) const {
  switch (kind) {
    case Kind::kNone:
      return;
    case Kind::kFixed:
      if (!(value > 0.0) || !(value < 1.0)) {
        throw ConfigError("fixed delta must be in (0, 1)");
      }
      return;
    case Kind::kInversePower:
      if (!(coefficient > 0.0) || !(exponent > 0.0)) {
        throw ConfigError(
            "inverse power delta needs positive coefficient and exponent");
      }
      for (std::size_t n : n_grid) {
        const double d = at(n);
        if (!(d > 0.0) || !(d < 1.0)) {
          throw ConfigError("delta schedule leaves (0, 1) on the n grid");
        }
      }
      return;
  }
  throw ConfigError("unknown delta schedule kind");
}

ExperimentConfig ExperimentConfig::from_json_text(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw ConfigError(std::string("invalid JSON: ") + e.what());
  }
  ExperimentConfig config;
  config.algorithm = algorithm_from_name(json_string(j, "algorithm"));
  config.distribution = json_string(j, "distribution");
  if (j.contains("n_grid")) {
    config.n_grid = json_size_array(j, "n_grid");
  }
  if (j.contains("trials")) {
    config.trials = json_size(j, "trials");
  }
  if (j.contains("epsilon")) {
    config.epsilon = json_number(j, "epsilon");
  }
  config.delta = parse_delta(j);
  if (j.contains("m_test")) {
    config.m_test = json_size(j, "m_test");
  }
  if (j.contains("occupancy_k")) {
    config.occupancy_k = json_size(j, "occupancy_k");
  }
  if (j.contains("space")) {
    config.space = json_string(j, "space");
  }
  if (j.contains("net_spacing")) {
    config.net_spacing = json_number(j, "net_spacing");
  }
  if (j.contains("m_labeled_grid")) {
    config.m_labeled_grid = json_size_array(j, "m_labeled_grid");
  }
  if (j.contains("ssl_n_unlabeled")) {
    config.ssl_n_unlabeled = json_size(j, "ssl_n_unlabeled");
  }
  if (j.contains("ssl_alpha")) {
    config.ssl_alpha = json_number(j, "ssl_alpha");
  }
  if (j.contains("ssl_beta")) {
    config.ssl_beta = json_number(j, "ssl_beta");
  }
  config.validate();
  return config;
}

ExperimentConfig ExperimentConfig::from_json_file(const std::string& path) {
  return from_json_text(read_file(path));
}

void ExperimentConfig::validate() const {
  if (trials == 0) {
    throw ConfigError("trials must be >= 1");
  }
  if (!(epsilon > 0.0) || !std::isfinite(epsilon)) {
    throw ConfigError("epsilon must be positive");
  }
  if (m_test == 0) {
    throw ConfigError("m_test must be >= 1");
  }
  try {
    bundled_distribution(distribution);
  } catch (const std::exception& e) {
    throw ConfigError(std::string("bad distribution: ") + e.what());
  }

  const bool sweep_algorithm = algorithm != AlgorithmId::kCssl;
  if (sweep_algorithm) {
    if (n_grid.empty()) {
      throw ConfigError("n_grid must be nonempty");
    }
    for (std::size_t i = 0; i < n_grid.size(); ++i) {
      if (n_grid[i] == 0) {
        throw ConfigError("sample sizes must be >= 1");
      }
      if (i > 0 && n_grid[i] <= n_grid[i - 1]) {
        throw ConfigError("n_grid must be strictly increasing");
      }
    }
  }

  switch (algorithm) {
    case AlgorithmId::kPcl:
    case AlgorithmId::kPcl2:
      if (delta.kind != DeltaSchedule::Kind::kNone) {
        throw ConfigError("pure-DP algorithms take no delta schedule");
      }
      break;
    case AlgorithmId::kPcl2b:
    case AlgorithmId::kPcde:
      if (delta.kind == DeltaSchedule::Kind::kNone) {
        throw ConfigError("this algorithm requires a delta schedule");
      }
      delta.validate(n_grid);
      break;
    case AlgorithmId::kCssl:
      if (delta.kind == DeltaSchedule::Kind::kNone) {
        throw ConfigError("the semi-supervised pipeline requires delta > 0");
      }
      if (m_labeled_grid.empty()) {
        throw ConfigError("ssl requires a nonempty m_labeled_grid");
      }
      for (std::size_t m : m_labeled_grid) {
        if (m == 0) {
          throw ConfigError("labeled sample sizes must be >= 1");
        }
      }
      if (ssl_n_unlabeled == 0) {
        throw ConfigError("n_unlabeled must be >= 1");
      }
      if (!(ssl_alpha > 0.0) || !(ssl_alpha < 1.0) || !(ssl_beta > 0.0) ||
          !(ssl_beta < 1.0)) {
        throw ConfigError("alpha and beta must be in (0, 1)");
      }
      delta.validate({ssl_n_unlabeled});
      break;
  }

  if (algorithm == AlgorithmId::kPcl2 || algorithm == AlgorithmId::kPcl2b) {
    try {
      bundled_distance(space);
    } catch (const std::exception& e) {
      throw ConfigError(std::string("bad metric space: ") + e.what());
    }
    if (!(net_spacing > 0.0) || !(net_spacing <= 0.5)) {
      throw ConfigError("net_spacing must be in (0, 0.5]");
    }
  }
}

ConvergenceResult run_convergence(const ExperimentConfig& config,
                                  std::uint64_t master_seed,
                                  unsigned threads) {
  config.validate();
  if (config.algorithm != AlgorithmId::kPcl &&
      config.algorithm != AlgorithmId::kPcl2 &&
      config.algorithm != AlgorithmId::kPcl2b) {
    throw ConfigError("run_convergence handles pcl, pcl2, and pcl2b");
  }
  const SyntheticDistribution dist = bundled_distribution(config.distribution);

  // Voronoi learners share one immutable descriptor across trials.
  std::shared_ptr<const MetricSpaceDescriptor> space;
  if (config.algorithm != AlgorithmId::kPcl) {
    space = std::make_shared<const MetricSpaceDescriptor>(
        bundled_metric_space(config.space, config.net_spacing));
  }

  const std::uint64_t alg_tag = algorithm_tag(config.algorithm);
  const std::size_t per_n = config.trials;
  const std::size_t task_count = config.n_grid.size() * per_n;
  ConvergenceResult result;
  result.trials.resize(task_count);

  run_parallel(task_count, threads, [&](std::size_t task) {
    const std::size_t n_index = task / per_n;
    const std::size_t trial = task % per_n;
    const std::size_t n = config.n_grid[n_index];

    SeededRng sample_rng(master_seed,
                         derive_stream(master_seed, {alg_tag, n, trial,
                                                     kTagSample}));
    SeededRng mech_rng(master_seed,
                       derive_stream(master_seed, {alg_tag, n, trial,
                                                   kTagMechanism}));
    SeededRng eval_rng(master_seed,
                       derive_stream(master_seed, {alg_tag, n, trial,
                                                   kTagEvaluation}));
    SeededRng occ_rng(master_seed,
                      derive_stream(master_seed, {alg_tag, n, trial,
                                                  kTagOccupancy}));

    const LabeledSample sample = dist.sample_labeled(n, sample_rng);
    PartitionClassifier fitted = [&]() {
      switch (config.algorithm) {
        case AlgorithmId::kPcl:
          return pcl_fit(sample, config.epsilon, mech_rng);
        case AlgorithmId::kPcl2:
          return pcl2_fit(sample, *space, config.epsilon, mech_rng);
        default:
          return pcl2b_fit(
              sample, *space,
              PrivacyBudget(config.epsilon, config.delta.at(n)), mech_rng);
      }
    }();

    // Non-private occupancy diagnostic: training-point count per decision
    // cell, queried at fresh test points.
    std::vector<std::int64_t> counts(fitted.cell_count(), 0);
    for (std::size_t i = 0; i < sample.size(); ++i) {
      ++counts[fitted.cell_index(sample.points[i])];
    }

    std::vector<double> x(dist.dim());
    std::size_t mistakes = 0;
    double eta_gap = 0.0;
    for (std::size_t i = 0; i < config.m_test; ++i) {
      dist.sample_point(eval_rng, x);
      const double u = eval_rng.next_uniform();
      const int y = u < dist.eta(x) ? 1 : 0;
      if (fitted.predict(x) != y) {
        ++mistakes;
      }
      eta_gap += std::abs(dist.eta(x) - fitted.noisy_eta(x));
    }
    std::size_t sparse_hits = 0;
    for (std::size_t i = 0; i < config.m_test; ++i) {
      dist.sample_point(occ_rng, x);
      if (counts[fitted.cell_index(x)] <=
          static_cast<std::int64_t>(config.occupancy_k)) {
        ++sparse_hits;
      }
    }

    TrialDetail& detail = result.trials[task];
    detail.n = n;
    detail.trial = trial;
    detail.metric_main = static_cast<double>(mistakes) /
                             static_cast<double>(config.m_test) -
                         dist.bayes_error();
    detail.metric_aux = eta_gap / static_cast<double>(config.m_test);
    detail.occupancy_le_k = static_cast<double>(sparse_hits) /
                            static_cast<double>(config.m_test);
  });

  for (std::size_t n_index = 0; n_index < config.n_grid.size(); ++n_index) {
    result.rows.push_back(aggregate_row(
        config.n_grid[n_index],
        std::span<const TrialDetail>(result.trials.data() + n_index * per_n,
                                     per_n)));
  }
  return result;
}

ConvergenceResult run_density(const ExperimentConfig& config,
                              std::uint64_t master_seed, unsigned threads) {
  config.validate();
  if (config.algorithm != AlgorithmId::kPcde) {
    throw ConfigError("run_density handles pcde");
  }
  const SyntheticDistribution dist = bundled_distribution(config.distribution);

  Box unit_cube;
  unit_cube.lo.assign(dist.dim(), 0.0);
  unit_cube.hi.assign(dist.dim(), 1.0);

  const std::uint64_t alg_tag = algorithm_tag(config.algorithm);
  const std::size_t per_n = config.trials;
  const std::size_t task_count = config.n_grid.size() * per_n;
  ConvergenceResult result;
  result.trials.resize(task_count);

  run_parallel(task_count, threads, [&](std::size_t task) {
    const std::size_t n_index = task / per_n;
    const std::size_t trial = task % per_n;
    const std::size_t n = config.n_grid[n_index];

    SeededRng sample_rng(master_seed,
                         derive_stream(master_seed, {alg_tag, n, trial,
                                                     kTagSample}));
    SeededRng mech_rng(master_seed,
                       derive_stream(master_seed, {alg_tag, n, trial,
                                                   kTagMechanism}));
    SeededRng occ_rng(master_seed,
                      derive_stream(master_seed, {alg_tag, n, trial,
                                                  kTagOccupancy}));

    const PointBuffer points = dist.sample_points(n, sample_rng);
    const PiecewiseConstantDensity raw = pcde_fit(
        points, PrivacyBudget(config.epsilon, config.delta.at(n)), mech_rng);

    std::map<GridCell, std::int64_t> counts;
    for (std::size_t i = 0; i < points.size(); ++i) {
      ++counts[cell_of(points[i], raw.grid)];
    }
    std::vector<double> x(dist.dim());
    std::size_t sparse_hits = 0;
    for (std::size_t i = 0; i < config.m_test; ++i) {
      dist.sample_point(occ_rng, x);
      auto it = counts.find(cell_of(x, raw.grid));
      const std::int64_t count = it == counts.end() ? 0 : it->second;
      if (count <= static_cast<std::int64_t>(config.occupancy_k)) {
        ++sparse_hits;
      }
    }

    TrialDetail& detail = result.trials[task];
    detail.n = n;
    detail.trial = trial;
    detail.metric_main = l1_distance(raw, dist.marginal());
    detail.metric_aux = l1_distance_on_box(raw, dist.marginal(), unit_cube);
    detail.occupancy_le_k = static_cast<double>(sparse_hits) /
                            static_cast<double>(config.m_test);
  });

  for (std::size_t n_index = 0; n_index < config.n_grid.size(); ++n_index) {
    result.rows.push_back(aggregate_row(
        config.n_grid[n_index],
        std::span<const TrialDetail>(result.trials.data() + n_index * per_n,
                                     per_n)));
  }
  return result;
}

std::vector<SslRow> run_ssl_benchmark(const ExperimentConfig& config,
                                      std::uint64_t master_seed,
                                      unsigned threads) {
  config.validate();
  if (config.algorithm != AlgorithmId::kCssl) {
    throw ConfigError("run_ssl_benchmark handles cssl");
  }
  const SyntheticDistribution dist = bundled_distribution(config.distribution);
  if (dist.dim() != 1) {
    throw ConfigError("the semi-supervised pipeline requires dimension 1");
  }
  // Exact error computation is available for realizable threshold targets.
  double target_cut = 0.0;
  bool exact = false;
  const std::string threshold_prefix = "threshold_";
  if (config.distribution.rfind(threshold_prefix, 0) == 0) {
    target_cut = parse_double(config.distribution.substr(
        threshold_prefix.size()));
    exact = true;
  }

  const std::uint64_t alg_tag = algorithm_tag(config.algorithm);
  const double delta = config.delta.at(config.ssl_n_unlabeled);
  const std::size_t per_m = config.trials;
  const std::size_t task_count = config.m_labeled_grid.size() * per_m;
  std::vector<std::uint8_t> successes(task_count, 0);

  run_parallel(task_count, threads, [&](std::size_t task) {
    const std::size_t m_index = task / per_m;
    const std::size_t trial = task % per_m;
    const std::size_t m = config.m_labeled_grid[m_index];

    SeededRng sample_rng(master_seed,
                         derive_stream(master_seed, {alg_tag, m, trial,
                                                     kTagSample}));
    SeededRng pool_rng(master_seed,
                       derive_stream(master_seed, {alg_tag, m, trial,
                                                   kTagPool}));
    SeededRng mech_rng(master_seed,
                       derive_stream(master_seed, {alg_tag, m, trial,
                                                   kTagMechanism}));

    const LabeledSample labeled = dist.sample_labeled(m, sample_rng);
    const PointBuffer pool =
        dist.sample_points(config.ssl_n_unlabeled, pool_rng);
    const SslBudgets budgets{m, config.ssl_n_unlabeled, config.ssl_alpha,
                             config.ssl_beta};
    const ThresholdHypothesis h = private_cssl(
        labeled, pool, PrivacyBudget(config.epsilon, delta), budgets,
        mech_rng);

    double error = 0.0;
    if (exact) {
      error = exact_threshold_error(dist, target_cut, h);
    } else {
      SeededRng eval_rng(master_seed,
                         derive_stream(master_seed, {alg_tag, m, trial,
                                                     kTagEvaluation}));
      error = empirical_error(
          [&h](std::span<const double> x) { return h.predict(x[0]); }, dist,
          config.m_test, eval_rng);
    }
    successes[task] = error <= config.ssl_alpha ? 1 : 0;
  });

  std::vector<SslRow> rows;
  for (std::size_t m_index = 0; m_index < config.m_labeled_grid.size();
       ++m_index) {
    std::size_t wins = 0;
    for (std::size_t trial = 0; trial < per_m; ++trial) {
      wins += successes[m_index * per_m + trial];
    }
    const double rate =
        static_cast<double>(wins) / static_cast<double>(per_m);
    rows.push_back(SslRow{config.m_labeled_grid[m_index],
                          config.ssl_n_unlabeled, rate,
                          binomial_stderr(rate, per_m)});
  }
  return rows;
}

void write_convergence_csv(std::ostream& out,
                           const ConvergenceResult& result) {
  out << "n,mean_excess_error,stderr_excess_error,mean_eta_gap,"
         "stderr_eta_gap,mean_occupancy_le_k\n";
  for (const ConvergenceRow& row : result.rows) {
    out << row.n << "," << format_double(row.mean_main) << ","
        << format_double(row.stderr_main) << ","
        << format_double(row.mean_aux) << "," << format_double(row.stderr_aux)
        << "," << format_double(row.mean_occupancy_le_k) << "\n";
  }
}

void write_density_csv(std::ostream& out, const ConvergenceResult& result) {
  out << "n,mean_l1_raw,stderr_l1_raw,mean_l1_inside,stderr_l1_inside,"
         "mean_occupancy_le_k\n";
  for (const ConvergenceRow& row : result.rows) {
    out << row.n << "," << format_double(row.mean_main) << ","
        << format_double(row.stderr_main) << ","
        << format_double(row.mean_aux) << "," << format_double(row.stderr_aux)
        << "," << format_double(row.mean_occupancy_le_k) << "\n";
  }
}

void write_ssl_csv(std::ostream& out, const std::vector<SslRow>& rows) {
  out << "m_labeled,n_unlabeled,success_rate,stderr_success\n";
  for (const SslRow& row : rows) {
    out << row.m_labeled << "," << row.n_unlabeled << ","
        << format_double(row.success_rate) << ","
        << format_double(row.stderr_success) << "\n";
  }
}

AuditConfig AuditConfig::from_json_text(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw ConfigError(std::string("invalid JSON: ") + e.what());
  }
  AuditConfig config;
  config.mechanism = json_string(j, "mechanism");
  if (!j.contains("claim") || !j.at("claim").is_object()) {
    throw ConfigError("audit config needs a claim object");
  }
  config.epsilon = json_number(j.at("claim"), "epsilon");
  config.delta = j.at("claim").contains("delta")
                     ? json_number(j.at("claim"), "delta")
                     : 0.0;
  if (j.contains("runs")) {
    config.runs = json_size(j, "runs");
  }
  if (j.contains("noise_scale_factor")) {
    config.noise_scale_factor = json_number(j, "noise_scale_factor");
  }
  if (j.contains("probe_points")) {
    config.probe_points = parse_points(j, "probe_points");
  }
  if (!j.contains("pair") || !j.at("pair").is_object()) {
    throw ConfigError("audit config needs a pair object");
  }
  const json& pair = j.at("pair");
  config.first.points = parse_points(pair, "points");
  config.first.labels = parse_labels(pair, "labels");
  config.second.points = pair.contains("points_second")
                             ? parse_points(pair, "points_second")
                             : config.first.points;
  config.second.labels = pair.contains("labels_second")
                             ? parse_labels(pair, "labels_second")
                             : config.first.labels;
  if (j.contains("grid_side")) {
    config.grid_side = json_number(j, "grid_side");
  }
  if (j.contains("tracked_cells")) {
    for (const json& cell : j.at("tracked_cells")) {
      if (!cell.is_array()) {
        throw ConfigError("tracked cells must be index arrays");
      }
      GridCell parsed;
      for (const json& c : cell) {
        if (!c.is_number_integer()) {
          throw ConfigError("tracked cell indices must be integers");
        }
        parsed.push_back(c.get<std::int64_t>());
      }
      config.tracked_cells.push_back(std::move(parsed));
    }
  }
  if (j.contains("space")) {
    config.space = json_string(j, "space");
  }
  if (j.contains("net_spacing")) {
    config.net_spacing = json_number(j, "net_spacing");
  }
  if (j.contains("budget") && j.at("budget").is_object()) {
    const double eps = json_number(j.at("budget"), "epsilon");
    const double del = j.at("budget").contains("delta")
                           ? json_number(j.at("budget"), "delta")
                           : 0.0;
    config.mechanism_budget = PrivacyBudget(eps, del);
  } else {
    config.mechanism_budget = PrivacyBudget(config.epsilon, config.delta);
  }
  config.validate();
  return config;
}

AuditConfig AuditConfig::from_json_file(const std::string& path) {
  return from_json_text(read_file(path));
}

void AuditConfig::validate() const {
  if (mechanism != "pcl" && mechanism != "pcl2b" &&
      mechanism != "stable_histogram") {
    throw ConfigError("unknown audited mechanism: " + mechanism);
  }
  if (!(epsilon > 0.0) || !std::isfinite(epsilon)) {
    throw ConfigError("claimed epsilon must be positive");
  }
  if (!(delta >= 0.0) || !(delta < 1.0)) {
    throw ConfigError("claimed delta must be in [0, 1)");
  }
  if (runs < 100) {
    throw ConfigError("audit runs must be >= 100");
  }
  if (!(noise_scale_factor > 0.0)) {
    throw ConfigError("noise scale factor must be positive");
  }
  try {
    first.validate();
    second.validate();
  } catch (const std::exception& e) {
    throw ConfigError(std::string("bad audit pair: ") + e.what());
  }
  if (first.size() == 0) {
    throw ConfigError("audit pair must be nonempty");
  }
  if (mechanism == "stable_histogram") {
    if (tracked_cells.empty()) {
      throw ConfigError("stable_histogram audits need tracked_cells");
    }
    if (!(grid_side > 0.0)) {
      throw ConfigError("grid_side must be positive");
    }
    if (!(mechanism_budget.delta > 0.0)) {
      throw ConfigError("stable_histogram audits need a delta > 0 budget");
    }
  } else if (probe_points.empty()) {
    throw ConfigError("classifier audits need probe_points");
  }
  if (mechanism == "pcl2b" && !(mechanism_budget.delta > 0.0)) {
    throw ConfigError("pcl2b audits need a delta > 0 budget");
  }
}

AuditReport run_audit(const AuditConfig& config, std::uint64_t master_seed) {
  config.validate();
  MechanismFn mechanism;
  if (config.mechanism == "pcl") {
    mechanism = pcl_prediction_mechanism(config.mechanism_budget.epsilon,
                                         config.probe_points,
                                         config.noise_scale_factor);
  } else if (config.mechanism == "pcl2b") {
    mechanism = pcl2b_prediction_mechanism(
        bundled_metric_space(config.space, config.net_spacing),
        config.mechanism_budget, config.probe_points);
  } else {
    mechanism = stable_histogram_mechanism(
        config.mechanism_budget,
        GridPartition(config.first.points.dim(), config.grid_side),
        config.tracked_cells);
  }
  SeededRng rng(master_seed, derive_stream(master_seed, {kTagAudit}));
  AuditReport report =
      audit_privacy(config.mechanism, mechanism, config.first, config.second,
                    config.epsilon, config.delta, config.runs, rng);
  std::ostringstream pair_text;
  pair_text << config.first.size() << " records, dim "
            << config.first.points.dim();
  report.pair_description = pair_text.str();
  return report;
}

}  // namespace pucl
