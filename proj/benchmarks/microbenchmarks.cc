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

#include <benchmark/benchmark.h>

#include <cstdint>
#include <vector>

#include "pucl/classifier.hpp"
#include "pucl/density.hpp"
#include "pucl/laplace.hpp"
#include "pucl/metric.hpp"
#include "pucl/ssl.hpp"
#include "pucl/stable_histogram.hpp"
#include "pucl/synthetic.hpp"

namespace pucl {
namespace {

void BM_LaplaceSample(benchmark::State& state) {
  SeededRng rng(1, 0);
  double acc = 0.0;
  for (auto _ : state) {
    acc += sample_laplace(2.0, rng);
  }
  benchmark::DoNotOptimize(acc);
}
BENCHMARK(BM_LaplaceSample);

void BM_StableHistogram(benchmark::State& state) {
  const std::size_t n = static_cast<std::size_t>(state.range(0));
  const SyntheticDistribution uniform = bundled_distribution("uniform_1d");
  SeededRng sample_rng(2, 0);
  const PointBuffer points = uniform.sample_points(n, sample_rng);
  const GridPartition grid = density_grid(n, 1);
  std::vector<GridCell> keys;
  keys.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    keys.push_back(cell_of(points[i], grid));
  }
  const PrivacyBudget budget(1.0, 1e-4);
  std::uint64_t stream = 0;
  for (auto _ : state) {
    SeededRng rng(3, stream++);
    benchmark::DoNotOptimize(stable_histogram(keys, budget, rng));
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(n));
}
BENCHMARK(BM_StableHistogram)->Arg(1000)->Arg(100000);

void BM_GridClassifierFit(benchmark::State& state) {
  const std::size_t n = static_cast<std::size_t>(state.range(0));
  const SyntheticDistribution board = bundled_distribution(
      "checkerboard_1d_3_p0.1");
  SeededRng sample_rng(4, 0);
  const LabeledSample sample = board.sample_labeled(n, sample_rng);
  std::uint64_t stream = 0;
  for (auto _ : state) {
    SeededRng rng(5, stream++);
    benchmark::DoNotOptimize(pcl_fit(sample, 1.0, rng));
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(n));
}
BENCHMARK(BM_GridClassifierFit)->Arg(1000)->Arg(100000);

void BM_GridClassifierPredict(benchmark::State& state) {
  const SyntheticDistribution board = bundled_distribution(
      "checkerboard_1d_3_p0.1");
  SeededRng sample_rng(6, 0);
  const LabeledSample sample = board.sample_labeled(100000, sample_rng);
  SeededRng fit_rng(6, 1);
  const PartitionClassifier h = pcl_fit(sample, 1.0, fit_rng);
  SeededRng query_rng(6, 2);
  std::vector<double> x{0.0};
  int acc = 0;
  for (auto _ : state) {
    x[0] = query_rng.next_uniform();
    acc += h.predict(x);
  }
  benchmark::DoNotOptimize(acc);
}
BENCHMARK(BM_GridClassifierPredict);

void BM_DensityFit(benchmark::State& state) {
  const std::size_t n = static_cast<std::size_t>(state.range(0));
  const SyntheticDistribution mix = bundled_distribution("two_boxes_1d");
  SeededRng sample_rng(7, 0);
  const PointBuffer points = mix.sample_points(n, sample_rng);
  const PrivacyBudget budget(1.0, 1e-4);
  std::uint64_t stream = 0;
  for (auto _ : state) {
    SeededRng rng(8, stream++);
    benchmark::DoNotOptimize(pcde_fit(points, budget, rng));
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(n));
}
BENCHMARK(BM_DensityFit)->Arg(1000)->Arg(100000);

void BM_MaximalPacking(benchmark::State& state) {
  const MetricSpaceDescriptor plane = euclidean_unit_cube(2, 0.01);
  for (auto _ : state) {
    benchmark::DoNotOptimize(build_maximal_packing(plane, 0.1));
  }
}
BENCHMARK(BM_MaximalPacking);

void BM_VoronoiQuery(benchmark::State& state) {
  const MetricSpaceDescriptor plane = euclidean_unit_cube(2, 0.01);
  const MetricPartition packing = build_maximal_packing(plane, 0.1);
  SeededRng rng(9, 0);
  std::vector<double> x{0.0, 0.0};
  std::size_t acc = 0;
  for (auto _ : state) {
    x[0] = rng.next_uniform();
    x[1] = rng.next_uniform();
    acc += voronoi_cell(x, packing, plane.distance);
  }
  benchmark::DoNotOptimize(acc);
}
BENCHMARK(BM_VoronoiQuery);

void BM_ThresholdLearner(benchmark::State& state) {
  const SyntheticDistribution dist = bundled_distribution("threshold_0.35");
  SeededRng sample_rng(10, 0);
  const LabeledSample labeled = dist.sample_labeled(203, sample_rng);
  std::vector<double> unlabeled;
  for (int i = 0; i < 10000; ++i) {
    unlabeled.push_back(sample_rng.next_uniform());
  }
  std::uint64_t stream = 0;
  for (auto _ : state) {
    SeededRng rng(11, stream++);
    benchmark::DoNotOptimize(
        semi_private_learn(labeled, unlabeled, 1.0, rng));
  }
}
BENCHMARK(BM_ThresholdLearner);

}  // namespace
}  // namespace pucl

BENCHMARK_MAIN();
