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

#ifndef PUCL_STABLE_HISTOGRAM_HPP_
#define PUCL_STABLE_HISTOGRAM_HPP_

#include <cmath>
#include <cstddef>
#include <map>
#include <span>
#include <vector>

#include "pucl/errors.hpp"
#include "pucl/laplace.hpp"
#include "pucl/rng.hpp"

namespace pucl {

// Sparse noisy histogram over an arbitrary ordered key domain. Keys that were
// thresholded away, or never occupied, are absent from `entries` and read back
// as exactly zero. Every stored value is at least the release threshold.
template <typename Key>
struct NoisyHistogram {
  std::map<Key, double> entries;
  std::size_t total_n = 0;

  double value_or_zero(const Key& key) const {
    auto it = entries.find(key);
    return it == entries.end() ? 0.0 : it->second;
  }
};

// Minimum noisy count that survives the release: (2 / epsilon) * ln(2 / delta)
// + 1, with the natural logarithm. Requires delta > 0.
inline double stable_histogram_threshold(const PrivacyBudget& budget) {
  if (!(budget.delta > 0.0)) {
    throw InvalidParameterError(
        "stability-based histogram requires delta > 0");
  }
  return (2.0 / budget.epsilon) * std::log(2.0 / budget.delta) + 1.0;
}

// (epsilon, delta)-DP histogram of the key sequence, valid over unbounded key
// domains. Occupied keys receive Laplace(2 / epsilon) noise and are released
// only if the noisy count reaches the threshold (counts exactly at the
// threshold survive). Unoccupied keys are never inspected or released, so the
// output support is a subset of the input keys regardless of the noise.
// Noise is drawn in ascending key order, making releases reproducible for a
// given rng stream.
template <typename Key>
NoisyHistogram<Key> stable_histogram(std::span<const Key> keys,
                                     const PrivacyBudget& budget,
                                     SeededRng& rng) {
  const double threshold = stable_histogram_threshold(budget);
  std::map<Key, std::size_t> counts;
  for (const Key& key : keys) {
    ++counts[key];
  }
  NoisyHistogram<Key> histogram;
  histogram.total_n = keys.size();
  for (const auto& [key, count] : counts) {
    const double noisy = static_cast<double>(count) +
                         sample_laplace(2.0 / budget.epsilon, rng);
    if (!(noisy < threshold)) {
      histogram.entries.emplace(key, noisy);
    }
  }
  return histogram;
}

template <typename Key>
NoisyHistogram<Key> stable_histogram(const std::vector<Key>& keys,
                                     const PrivacyBudget& budget,
                                     SeededRng& rng) {
  return stable_histogram(std::span<const Key>(keys.data(), keys.size()),
                          budget, rng);
}

}  // namespace pucl

#endif  // PUCL_STABLE_HISTOGRAM_HPP_
