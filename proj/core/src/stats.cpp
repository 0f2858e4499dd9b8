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

#include "pucl/stats.hpp"

#include <cmath>

#include "pucl/errors.hpp"

namespace pucl {

MeanStderr mean_stderr(std::span<const double> values) {
  if (values.empty()) {
    throw InvalidInputError("mean of an empty sample is undefined");
  }
  MeanStderr result;
  result.count = values.size();
  double sum = 0.0;
  for (double v : values) {
    sum += v;
  }
  result.mean = sum / static_cast<double>(values.size());
  if (values.size() == 1) {
    return result;
  }
  double ss = 0.0;
  for (double v : values) {
    const double d = v - result.mean;
    ss += d * d;
  }
  const double variance = ss / static_cast<double>(values.size() - 1);
  result.stderr_of_mean =
      std::sqrt(variance / static_cast<double>(values.size()));
  return result;
}

TrendCheck check_decay_trend(std::span<const double> means,
                             std::span<const double> stderrs, double z) {
  if (means.size() != stderrs.size() || means.empty()) {
    throw InvalidInputError("trend check needs aligned, nonempty series");
  }
  TrendCheck check;
  for (std::size_t i = 0; i + 1 < means.size(); ++i) {
    const double increase = means[i + 1] - means[i];
    if (increase <= 0.0) {
      continue;
    }
    ++check.inversions;
    const double band =
        z * std::sqrt(stderrs[i] * stderrs[i] + stderrs[i + 1] * stderrs[i + 1]);
    if (increase > band) {
      ++check.significant_inversions;
    }
    check.worst_excess = std::max(check.worst_excess, increase - band);
  }
  check.pass = check.inversions <= 1 && check.significant_inversions == 0;
  return check;
}

double binomial_stderr(double p_hat, std::size_t n) {
  if (n == 0) {
    throw InvalidInputError("binomial stderr needs at least one trial");
  }
  return std::sqrt(p_hat * (1.0 - p_hat) / static_cast<double>(n));
}

}  // namespace pucl
