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

#ifndef PUCL_STATS_HPP_
#define PUCL_STATS_HPP_

#include <cstddef>
#include <span>
#include <vector>

namespace pucl {

struct MeanStderr {
  double mean = 0.0;
  double stderr_of_mean = 0.0;
  std::size_t count = 0;
};

// Sample mean and standard error of the mean (sample stddev / sqrt(count)).
// A single observation has standard error 0 by convention.
MeanStderr mean_stderr(std::span<const double> values);

// Verdict on whether a sequence of (mean, stderr) points decays like a
// consistent learner's error curve: non-increasing except for at most one
// adjacent inversion, and any inversion must be within z times the combined
// standard error of its two endpoints.
struct TrendCheck {
  bool pass = false;
  std::size_t inversions = 0;          // adjacent increases
  std::size_t significant_inversions = 0;  // increases beyond the band
  double worst_excess = 0.0;  // largest increase minus its allowed band
};

TrendCheck check_decay_trend(std::span<const double> means,
                             std::span<const double> stderrs, double z = 1.96);

// Standard error of a Bernoulli frequency estimate p_hat over n trials.
double binomial_stderr(double p_hat, std::size_t n);

}  // namespace pucl

#endif  // PUCL_STATS_HPP_
