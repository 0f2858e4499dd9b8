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

#ifndef PUCL_LAPLACE_HPP_
#define PUCL_LAPLACE_HPP_

#include <span>
#include <vector>

#include "pucl/rng.hpp"

namespace pucl {

// (epsilon, delta) differential-privacy parameters with respect to
// replace-one neighbors. delta == 0 denotes pure DP.
struct PrivacyBudget {
  double epsilon;
  double delta;

  // Requires epsilon > 0 and 0 <= delta < 1.
  explicit PrivacyBudget(double epsilon, double delta = 0.0);
};

// One draw from the zero-mean Laplace distribution with the given scale > 0,
// computed by inverting the CDF on a single uniform draw. Exactly one uniform
// is consumed per call, which keeps noise streams reproducible.
double sample_laplace(double scale, SeededRng& rng);

// Adds i.i.d. Laplace(l1_sensitivity / epsilon) noise to each coordinate.
// The released vector is epsilon-DP for any statistic whose global L1
// sensitivity between neighboring datasets is at most l1_sensitivity.
// An empty input yields an empty output.
std::vector<double> laplace_mechanism(std::span<const double> values,
                                      double l1_sensitivity, double epsilon,
                                      SeededRng& rng);

}  // namespace pucl

#endif  // PUCL_LAPLACE_HPP_
