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

#include "pucl/laplace.hpp"

#include <cmath>

#include "pucl/errors.hpp"

namespace pucl {

PrivacyBudget::PrivacyBudget(double epsilon_in, double delta_in)
    : epsilon(epsilon_in), delta(delta_in) {
  if (!(epsilon > 0.0) || !std::isfinite(epsilon)) {
    throw InvalidParameterError("privacy budget requires epsilon > 0");
  }
  if (!(delta >= 0.0) || !(delta < 1.0)) {
    throw InvalidParameterError("privacy budget requires 0 <= delta < 1");
  }
}

double sample_laplace(double scale, SeededRng& rng) {
  if (!(scale > 0.0) || !std::isfinite(scale)) {
    throw InvalidParameterError("laplace scale must be positive and finite");
  }
  const double u = rng.next_uniform();
  // u is in (0, 1), so both log arguments are in (0, 1] and the result is
  // finite.
  return u < 0.5 ? scale * std::log(2.0 * u)
                 : -scale * std::log(2.0 * (1.0 - u));
}

std::vector<double> laplace_mechanism(std::span<const double> values,
                                      double l1_sensitivity, double epsilon,
                                      SeededRng& rng) {
  if (!(l1_sensitivity > 0.0) || !std::isfinite(l1_sensitivity)) {
    throw InvalidParameterError("l1 sensitivity must be positive and finite");
  }
  if (!(epsilon > 0.0) || !std::isfinite(epsilon)) {
    throw InvalidParameterError("laplace mechanism requires epsilon > 0");
  }
  const double scale = l1_sensitivity / epsilon;
  std::vector<double> noisy;
  noisy.reserve(values.size());
  for (double v : values) {
    noisy.push_back(v + sample_laplace(scale, rng));
  }
  return noisy;
}

}  // namespace pucl
