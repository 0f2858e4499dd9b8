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

#ifndef PUCL_ERRORS_HPP_
#define PUCL_ERRORS_HPP_

#include <stdexcept>

namespace pucl {

// A parameter is outside its documented domain (epsilon <= 0, radius <= 0,
// probability outside [0, 1], ...).
class InvalidParameterError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Input data violates a precondition: dimension mismatch, point outside the
// required domain, labels not in {0, 1}, datasets that are not neighbors.
class InvalidInputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// A construction would exceed a configured resource cap, e.g. a packing of an
// effectively unbounded space.
class CapacityError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A density estimate retained no mass, so it cannot be normalized. Callers
// that need a distribution may substitute an explicit fallback instead.
class DegenerateDensityError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// An experiment configuration is malformed or internally inconsistent.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace pucl

#endif  // PUCL_ERRORS_HPP_
