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

#ifndef PUCL_SERIALIZE_HPP_
#define PUCL_SERIALIZE_HPP_

#include <string>

namespace pucl {

// Shortest decimal form that parses back to the identical double
// (round-trip exact), locale-independent.
std::string format_double(double value);

// Fixed-precision decimal form for human-facing tables: %.*g with the given
// number of significant digits. Deterministic for identical inputs.
std::string format_double_digits(double value, int digits);

// Inverse of format_double; throws InvalidInputError on malformed input.
double parse_double(const std::string& text);

}  // namespace pucl

#endif  // PUCL_SERIALIZE_HPP_
