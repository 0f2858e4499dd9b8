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

#include "pucl/rng.hpp"

namespace pucl {
namespace {

constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ULL;
constexpr std::uint64_t kStreamMult = 0xDA942042E4DD58B5ULL;

std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

}  // namespace

SeededRng::SeededRng(std::uint64_t seed, std::uint64_t stream)
    : seed_(seed), stream_(stream) {
  state_ = mix64(seed + kGolden) ^ mix64(stream * kStreamMult + kGolden);
}

std::uint64_t SeededRng::next_u64() {
  state_ += kGolden;
  return mix64(state_);
}

double SeededRng::next_uniform() {
  // 53-bit mantissa shifted to the open interval: (k + 0.5) * 2^-53.
  return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53;
}

std::uint64_t derive_stream(std::uint64_t master_seed,
                            std::initializer_list<std::uint64_t> tags) {
  std::uint64_t h = mix64(master_seed + kGolden);
  for (std::uint64_t tag : tags) {
    h = mix64(h ^ (tag * kStreamMult + kGolden));
  }
  return h;
}

}  // namespace pucl
