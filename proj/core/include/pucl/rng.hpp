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

#ifndef PUCL_RNG_HPP_
#define PUCL_RNG_HPP_

#include <cstdint>
#include <initializer_list>

namespace pucl {

// Deterministic counter-based pseudo-random stream (splitmix64 core).
//
// Two generators constructed with the same (seed, stream) pair produce
// identical sequences on every platform and build; distinct stream ids give
// decorrelated streams, so parallel trials can each own one without sharing
// state. Not cryptographically secure: suitable for simulation, not for
// deployments where an adversary may predict the noise.
class SeededRng {
 public:
  explicit SeededRng(std::uint64_t seed, std::uint64_t stream = 0);

  std::uint64_t next_u64();

  // Uniform draw strictly inside (0, 1); endpoints are never returned, so the
  // value is always safe to pass through log().
  double next_uniform();

  std::uint64_t seed() const { return seed_; }
  std::uint64_t stream() const { return stream_; }

 private:
  std::uint64_t state_;
  std::uint64_t seed_;
  std::uint64_t stream_;
};

// Collapses a master seed plus structured tags (experiment ids, sample size,
// trial index, purpose) into a stream id. Trials receive reproducible streams
// regardless of how work is scheduled across threads.
std::uint64_t derive_stream(std::uint64_t master_seed,
                            std::initializer_list<std::uint64_t> tags);

}  // namespace pucl

#endif  // PUCL_RNG_HPP_
