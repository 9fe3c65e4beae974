// Copyright 2026 The dynshadow Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef DYNSHADOW_RNG_HPP
#define DYNSHADOW_RNG_HPP

#include <cstdint>

namespace dynshadow {

/// Counter-based pseudo-random generator built on splitmix64.
///
/// The sequence is fully determined by (seed, stream) and is identical across
/// platforms and compilers. Shot-level reproducibility is obtained by giving
/// every shot its own stream: replaying shot k of a run never depends on how
/// many draws earlier shots consumed.
class Rng {
 public:
  explicit Rng(uint64_t seed, uint64_t stream = 0) {
    uint64_t h = seed;
    uint64_t seed_hash = advance(h);
    state_ = seed_hash ^ ((stream + 1) * 0xD1B54A32D192ED03ULL);
  }

  uint64_t next_u64() { return advance(state_); }

  /// Uniform double in [0, 1) with 53 random bits.
  double next_unit() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  /// True with probability p. Always consumes exactly one draw.
  bool next_bool(double p) { return next_unit() < p; }

 private:
  static uint64_t advance(uint64_t& x) {
    uint64_t z = (x += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  uint64_t state_;
};

}  // namespace dynshadow

#endif  // DYNSHADOW_RNG_HPP
