// Copyright 2026 The moegame Authors
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

#pragma once

#include <cstdint>
#include <random>

namespace moegame {

/// Portable seeded generator: std::mt19937_64 (whose output sequence is fixed
/// by the standard) with distributions implemented here rather than through
/// the implementation-defined <random> distributions.
class Rng {
  public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next_u64() { return engine_(); }
    /// Uniform in [0, 1) with 53 random bits.
    double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
    /// Uniform k-bit integer, 0 <= k <= 64.
    std::uint64_t bits(int k) { return k == 0 ? 0 : engine_() >> (64 - k); }
    /// Uniform integer in [0, bound).
    std::uint64_t below(std::uint64_t bound);
    /// Standard normal via Box-Muller.
    double normal();

    /// Seed for an independent stream (e.g. a Monte-Carlo shard).
    static std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream);

  private:
    std::mt19937_64 engine_;
};

}  // namespace moegame
