// Copyright 2026 The qcsearch Authors
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
#include <initializer_list>
#include <limits>
#include <string_view>

namespace qcs {

/// SplitMix64 generator. Cheap to seed, so every trajectory, replica and
/// candidate can own an independent stream derived from the root seed.
class Rng {
  public:
    using result_type = uint64_t;

    explicit Rng(uint64_t seed = 0) : state_(seed) {}

    static constexpr result_type min() { return 0; }
    static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }

    result_type operator()() {
        uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    /// Uniform double in [0, 1) from the top 53 bits.
    double uniform() { return static_cast<double>((*this)() >> 11) * 0x1.0p-53; }

    /// Uniform integer in [0, n). n must be positive.
    uint64_t below(uint64_t n);

  private:
    uint64_t state_;
};

/// Deterministically derives a child seed from a root seed, a stage label and
/// a path of counters (candidate id, replica index, ...).
uint64_t derive_seed(uint64_t root, std::string_view label, std::initializer_list<uint64_t> path = {});

}  // namespace qcs
