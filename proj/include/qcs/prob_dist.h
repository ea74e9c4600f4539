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
#include <span>
#include <vector>

namespace qcs {

/// Dense distribution over the 2^n_bits outcomes of the measured qubits.
/// Outcome index bit k corresponds to measured qubit k.
class ProbDist {
  public:
    static constexpr double kNormTolerance = 1e-9;

    /// Throws std::invalid_argument when the length is not 2^n_bits, an entry
    /// is negative beyond rounding, or the total deviates from 1 by more than
    /// kNormTolerance.
    ProbDist(uint32_t n_bits, std::vector<double> probs);

    static ProbDist point(uint32_t n_bits, uint64_t outcome);
    static ProbDist uniform(uint32_t n_bits);

    uint32_t n_bits() const { return n_bits_; }
    size_t size() const { return probs_.size(); }
    std::span<const double> probs() const { return probs_; }
    double operator[](size_t i) const { return probs_[i]; }

    double total() const;

    bool operator==(const ProbDist &) const = default;

  private:
    uint32_t n_bits_;
    std::vector<double> probs_;
};

/// Total variation distance: half the L1 distance between p and q.
double tvd(const ProbDist &p, const ProbDist &q);

}  // namespace qcs
