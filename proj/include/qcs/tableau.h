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
#include <string>
#include <vector>

#include "qcs/circuit.h"
#include "qcs/prob_dist.h"

namespace qcs {

/// Aaronson-Gottesman stabilizer tableau. Rows 0..n-1 are destabilizers,
/// rows n..2n-1 stabilizers, row 2n is scratch for deterministic measurement.
/// X and Z parts are bit-packed into 64-bit words per row.
class Tableau {
  public:
    /// Maximum number of measured qubits clifford_dist will branch over.
    static constexpr size_t kMaxMeasured = 8;

    /// Tableau of |0...0>.
    explicit Tableau(uint32_t n_qubits);

    uint32_t n_qubits() const { return n_; }

    void h(uint32_t q);
    void s(uint32_t q);
    void x(uint32_t q);
    void y(uint32_t q);
    void z(uint32_t q);
    void cx(uint32_t control, uint32_t target);
    void cz(uint32_t a, uint32_t b);

    /// Conjugates by a Clifford gate; throws std::invalid_argument otherwise.
    void apply(const Gate &g);

    /// True when a Z measurement of q has a definite outcome.
    bool is_deterministic(uint32_t q) const;
    /// Outcome of a deterministic Z measurement of q.
    bool deterministic_outcome(uint32_t q) const;
    /// Projects q onto `outcome` after a random Z measurement.
    void collapse(uint32_t q, bool outcome);

    /// Pauli string of a generator, e.g. "+XZ" (qubit 0 first). Rows 0..n-1
    /// destabilizers, n..2n-1 stabilizers.
    std::string row_string(size_t row) const;
    std::string stabilizer_string(uint32_t i) const { return row_string(n_ + i); }

    /// Checks the symplectic relations: generators commute pairwise except
    /// destabilizer i with stabilizer i, which anticommute.
    bool is_valid_symplectic() const;

    bool operator==(const Tableau &other) const = default;

  private:
    bool xbit(size_t row, uint32_t q) const { return (xs_[row * words_ + (q >> 6)] >> (q & 63)) & 1U; }
    bool zbit(size_t row, uint32_t q) const { return (zs_[row * words_ + (q >> 6)] >> (q & 63)) & 1U; }
    void rowsum(size_t h, size_t i);
    void row_copy(size_t dst, size_t src);
    void row_clear(size_t row);
    bool rows_commute(size_t a, size_t b) const;

    uint32_t n_;
    size_t words_;
    std::vector<uint64_t> xs_;
    std::vector<uint64_t> zs_;
    std::vector<uint8_t> r_;
};

/// Exact outcome distribution of an all-Clifford circuit over c.measured(),
/// by branching on every random single-qubit measurement. Throws
/// std::invalid_argument for non-Clifford gates or more than
/// Tableau::kMaxMeasured measured qubits.
ProbDist clifford_dist(const Circuit &c);

/// Distribution of an already-evolved tableau over `measured`.
ProbDist clifford_dist(const Tableau &t, std::span<const uint32_t> measured);

}  // namespace qcs
