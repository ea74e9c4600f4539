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

#include <array>
#include <complex>
#include <cstdint>
#include <span>
#include <vector>

#include "qcs/circuit.h"
#include "qcs/prob_dist.h"
#include "qcs/rng.h"

namespace qcs {

using Amplitude = std::complex<double>;
using Matrix2 = std::array<Amplitude, 4>;  // row-major 2x2

/// Dense pure state over n qubits. Basis index bit q holds qubit q.
class StateVector {
  public:
    explicit StateVector(uint32_t n_qubits);

    uint32_t n_qubits() const { return n_qubits_; }
    std::span<const Amplitude> amplitudes() const { return amps_; }
    std::span<Amplitude> amplitudes() { return amps_; }

    /// Back to |0...0>.
    void reset();

    void apply_1q(uint32_t q, const Matrix2 &m);
    void apply_diagonal_1q(uint32_t q, Amplitude d0, Amplitude d1);
    void apply_x(uint32_t q);
    void apply_cx(uint32_t control, uint32_t target);
    void apply_cz(uint32_t a, uint32_t b);

    /// Applies a gate with its angles already resolved (see resolve_angles).
    void apply(const Gate &g, const std::array<double, 3> &angles);

    double norm_squared() const;

  private:
    uint32_t n_qubits_;
    std::vector<Amplitude> amps_;
};

/// Unitary of a single-qubit gate kind for the given angles.
Matrix2 gate_matrix(GateKind kind, const std::array<double, 3> &angles);

/// Angles a gate uses when executed with data x and parameters theta.
inline std::array<double, 3> resolve_angles(const Gate &g, std::span<const double> x, std::span<const double> theta) {
    switch (g.role) {
        case ParamRole::Trainable:
            return {theta[g.index], 0.0, 0.0};
        case ParamRole::Embedding:
            return {x[g.index], 0.0, 0.0};
        case ParamRole::Fixed:
            break;
    }
    return g.angles;
}

struct SimOptions {
    uint32_t max_qubits = 14;
};

/// Executes c from |0...0>. Throws std::invalid_argument on a parameter-length
/// mismatch, data too short for the embedding gates, or a circuit wider than
/// options.max_qubits.
StateVector run(const Circuit &c, std::span<const double> x, std::span<const double> theta,
                const SimOptions &options = {});

/// Same as run() but reuses `state` as the output buffer.
void run_into(StateVector &state, const Circuit &c, std::span<const double> x, std::span<const double> theta);

/// Exact marginal over `measured` (bit k <- measured[k]).
ProbDist measure_dist(const StateVector &s, std::span<const uint32_t> measured);
/// Marginal as a raw vector; skips normalization checks for hot loops.
void marginal_probs(const StateVector &s, std::span<const uint32_t> measured, std::vector<double> &out);

/// <Z_q> for every measured qubit, in measured order.
std::vector<double> z_expectations(const StateVector &s, std::span<const uint32_t> measured);
/// <Z_k> for every bit of an outcome distribution.
std::vector<double> z_expectations(const ProbDist &p);

/// Empirical distribution of `shots` i.i.d. draws from the exact marginal.
ProbDist sample(const StateVector &s, std::span<const uint32_t> measured, uint64_t shots, Rng &rng);
/// Empirical distribution of `shots` draws from p.
ProbDist sample(const ProbDist &p, uint64_t shots, Rng &rng);

}  // namespace qcs
