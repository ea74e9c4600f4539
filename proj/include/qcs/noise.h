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
#include <optional>
#include <span>
#include <vector>

#include "qcs/circuit.h"
#include "qcs/device.h"
#include "qcs/prob_dist.h"
#include "qcs/rng.h"
#include "qcs/run_config.h"

namespace qcs {

/// Calibration resolved onto one circuit: a depolarizing probability after
/// every gate and a readout flip probability for every measured bit.
struct NoiseSpec {
    std::vector<double> gate_error;    // p1 = err_1q or p2 = 1 - Q_e, per gate
    std::vector<double> readout_flip;  // r = 1 - R_i, per measured bit
};

/// Throws std::invalid_argument when a gate's physical qubit or edge has no
/// calibration on `dev`.
NoiseSpec make_noise_spec(const Circuit &c, const DeviceModel &dev);

/// Pauli inserted after each gate: 0 = none. 1q gates use codes 1..3 (X, Y, Z).
/// 2q gates use 1..15 with the Pauli on qubits[0] in the low two bits and on
/// qubits[1] in the high two bits (0 = I, 1 = X, 2 = Y, 3 = Z).
using ErrorPattern = std::vector<uint8_t>;

/// Draws one trajectory's depolarizing errors.
void sample_error_pattern(const Circuit &c, const NoiseSpec &spec, Rng &rng, ErrorPattern &out);

/// The circuit with the pattern's Paulis materialized as X/Y/Z gates.
Circuit insert_errors(const Circuit &c, const ErrorPattern &pattern);

/// Applies independent bit flips with per-bit probabilities; exact.
ProbDist readout_convolve(const ProbDist &p, std::span<const double> flips);

/// Inputs of a non-Clifford execution.
struct Binding {
    std::span<const double> x;
    std::span<const double> theta;
};

/// Noisy output distribution over c.measured(), averaged over
/// cfg.trajectories depolarizing trajectories, then passed through the exact
/// readout channel. All-Clifford circuits run on the stabilizer backend
/// (binding optional); anything else needs a binding and runs on the
/// statevector. With cfg.shots > 0 the result is an empirical histogram.
ProbDist noisy_dist(const Circuit &c, const DeviceModel &dev, std::optional<Binding> binding, const RunConfig &cfg,
                    Rng &rng);

/// Same with a precomputed NoiseSpec and the trajectory count explicit.
ProbDist noisy_dist(const Circuit &c, const NoiseSpec &spec, std::optional<Binding> binding, uint32_t trajectories,
                    uint32_t shots, Rng &rng);

}  // namespace qcs
