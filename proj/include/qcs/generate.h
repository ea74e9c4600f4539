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
#include "qcs/device.h"
#include "qcs/rng.h"
#include "qcs/run_config.h"

namespace qcs {

/// Shape of the circuits to generate.
struct CircuitConfig {
    uint32_t n_q = 4;
    uint32_t n_params = 16;
    uint32_t n_embeds = 4;
    uint32_t n_meas = 1;
    /// Feature count of the task; embedding gates cycle over a shuffled order
    /// of these dimensions.
    uint32_t data_dim = 2;

    std::vector<std::string> validate(const DeviceModel &dev) const;
};

/// Connected induced subgraph of a device. Vertices are sorted; edges index
/// into the device edge list.
struct Subgraph {
    std::vector<uint32_t> vertices;
    std::vector<size_t> edges;

    bool operator==(const Subgraph &) const = default;
};

/// Up to k distinct connected induced subgraphs with n_q vertices, each grown
/// by randomized breadth-first expansion from a random seed qubit. Throws
/// std::invalid_argument when no connected component holds n_q qubits.
std::vector<Subgraph> sample_subgraphs(const DeviceModel &dev, uint32_t n_q, uint32_t k, Rng &rng);

/// exp(s_i / tau) / sum_j exp(s_j / tau), computed with max-subtraction.
std::vector<double> softmax(std::span<const double> scores, double tau);
/// Draws an index from softmax(scores, tau). Throws on empty input or tau <= 0.
size_t softmax_choose(std::span<const double> scores, double tau, Rng &rng);

/// Subgraph score: mean edge fidelity and mean readout fidelity, equally weighted.
double subgraph_score(const DeviceModel &dev, const Subgraph &s);

/// One device-aware candidate. Every 2q gate lands on a device edge, so the
/// circuit needs no routing. See the README for the placement scores.
Circuit generate_candidate(const DeviceModel &dev, const CircuitConfig &conf, const RunConfig &cfg, Rng &rng);

/// Replaces a candidate's embedding with a fixed first layer of RX(x[q mod dim])
/// on every qubit. Gates that embedded data become trainable, with fresh
/// indices after the existing ones.
Circuit with_fixed_angle_embedding(const Circuit &c, uint32_t dim);

}  // namespace qcs
