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
#include <string>
#include <vector>

namespace qcs {

/// How the rejection stage combines the CNR threshold with the rank cut.
enum class KeepRule {
    Both,    // keep iff cnr >= threshold AND within the top keep_fraction
    Either,  // keep iff cnr >= threshold OR within the top keep_fraction
};

/// Search hyperparameters. n_bases, two_q_fraction and the generation scores
/// have no canonical value; the defaults below are this toolkit's choice.
struct RunConfig {
    uint32_t d_c = 16;               // samples per class for RepCap
    uint32_t n_p = 32;               // parameter draws for induced similarity
    uint32_t replicas = 32;          // Clifford replicas per candidate (M)
    uint32_t n_bases = 8;            // random measurement bases per state
    double cnr_threshold = 0.7;
    double keep_fraction = 0.5;
    KeepRule keep_rule = KeepRule::Both;
    double alpha_cnr = 0.5;          // exponent of CNR in the composite score
    double tau = 0.05;               // softmax temperature for generation
    double two_q_fraction = 0.3;
    uint32_t n_subgraph_samples = 32;
    uint32_t shots = 0;              // 0 = exact distributions
    uint32_t trajectories = 256;
    uint32_t true_fidelity_samples = 8;
    uint32_t max_qubits = 14;        // statevector width cap
    uint64_t rng_seed = 0;
    unsigned workers = 0;            // 0 = hardware concurrency; never affects results

    bool exact_shots() const { return shots == 0; }

    /// "field: problem" for every violated invariant.
    std::vector<std::string> validate() const;
};

}  // namespace qcs
