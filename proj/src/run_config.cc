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

#include "qcs/run_config.h"

#include <cmath>

namespace qcs {

namespace {

void fraction(std::vector<std::string> &out, const char *field, double v) {
    if (!(v > 0.0 && v <= 1.0)) {
        out.push_back(std::string(field) + ": must lie in (0, 1], got " + std::to_string(v));
    }
}

void at_least_one(std::vector<std::string> &out, const char *field, uint64_t v) {
    if (v < 1) {
        out.push_back(std::string(field) + ": must be >= 1");
    }
}

}  // namespace

std::vector<std::string> RunConfig::validate() const {
    std::vector<std::string> out;
    at_least_one(out, "d_c", d_c);
    at_least_one(out, "n_p", n_p);
    at_least_one(out, "replicas", replicas);
    at_least_one(out, "n_bases", n_bases);
    at_least_one(out, "n_subgraph_samples", n_subgraph_samples);
    at_least_one(out, "trajectories", trajectories);
    at_least_one(out, "true_fidelity_samples", true_fidelity_samples);
    at_least_one(out, "max_qubits", max_qubits);
    fraction(out, "cnr_threshold", cnr_threshold);
    fraction(out, "keep_fraction", keep_fraction);
    fraction(out, "two_q_fraction", two_q_fraction);
    if (!(alpha_cnr > 0.0) || !std::isfinite(alpha_cnr)) {
        out.push_back("alpha_cnr: must be positive");
    }
    if (!(tau > 0.0) || !std::isfinite(tau)) {
        out.push_back("tau: must be positive");
    }
    if (max_qubits > 26) {
        out.push_back("max_qubits: statevector cap above 26 qubits is not supported");
    }
    return out;
}

}  // namespace qcs
