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

#include "qcs/circuit.h"

#include <algorithm>
#include <set>

namespace qcs {

Circuit::Circuit(uint32_t n_qubits, std::vector<Gate> gates, std::vector<uint32_t> measured,
                 std::vector<uint32_t> mapping)
    : n_qubits_(n_qubits), gates_(std::move(gates)), measured_(std::move(measured)), mapping_(std::move(mapping)) {
    for (const auto &g : gates_) {
        if (g.role == ParamRole::Trainable) {
            n_trainable_ = std::max(n_trainable_, g.index + 1);
        } else if (g.role == ParamRole::Embedding) {
            ++n_embedding_;
            embedding_dim_ = std::max(embedding_dim_, g.index + 1);
        }
    }
}

bool Circuit::all_clifford() const {
    return std::all_of(gates_.begin(), gates_.end(), [](const Gate &g) { return is_clifford(g.kind); });
}

size_t Circuit::count_two_qubit() const {
    return static_cast<size_t>(
        std::count_if(gates_.begin(), gates_.end(), [](const Gate &g) { return is_two_qubit(g.kind); }));
}

std::vector<std::string> validate_circuit(const Circuit &c, const DeviceModel &dev, std::optional<uint32_t> data_dim) {
    std::vector<std::string> out;
    const uint32_t n = c.n_qubits();
    if (n == 0) {
        out.emplace_back("circuit has no qubits");
    }

    bool mapping_ok = true;
    if (c.mapping().empty()) {
        if (n > dev.n_qubits()) {
            out.emplace_back("circuit is wider than the device");
            mapping_ok = false;
        }
    } else if (c.mapping().size() != n) {
        out.emplace_back("bad mapping: size " + std::to_string(c.mapping().size()) + " != n_qubits " +
                         std::to_string(n));
        mapping_ok = false;
    } else {
        std::set<uint32_t> seen;
        for (uint32_t p : c.mapping()) {
            if (p >= dev.n_qubits()) {
                out.emplace_back("bad mapping: physical qubit " + std::to_string(p) + " not on device");
                mapping_ok = false;
            } else if (!seen.insert(p).second) {
                out.emplace_back("bad mapping: physical qubit " + std::to_string(p) + " used twice");
                mapping_ok = false;
            }
        }
    }

    std::set<uint32_t> trainable;
    for (size_t i = 0; i < c.gates().size(); ++i) {
        const Gate &g = c.gates()[i];
        const std::string where = "gate " + std::to_string(i) + " (" + std::string(gate_name(g.kind)) + ")";
        if (auto err = check_gate(g)) {
            out.push_back(where + ": " + *err);
            continue;
        }
        bool qubits_ok = true;
        for (uint32_t k = 0; k < g.arity(); ++k) {
            if (g.qubits[k] >= n) {
                out.push_back(where + ": qubit " + std::to_string(g.qubits[k]) + " out of range");
                qubits_ok = false;
            }
        }
        if (qubits_ok && mapping_ok && is_two_qubit(g.kind) &&
            !dev.has_edge(c.physical(g.qubits[0]), c.physical(g.qubits[1]))) {
            out.push_back(where + ": non-adjacent 2q gate on physical qubits " +
                          std::to_string(c.physical(g.qubits[0])) + "," + std::to_string(c.physical(g.qubits[1])));
        }
        if (g.role == ParamRole::Trainable && !trainable.insert(g.index).second) {
            out.push_back(where + ": trainable index " + std::to_string(g.index) + " used twice");
        }
        if (g.role == ParamRole::Embedding && data_dim && g.index >= *data_dim) {
            out.push_back(where + ": embedding index " + std::to_string(g.index) + " exceeds data dimension " +
                          std::to_string(*data_dim));
        }
    }
    for (uint32_t k = 0; k < c.n_trainable(); ++k) {
        if (!trainable.count(k)) {
            out.push_back("trainable index gap at " + std::to_string(k));
            break;
        }
    }

    if (c.measured().empty()) {
        out.emplace_back("measured set is empty");
    }
    std::set<uint32_t> measured;
    for (uint32_t q : c.measured()) {
        if (q >= n) {
            out.push_back("measured qubit " + std::to_string(q) + " out of range");
        } else if (!measured.insert(q).second) {
            out.push_back("measured qubit " + std::to_string(q) + " listed twice");
        }
    }
    return out;
}

}  // namespace qcs
