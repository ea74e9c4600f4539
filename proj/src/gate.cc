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

#include "qcs/gate.h"

#include <cmath>

namespace qcs {

namespace {
constexpr std::array<std::string_view, 11> kGateNames{"RX", "RY", "RZ", "CX", "CZ", "H",
                                                      "S",  "X",  "Y",  "Z",  "U3"};
constexpr std::array<std::string_view, 3> kRoleNames{"fixed", "trainable", "embedding"};
}  // namespace

bool is_two_qubit(GateKind kind) { return kind == GateKind::CX || kind == GateKind::CZ; }

bool is_rotation(GateKind kind) {
    return kind == GateKind::RX || kind == GateKind::RY || kind == GateKind::RZ;
}

bool is_clifford(GateKind kind) { return !is_rotation(kind) && kind != GateKind::U3; }

std::string_view gate_name(GateKind kind) { return kGateNames[static_cast<size_t>(kind)]; }

std::optional<GateKind> parse_gate_kind(std::string_view name) {
    for (size_t i = 0; i < kGateNames.size(); ++i) {
        if (kGateNames[i] == name) {
            return static_cast<GateKind>(i);
        }
    }
    return std::nullopt;
}

std::string_view role_name(ParamRole role) { return kRoleNames[static_cast<size_t>(role)]; }

std::optional<ParamRole> parse_role(std::string_view name) {
    for (size_t i = 0; i < kRoleNames.size(); ++i) {
        if (kRoleNames[i] == name) {
            return static_cast<ParamRole>(i);
        }
    }
    return std::nullopt;
}

std::optional<std::string> check_gate(const Gate &gate) {
    if (is_two_qubit(gate.kind) && gate.qubits[0] == gate.qubits[1]) {
        return std::string(gate_name(gate.kind)) + " needs two distinct qubits";
    }
    if (!is_rotation(gate.kind) && gate.role != ParamRole::Fixed) {
        return std::string(gate_name(gate.kind)) + " cannot carry a " +
               std::string(role_name(gate.role)) + " parameter";
    }
    if (gate.role == ParamRole::Fixed) {
        for (double a : gate.angles) {
            if (!std::isfinite(a)) {
                return std::string("non-finite angle on ") + std::string(gate_name(gate.kind));
            }
        }
    }
    return std::nullopt;
}

}  // namespace qcs
