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
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace qcs {

enum class GateKind : uint8_t { RX, RY, RZ, CX, CZ, H, S, X, Y, Z, U3 };

/// How a gate obtains its rotation angle(s) at execution time.
enum class ParamRole : uint8_t {
    Fixed,      // angles stored on the gate (or none, for non-parametric kinds)
    Trainable,  // angle = theta[index]
    Embedding,  // angle = x[index]
};

bool is_two_qubit(GateKind kind);
/// RX, RY, RZ: single-angle rotations that can be bound to data or parameters.
bool is_rotation(GateKind kind);
bool is_clifford(GateKind kind);

std::string_view gate_name(GateKind kind);
std::optional<GateKind> parse_gate_kind(std::string_view name);

std::string_view role_name(ParamRole role);
std::optional<ParamRole> parse_role(std::string_view name);

struct Gate {
    GateKind kind = GateKind::H;
    std::array<uint32_t, 2> qubits{0, 0};
    ParamRole role = ParamRole::Fixed;
    uint32_t index = 0;                 // trainable or embedding index
    std::array<double, 3> angles{};     // fixed angles; RX/RY/RZ use angles[0]

    uint32_t arity() const { return is_two_qubit(kind) ? 2 : 1; }

    static Gate one(GateKind kind, uint32_t q) { return Gate{kind, {q, q}}; }
    static Gate two(GateKind kind, uint32_t a, uint32_t b) { return Gate{kind, {a, b}}; }
    static Gate fixed_rotation(GateKind kind, uint32_t q, double angle) {
        return Gate{kind, {q, q}, ParamRole::Fixed, 0, {angle, 0, 0}};
    }
    static Gate trainable(GateKind kind, uint32_t q, uint32_t index) {
        return Gate{kind, {q, q}, ParamRole::Trainable, index, {}};
    }
    static Gate embedding(GateKind kind, uint32_t q, uint32_t dim) {
        return Gate{kind, {q, q}, ParamRole::Embedding, dim, {}};
    }
    static Gate u3(uint32_t q, double theta, double phi, double lambda) {
        return Gate{GateKind::U3, {q, q}, ParamRole::Fixed, 0, {theta, phi, lambda}};
    }

    bool operator==(const Gate &other) const = default;
};

/// Returns a description of the first structural problem with the gate, if any.
std::optional<std::string> check_gate(const Gate &gate);

}  // namespace qcs
