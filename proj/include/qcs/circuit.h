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
#include <string>
#include <vector>

#include "qcs/device.h"
#include "qcs/gate.h"

namespace qcs {

/// Ordered gate list over logical qubits plus the measured-qubit set.
///
/// Bit convention: measured()[k] is reported as bit k of an outcome index
/// (little-endian, bit 0 least significant). mapping()[q] is the physical
/// device qubit hosting logical qubit q; simulators only see logical indices.
class Circuit {
  public:
    Circuit() = default;
    Circuit(uint32_t n_qubits, std::vector<Gate> gates, std::vector<uint32_t> measured,
            std::vector<uint32_t> mapping = {});

    uint32_t n_qubits() const { return n_qubits_; }
    const std::vector<Gate> &gates() const { return gates_; }
    const std::vector<uint32_t> &measured() const { return measured_; }
    const std::vector<uint32_t> &mapping() const { return mapping_; }

    /// One past the largest trainable index (0 when there are none).
    uint32_t n_trainable() const { return n_trainable_; }
    uint32_t n_embedding() const { return n_embedding_; }
    /// One past the largest embedded data dimension (0 when there are none).
    uint32_t embedding_dim() const { return embedding_dim_; }

    bool all_clifford() const;
    size_t count_two_qubit() const;

    /// Physical qubit of logical q (identity when no mapping is stored).
    uint32_t physical(uint32_t q) const { return mapping_.empty() ? q : mapping_[q]; }

    Circuit with_gates(std::vector<Gate> gates) const {
        return Circuit(n_qubits_, std::move(gates), measured_, mapping_);
    }

    bool operator==(const Circuit &other) const {
        return n_qubits_ == other.n_qubits_ && gates_ == other.gates_ && measured_ == other.measured_ &&
               mapping_ == other.mapping_;
    }

  private:
    uint32_t n_qubits_ = 0;
    std::vector<Gate> gates_;
    std::vector<uint32_t> measured_;
    std::vector<uint32_t> mapping_;
    uint32_t n_trainable_ = 0;
    uint32_t n_embedding_ = 0;
    uint32_t embedding_dim_ = 0;
};

/// Lists every structural violation of `c` against `dev`; empty means valid.
/// `data_dim`, when given, bounds the embedding indices.
std::vector<std::string> validate_circuit(const Circuit &c, const DeviceModel &dev,
                                          std::optional<uint32_t> data_dim = std::nullopt);

}  // namespace qcs
