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
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace qcs {

struct QubitCalibration {
    double t1_us = 100.0;
    double t2_us = 100.0;
    double readout_fidelity = 1.0;
    double err_1q = 0.0;

    bool operator==(const QubitCalibration &) const = default;
};

struct Coupler {
    uint32_t q0 = 0;
    uint32_t q1 = 0;
    double gate_fidelity = 1.0;

    bool operator==(const Coupler &) const = default;
};

/// Qubit connectivity graph annotated with calibration data.
///
/// Construction validates the graph (simple, in-range edges) and calibration
/// ranges and throws std::invalid_argument on violation. Instances are
/// immutable afterwards.
class DeviceModel {
  public:
    DeviceModel(std::string name, std::vector<QubitCalibration> qubits, std::vector<Coupler> edges);

    const std::string &name() const { return name_; }
    uint32_t n_qubits() const { return static_cast<uint32_t>(qubits_.size()); }
    const std::vector<QubitCalibration> &qubits() const { return qubits_; }
    const QubitCalibration &qubit(uint32_t q) const { return qubits_.at(q); }
    const std::vector<Coupler> &edges() const { return edges_; }
    const std::vector<uint32_t> &neighbors(uint32_t q) const { return adjacency_.at(q); }

    bool has_edge(uint32_t a, uint32_t b) const;
    /// Index into edges() of the undirected edge {a, b}.
    std::optional<size_t> edge_index(uint32_t a, uint32_t b) const;

    double max_t1() const;
    double max_t2() const;

    bool operator==(const DeviceModel &other) const {
        return name_ == other.name_ && qubits_ == other.qubits_ && edges_ == other.edges_;
    }

  private:
    std::string name_;
    std::vector<QubitCalibration> qubits_;
    std::vector<Coupler> edges_;
    std::vector<std::vector<uint32_t>> adjacency_;
    std::map<std::pair<uint32_t, uint32_t>, size_t> edge_lookup_;
};

enum class Topology { Line, Ring, Grid, HeavyHex };

/// Median error magnitudes used to draw synthetic calibrations. The defaults
/// sit at the level of current superconducting devices.
struct ErrorMagnitudes {
    double readout_error = 2e-2;
    double err_1q = 2.5e-4;
    double err_2q = 1e-2;
    double t1_us = 100.0;
    double t2_us = 80.0;
    /// Log-normal spread (sigma of the natural log) applied to every draw.
    double spread = 0.5;
};

struct SyntheticDeviceSpec {
    Topology topology = Topology::Grid;
    uint32_t rows = 3;  // Line/Ring: qubit count is rows * cols
    uint32_t cols = 3;
    uint64_t seed = 1;
    ErrorMagnitudes magnitudes{};
};

/// Builds a device with the requested topology and randomly drawn calibrations.
DeviceModel make_synthetic_device(const SyntheticDeviceSpec &spec);

/// Copy of `dev` with every error rate (readout, 1q, 2q) multiplied by `factor`,
/// clamped to [0, 1].
DeviceModel scale_errors(const DeviceModel &dev, double factor);

/// Copy of `dev` with all error rates set to zero.
DeviceModel noiseless_copy(const DeviceModel &dev);

std::optional<Topology> parse_topology(const std::string &name);

}  // namespace qcs
