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

#include "qcs/device.h"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

#include "qcs/rng.h"

namespace qcs {

namespace {

bool in_unit(double v) { return v >= 0.0 && v <= 1.0; }

std::pair<uint32_t, uint32_t> key(uint32_t a, uint32_t b) { return {std::min(a, b), std::max(a, b)}; }

}  // namespace

DeviceModel::DeviceModel(std::string name, std::vector<QubitCalibration> qubits, std::vector<Coupler> edges)
    : name_(std::move(name)), qubits_(std::move(qubits)), edges_(std::move(edges)), adjacency_(qubits_.size()) {
    if (qubits_.empty()) {
        throw std::invalid_argument("device has no qubits");
    }
    for (size_t q = 0; q < qubits_.size(); ++q) {
        const auto &c = qubits_[q];
        if (!(c.t1_us > 0.0) || !(c.t2_us > 0.0)) {
            throw std::invalid_argument("qubit " + std::to_string(q) + ": T1 and T2 must be positive");
        }
        if (!in_unit(c.readout_fidelity) || !in_unit(c.err_1q)) {
            throw std::invalid_argument("qubit " + std::to_string(q) + ": fidelities must lie in [0,1]");
        }
    }
    for (size_t i = 0; i < edges_.size(); ++i) {
        const auto &e = edges_[i];
        if (e.q0 >= qubits_.size() || e.q1 >= qubits_.size()) {
            throw std::invalid_argument("edge " + std::to_string(i) + " references a missing qubit");
        }
        if (e.q0 == e.q1) {
            throw std::invalid_argument("edge " + std::to_string(i) + " is a self-loop");
        }
        if (!in_unit(e.gate_fidelity)) {
            throw std::invalid_argument("edge " + std::to_string(i) + ": gate fidelity must lie in [0,1]");
        }
        if (!edge_lookup_.emplace(key(e.q0, e.q1), i).second) {
            throw std::invalid_argument("duplicate edge " + std::to_string(e.q0) + "-" + std::to_string(e.q1));
        }
        adjacency_[e.q0].push_back(e.q1);
        adjacency_[e.q1].push_back(e.q0);
    }
    for (auto &adj : adjacency_) {
        std::sort(adj.begin(), adj.end());
    }
}

bool DeviceModel::has_edge(uint32_t a, uint32_t b) const { return edge_lookup_.count(key(a, b)) > 0; }

std::optional<size_t> DeviceModel::edge_index(uint32_t a, uint32_t b) const {
    auto it = edge_lookup_.find(key(a, b));
    if (it == edge_lookup_.end()) {
        return std::nullopt;
    }
    return it->second;
}

double DeviceModel::max_t1() const {
    double m = 0.0;
    for (const auto &q : qubits_) m = std::max(m, q.t1_us);
    return m;
}

double DeviceModel::max_t2() const {
    double m = 0.0;
    for (const auto &q : qubits_) m = std::max(m, q.t2_us);
    return m;
}

std::optional<Topology> parse_topology(const std::string &name) {
    if (name == "line") return Topology::Line;
    if (name == "ring") return Topology::Ring;
    if (name == "grid") return Topology::Grid;
    if (name == "heavy_hex") return Topology::HeavyHex;
    return std::nullopt;
}

namespace {

std::vector<std::pair<uint32_t, uint32_t>> topology_edges(const SyntheticDeviceSpec &spec, uint32_t &n_qubits) {
    std::vector<std::pair<uint32_t, uint32_t>> edges;
    const uint32_t r = spec.rows;
    const uint32_t c = spec.cols;
    switch (spec.topology) {
        case Topology::Line:
        case Topology::Ring:
            n_qubits = r * c;
            for (uint32_t q = 0; q + 1 < n_qubits; ++q) edges.emplace_back(q, q + 1);
            if (spec.topology == Topology::Ring && n_qubits > 2) edges.emplace_back(n_qubits - 1, 0);
            break;
        case Topology::Grid:
            n_qubits = r * c;
            for (uint32_t i = 0; i < r; ++i) {
                for (uint32_t j = 0; j < c; ++j) {
                    uint32_t q = i * c + j;
                    if (j + 1 < c) edges.emplace_back(q, q + 1);
                    if (i + 1 < r) edges.emplace_back(q, q + c);
                }
            }
            break;
        case Topology::HeavyHex: {
            // Rows of `cols` qubits joined by single bridge qubits at alternating
            // columns, the pattern of IBM heavy-hex lattices.
            n_qubits = r * c;
            for (uint32_t i = 0; i < r; ++i) {
                for (uint32_t j = 0; j + 1 < c; ++j) edges.emplace_back(i * c + j, i * c + j + 1);
            }
            for (uint32_t i = 0; i + 1 < r; ++i) {
                for (uint32_t j = (i % 2 == 0) ? 0 : 2; j < c; j += 4) {
                    uint32_t bridge = n_qubits++;
                    edges.emplace_back(i * c + j, bridge);
                    edges.emplace_back(bridge, (i + 1) * c + j);
                }
            }
            break;
        }
    }
    return edges;
}

}  // namespace

DeviceModel make_synthetic_device(const SyntheticDeviceSpec &spec) {
    if (spec.rows == 0 || spec.cols == 0) {
        throw std::invalid_argument("synthetic device needs rows, cols >= 1");
    }
    uint32_t n = 0;
    auto pairs = topology_edges(spec, n);
    Rng rng(derive_seed(spec.seed, "synthetic-device"));
    std::normal_distribution<double> spread(0.0, spec.magnitudes.spread);
    auto draw = [&](double median) { return median * std::exp(spread(rng)); };
    const auto &m = spec.magnitudes;

    std::vector<QubitCalibration> qubits(n);
    for (auto &q : qubits) {
        q.t1_us = draw(m.t1_us);
        q.t2_us = std::min(draw(m.t2_us), 2.0 * q.t1_us);
        q.readout_fidelity = 1.0 - std::clamp(draw(m.readout_error), 0.0, 0.5);
        q.err_1q = std::clamp(draw(m.err_1q), 0.0, 0.5);
    }
    std::vector<Coupler> edges;
    edges.reserve(pairs.size());
    for (auto [a, b] : pairs) {
        edges.push_back({a, b, 1.0 - std::clamp(draw(m.err_2q), 0.0, 0.5)});
    }
    static constexpr const char *kNames[] = {"line", "ring", "grid", "heavy_hex"};
    std::string name = std::string("synthetic-") + kNames[static_cast<int>(spec.topology)] + "-" +
                       std::to_string(n) + "q-s" + std::to_string(spec.seed);
    return DeviceModel(std::move(name), std::move(qubits), std::move(edges));
}

DeviceModel scale_errors(const DeviceModel &dev, double factor) {
    auto qubits = dev.qubits();
    for (auto &q : qubits) {
        q.readout_fidelity = 1.0 - std::clamp((1.0 - q.readout_fidelity) * factor, 0.0, 1.0);
        q.err_1q = std::clamp(q.err_1q * factor, 0.0, 1.0);
    }
    auto edges = dev.edges();
    for (auto &e : edges) {
        e.gate_fidelity = 1.0 - std::clamp((1.0 - e.gate_fidelity) * factor, 0.0, 1.0);
    }
    return DeviceModel(dev.name(), std::move(qubits), std::move(edges));
}

DeviceModel noiseless_copy(const DeviceModel &dev) { return scale_errors(dev, 0.0); }

}  // namespace qcs
