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

#include "qcs/json_io.h"

#include <fstream>
#include <sstream>

namespace qcs {

using nlohmann::json;

json device_to_json(const DeviceModel &dev) {
    json qubits = json::array();
    for (const auto &q : dev.qubits()) {
        qubits.push_back({{"t1_us", q.t1_us},
                          {"t2_us", q.t2_us},
                          {"readout_fidelity", q.readout_fidelity},
                          {"err_1q", q.err_1q}});
    }
    json edges = json::array();
    for (const auto &e : dev.edges()) edges.push_back({{"q0", e.q0}, {"q1", e.q1}, {"gate_fidelity", e.gate_fidelity}});
    return {{"name", dev.name()}, {"n_qubits", dev.n_qubits()}, {"qubits", qubits}, {"edges", edges}};
}

DeviceModel device_from_json(const json &j) {
    try {
        std::vector<QubitCalibration> qubits;
        for (const auto &q : j.at("qubits")) {
            qubits.push_back({q.at("t1_us").get<double>(), q.at("t2_us").get<double>(),
                              q.at("readout_fidelity").get<double>(), q.at("err_1q").get<double>()});
        }
        if (j.contains("n_qubits") && j.at("n_qubits").get<size_t>() != qubits.size()) {
            throw std::invalid_argument("device: n_qubits disagrees with the qubit list");
        }
        std::vector<Coupler> edges;
        for (const auto &e : j.at("edges")) {
            edges.push_back({e.at("q0").get<uint32_t>(), e.at("q1").get<uint32_t>(),
                             e.at("gate_fidelity").get<double>()});
        }
        return DeviceModel(j.value("name", std::string("device")), std::move(qubits), std::move(edges));
    } catch (const json::exception &e) {
        throw std::invalid_argument(std::string("device: ") + e.what());
    }
}

json circuit_to_json(const Circuit &c) {
    json gates = json::array();
    for (const auto &g : c.gates()) {
        json jg = {{"kind", std::string(gate_name(g.kind))}, {"role", std::string(role_name(g.role))}};
        jg["qubits"] = g.arity() == 2 ? json::array({g.qubits[0], g.qubits[1]}) : json::array({g.qubits[0]});
        if (g.role != ParamRole::Fixed) {
            jg["value"] = g.index;
        } else if (g.kind == GateKind::U3) {
            jg["value"] = json::array({g.angles[0], g.angles[1], g.angles[2]});
        } else if (is_rotation(g.kind)) {
            jg["value"] = g.angles[0];
        }
        gates.push_back(std::move(jg));
    }
    return {{"n_qubits", c.n_qubits()}, {"mapping", c.mapping()}, {"gates", gates}, {"measured", c.measured()}};
}

Circuit circuit_from_json(const json &j) {
    try {
        std::vector<Gate> gates;
        for (const auto &jg : j.at("gates")) {
            const auto name = jg.at("kind").get<std::string>();
            const auto kind = parse_gate_kind(name);
            if (!kind) throw std::invalid_argument("circuit: unknown gate kind '" + name + "'");
            const auto role_text = jg.value("role", std::string("fixed"));
            const auto role = parse_role(role_text);
            if (!role) throw std::invalid_argument("circuit: unknown role '" + role_text + "'");
            const auto qs = jg.at("qubits").get<std::vector<uint32_t>>();
            Gate g;
            g.kind = *kind;
            g.role = *role;
            if (qs.size() != g.arity()) throw std::invalid_argument("circuit: gate " + name + " has wrong qubit count");
            g.qubits = {qs[0], qs.size() == 2 ? qs[1] : qs[0]};
            if (g.role != ParamRole::Fixed) {
                g.index = jg.at("value").get<uint32_t>();
            } else if (g.kind == GateKind::U3) {
                const auto a = jg.at("value").get<std::vector<double>>();
                if (a.size() != 3) throw std::invalid_argument("circuit: U3 needs three angles");
                g.angles = {a[0], a[1], a[2]};
            } else if (is_rotation(g.kind)) {
                g.angles[0] = jg.at("value").get<double>();
            }
            if (const auto problem = check_gate(g)) throw std::invalid_argument("circuit: " + *problem);
            gates.push_back(g);
        }
        return Circuit(j.at("n_qubits").get<uint32_t>(), std::move(gates),
                       j.at("measured").get<std::vector<uint32_t>>(),
                       j.value("mapping", std::vector<uint32_t>{}));
    } catch (const json::exception &e) {
        throw std::invalid_argument(std::string("circuit: ") + e.what());
    }
}

json read_json_file(const std::filesystem::path &path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open " + path.string());
    try {
        return json::parse(in);
    } catch (const json::parse_error &e) {
        throw IoError(path.string() + ": " + e.what());
    }
}

void write_text_file(const std::filesystem::path &path, const std::string &text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot write " + path.string());
    out << text;
    if (!out) throw IoError("write failed for " + path.string());
}

void write_json_file(const std::filesystem::path &path, const json &j) {
    write_text_file(path, j.dump(2) + "\n");
}

DeviceModel load_device(const std::filesystem::path &path) { return device_from_json(read_json_file(path)); }

std::vector<Circuit> load_circuits(const std::filesystem::path &path) {
    const auto j = read_json_file(path);
    std::vector<Circuit> out;
    if (j.is_array()) {
        for (const auto &c : j) out.push_back(circuit_from_json(c.contains("circuit") ? c.at("circuit") : c));
    } else {
        out.push_back(circuit_from_json(j));
    }
    return out;
}

}  // namespace qcs
