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

#include "qcs/noise.h"

#include <stdexcept>
#include <string>

#include "qcs/statevector.h"
#include "qcs/tableau.h"

namespace qcs {

namespace {

constexpr GateKind kPauliGate[4] = {GateKind::H, GateKind::X, GateKind::Y, GateKind::Z};  // [0] unused

struct Frame {
    uint64_t x = 0;
    uint64_t z = 0;

    void pauli(uint32_t q, uint8_t code) {
        const uint64_t m = uint64_t{1} << q;
        if (code == 1 || code == 2) x ^= m;
        if (code == 2 || code == 3) z ^= m;
    }
};

/// Pushes the frame through a Clifford gate (Heisenberg update of a Pauli).
void propagate(Frame &f, const Gate &g) {
    const uint32_t a = g.qubits[0];
    const uint64_t ma = uint64_t{1} << a;
    switch (g.kind) {
        case GateKind::H: {
            const uint64_t xb = f.x & ma;
            const uint64_t zb = f.z & ma;
            f.x = (f.x & ~ma) | zb;
            f.z = (f.z & ~ma) | xb;
            return;
        }
        case GateKind::S:
            if (f.x & ma) f.z ^= ma;
            return;
        case GateKind::CX: {
            const uint32_t b = g.qubits[1];
            const uint64_t mb = uint64_t{1} << b;
            if (f.x & ma) f.x ^= mb;
            if (f.z & mb) f.z ^= ma;
            return;
        }
        case GateKind::CZ: {
            const uint32_t b = g.qubits[1];
            const uint64_t mb = uint64_t{1} << b;
            const bool xa = f.x & ma;
            const bool xb = f.x & mb;
            if (xa) f.z ^= mb;
            if (xb) f.z ^= ma;
            return;
        }
        default:
            return;  // Paulis commute with the frame up to sign
    }
}

void check_trajectory_args(uint32_t trajectories) {
    if (trajectories < 1) {
        throw std::invalid_argument("noisy_dist: trajectory count must be >= 1");
    }
}

}  // namespace

NoiseSpec make_noise_spec(const Circuit &c, const DeviceModel &dev) {
    NoiseSpec spec;
    spec.gate_error.reserve(c.gates().size());
    auto physical = [&](uint32_t q) {
        const uint32_t p = c.physical(q);
        if (p >= dev.n_qubits()) {
            throw std::invalid_argument("no calibration for physical qubit " + std::to_string(p));
        }
        return p;
    };
    for (const Gate &g : c.gates()) {
        if (is_two_qubit(g.kind)) {
            const uint32_t a = physical(g.qubits[0]);
            const uint32_t b = physical(g.qubits[1]);
            auto e = dev.edge_index(a, b);
            if (!e) {
                throw std::invalid_argument("no calibration for edge " + std::to_string(a) + "-" + std::to_string(b));
            }
            spec.gate_error.push_back(1.0 - dev.edges()[*e].gate_fidelity);
        } else {
            spec.gate_error.push_back(dev.qubit(physical(g.qubits[0])).err_1q);
        }
    }
    for (uint32_t q : c.measured()) {
        spec.readout_flip.push_back(1.0 - dev.qubit(physical(q)).readout_fidelity);
    }
    return spec;
}

void sample_error_pattern(const Circuit &c, const NoiseSpec &spec, Rng &rng, ErrorPattern &out) {
    const auto &gates = c.gates();
    out.assign(gates.size(), 0);
    for (size_t i = 0; i < gates.size(); ++i) {
        const double p = spec.gate_error[i];
        if (p <= 0.0 || rng.uniform() >= p) continue;
        out[i] = static_cast<uint8_t>(1 + rng.below(is_two_qubit(gates[i].kind) ? 15 : 3));
    }
}

Circuit insert_errors(const Circuit &c, const ErrorPattern &pattern) {
    std::vector<Gate> gates;
    gates.reserve(c.gates().size() * 2);
    for (size_t i = 0; i < c.gates().size(); ++i) {
        const Gate &g = c.gates()[i];
        gates.push_back(g);
        const uint8_t code = pattern[i];
        if (code == 0) continue;
        if (is_two_qubit(g.kind)) {
            if (code & 3) gates.push_back(Gate::one(kPauliGate[code & 3], g.qubits[0]));
            if (code >> 2) gates.push_back(Gate::one(kPauliGate[code >> 2], g.qubits[1]));
        } else {
            gates.push_back(Gate::one(kPauliGate[code], g.qubits[0]));
        }
    }
    return c.with_gates(std::move(gates));
}

ProbDist readout_convolve(const ProbDist &p, std::span<const double> flips) {
    if (flips.size() != p.n_bits()) {
        throw std::invalid_argument("readout_convolve: " + std::to_string(flips.size()) + " flip rates for " +
                                    std::to_string(p.n_bits()) + " bits");
    }
    std::vector<double> probs(p.probs().begin(), p.probs().end());
    for (size_t k = 0; k < flips.size(); ++k) {
        const double f = flips[k];
        if (f < 0.0 || f > 1.0) {
            throw std::invalid_argument("readout flip probability outside [0,1]");
        }
        if (f == 0.0) continue;
        const size_t bit = size_t{1} << k;
        for (size_t i = 0; i < probs.size(); ++i) {
            if (i & bit) continue;
            const double a = probs[i];
            const double b = probs[i | bit];
            probs[i] = (1.0 - f) * a + f * b;
            probs[i | bit] = f * a + (1.0 - f) * b;
        }
    }
    return ProbDist(p.n_bits(), std::move(probs));
}

ProbDist noisy_dist(const Circuit &c, const NoiseSpec &spec, std::optional<Binding> binding, uint32_t trajectories,
                    uint32_t shots, Rng &rng) {
    check_trajectory_args(trajectories);
    if (spec.gate_error.size() != c.gates().size() || spec.readout_flip.size() != c.measured().size()) {
        throw std::invalid_argument("noise spec does not match circuit");
    }
    const uint64_t base_seed = rng();
    const auto &measured = c.measured();
    const size_t n_out = size_t{1} << measured.size();
    std::vector<double> acc(n_out, 0.0);
    ErrorPattern pattern;

    if (c.all_clifford()) {
        if (c.n_qubits() > 64) {
            throw std::invalid_argument("noisy_dist: Pauli frames support at most 64 qubits");
        }
        // Pauli errors keep the state a stabilizer state with the same group up
        // to signs, so each trajectory's distribution is the ideal one with the
        // measured bits flipped by the X-part of the propagated error frame.
        const ProbDist ideal = clifford_dist(c);
        std::vector<double> mask_weight(n_out, 0.0);
        for (uint32_t t = 0; t < trajectories; ++t) {
            Rng traj(derive_seed(base_seed, "trajectory", {t}));
            sample_error_pattern(c, spec, traj, pattern);
            Frame f;
            for (size_t i = 0; i < c.gates().size(); ++i) {
                const Gate &g = c.gates()[i];
                propagate(f, g);
                const uint8_t code = pattern[i];
                if (code == 0) continue;
                if (is_two_qubit(g.kind)) {
                    f.pauli(g.qubits[0], code & 3);
                    f.pauli(g.qubits[1], code >> 2);
                } else {
                    f.pauli(g.qubits[0], code);
                }
            }
            size_t mask = 0;
            for (size_t k = 0; k < measured.size(); ++k) {
                mask |= ((f.x >> measured[k]) & 1U) << k;
            }
            mask_weight[mask] += 1.0;
        }
        for (size_t mask = 0; mask < n_out; ++mask) {
            if (mask_weight[mask] == 0.0) continue;
            for (size_t i = 0; i < n_out; ++i) {
                acc[i ^ mask] += mask_weight[mask] * ideal[i];
            }
        }
    } else {
        if (!binding) {
            throw std::invalid_argument("noisy_dist: non-Clifford circuit needs an (x, theta) binding");
        }
        // Validates the binding once; trajectories then reuse one buffer.
        StateVector state = run(c, binding->x, binding->theta, SimOptions{.max_qubits = 26});
        std::vector<double> probs;
        for (uint32_t t = 0; t < trajectories; ++t) {
            Rng traj(derive_seed(base_seed, "trajectory", {t}));
            sample_error_pattern(c, spec, traj, pattern);
            state.reset();
            for (size_t i = 0; i < c.gates().size(); ++i) {
                const Gate &g = c.gates()[i];
                state.apply(g, resolve_angles(g, binding->x, binding->theta));
                const uint8_t code = pattern[i];
                if (code == 0) continue;
                if (is_two_qubit(g.kind)) {
                    if (code & 3) state.apply(Gate::one(kPauliGate[code & 3], g.qubits[0]), {});
                    if (code >> 2) state.apply(Gate::one(kPauliGate[code >> 2], g.qubits[1]), {});
                } else {
                    state.apply(Gate::one(kPauliGate[code], g.qubits[0]), {});
                }
            }
            marginal_probs(state, measured, probs);
            for (size_t i = 0; i < n_out; ++i) acc[i] += probs[i];
        }
    }

    const double inv = 1.0 / static_cast<double>(trajectories);
    double total = 0.0;
    for (double &a : acc) {
        a *= inv;
        total += a;
    }
    for (double &a : acc) a /= total;
    ProbDist out = readout_convolve(ProbDist(static_cast<uint32_t>(measured.size()), std::move(acc)), spec.readout_flip);
    if (shots > 0) {
        Rng shot_rng(derive_seed(base_seed, "shots"));
        return sample(out, shots, shot_rng);
    }
    return out;
}

ProbDist noisy_dist(const Circuit &c, const DeviceModel &dev, std::optional<Binding> binding, const RunConfig &cfg,
                    Rng &rng) {
    return noisy_dist(c, make_noise_spec(c, dev), binding, cfg.trajectories, cfg.shots, rng);
}

}  // namespace qcs
