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

#include "qcs/statevector.h"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace qcs {

namespace {

constexpr Amplitude kI{0.0, 1.0};

void check_measured(uint32_t n_qubits, std::span<const uint32_t> measured) {
    if (measured.empty()) {
        throw std::invalid_argument("measured set is empty");
    }
    for (uint32_t q : measured) {
        if (q >= n_qubits) {
            throw std::invalid_argument("measured qubit " + std::to_string(q) + " out of range");
        }
    }
}

}  // namespace

StateVector::StateVector(uint32_t n_qubits) : n_qubits_(n_qubits), amps_(size_t{1} << n_qubits) {
    amps_[0] = 1.0;
}

void StateVector::reset() {
    std::fill(amps_.begin(), amps_.end(), Amplitude{});
    amps_[0] = 1.0;
}

void StateVector::apply_1q(uint32_t q, const Matrix2 &m) {
    const size_t stride = size_t{1} << q;
    const size_t dim = amps_.size();
    Amplitude *a = amps_.data();
    for (size_t hi = 0; hi < dim; hi += 2 * stride) {
        for (size_t i = hi; i < hi + stride; ++i) {
            const Amplitude a0 = a[i];
            const Amplitude a1 = a[i + stride];
            a[i] = m[0] * a0 + m[1] * a1;
            a[i + stride] = m[2] * a0 + m[3] * a1;
        }
    }
}

void StateVector::apply_diagonal_1q(uint32_t q, Amplitude d0, Amplitude d1) {
    const size_t stride = size_t{1} << q;
    const size_t dim = amps_.size();
    Amplitude *a = amps_.data();
    for (size_t hi = 0; hi < dim; hi += 2 * stride) {
        for (size_t i = hi; i < hi + stride; ++i) {
            a[i] *= d0;
            a[i + stride] *= d1;
        }
    }
}

void StateVector::apply_x(uint32_t q) {
    const size_t stride = size_t{1} << q;
    const size_t dim = amps_.size();
    for (size_t hi = 0; hi < dim; hi += 2 * stride) {
        for (size_t i = hi; i < hi + stride; ++i) {
            std::swap(amps_[i], amps_[i + stride]);
        }
    }
}

void StateVector::apply_cx(uint32_t control, uint32_t target) {
    const size_t cbit = size_t{1} << control;
    const size_t tbit = size_t{1} << target;
    for (size_t i = 0; i < amps_.size(); ++i) {
        if ((i & cbit) && !(i & tbit)) {
            std::swap(amps_[i], amps_[i | tbit]);
        }
    }
}

void StateVector::apply_cz(uint32_t a, uint32_t b) {
    const size_t mask = (size_t{1} << a) | (size_t{1} << b);
    for (size_t i = 0; i < amps_.size(); ++i) {
        if ((i & mask) == mask) {
            amps_[i] = -amps_[i];
        }
    }
}

Matrix2 gate_matrix(GateKind kind, const std::array<double, 3> &angles) {
    const double h = 0.5 * angles[0];
    const double c = std::cos(h);
    const double s = std::sin(h);
    const double r = std::numbers::sqrt2 / 2.0;
    switch (kind) {
        case GateKind::RX:
            return {c, -kI * s, -kI * s, c};
        case GateKind::RY:
            return {c, -s, s, c};
        case GateKind::RZ:
            return {std::polar(1.0, -h), 0.0, 0.0, std::polar(1.0, h)};
        case GateKind::H:
            return {r, r, r, -r};
        case GateKind::S:
            return {1.0, 0.0, 0.0, kI};
        case GateKind::X:
            return {0.0, 1.0, 1.0, 0.0};
        case GateKind::Y:
            return {0.0, -kI, kI, 0.0};
        case GateKind::Z:
            return {1.0, 0.0, 0.0, -1.0};
        case GateKind::U3: {
            const double phi = angles[1];
            const double lam = angles[2];
            return {c, -std::polar(1.0, lam) * s, std::polar(1.0, phi) * s, std::polar(1.0, phi + lam) * c};
        }
        case GateKind::CX:
        case GateKind::CZ:
            break;
    }
    throw std::invalid_argument("gate_matrix: " + std::string(gate_name(kind)) + " is not a 1-qubit gate");
}

void StateVector::apply(const Gate &g, const std::array<double, 3> &angles) {
    const uint32_t q = g.qubits[0];
    switch (g.kind) {
        case GateKind::CX:
            apply_cx(g.qubits[0], g.qubits[1]);
            return;
        case GateKind::CZ:
            apply_cz(g.qubits[0], g.qubits[1]);
            return;
        case GateKind::X:
            apply_x(q);
            return;
        case GateKind::Z:
            apply_diagonal_1q(q, 1.0, -1.0);
            return;
        case GateKind::S:
            apply_diagonal_1q(q, 1.0, kI);
            return;
        case GateKind::RZ: {
            const double h = 0.5 * angles[0];
            apply_diagonal_1q(q, std::polar(1.0, -h), std::polar(1.0, h));
            return;
        }
        default:
            apply_1q(q, gate_matrix(g.kind, angles));
    }
}

double StateVector::norm_squared() const {
    double acc = 0.0;
    for (const auto &a : amps_) acc += std::norm(a);
    return acc;
}

void run_into(StateVector &state, const Circuit &c, std::span<const double> x, std::span<const double> theta) {
    state.reset();
    for (const Gate &g : c.gates()) {
        state.apply(g, resolve_angles(g, x, theta));
    }
}

StateVector run(const Circuit &c, std::span<const double> x, std::span<const double> theta,
                const SimOptions &options) {
    if (c.n_qubits() > options.max_qubits) {
        throw std::invalid_argument("circuit has " + std::to_string(c.n_qubits()) + " qubits; statevector cap is " +
                                    std::to_string(options.max_qubits));
    }
    if (theta.size() != c.n_trainable()) {
        throw std::invalid_argument("expected " + std::to_string(c.n_trainable()) + " parameters, got " +
                                    std::to_string(theta.size()));
    }
    if (x.size() < c.embedding_dim()) {
        throw std::invalid_argument("data vector has " + std::to_string(x.size()) + " features; circuit embeds " +
                                    std::to_string(c.embedding_dim()));
    }
    for (const Gate &g : c.gates()) {
        for (uint32_t k = 0; k < g.arity(); ++k) {
            if (g.qubits[k] >= c.n_qubits()) {
                throw std::invalid_argument("gate qubit out of range");
            }
        }
        if (auto err = check_gate(g)) {
            throw std::invalid_argument(*err);
        }
    }
    StateVector state(c.n_qubits());
    run_into(state, c, x, theta);
    return state;
}

void marginal_probs(const StateVector &s, std::span<const uint32_t> measured, std::vector<double> &out) {
    out.assign(size_t{1} << measured.size(), 0.0);
    const auto amps = s.amplitudes();
    for (size_t i = 0; i < amps.size(); ++i) {
        const double p = std::norm(amps[i]);
        if (p == 0.0) continue;
        size_t idx = 0;
        for (size_t k = 0; k < measured.size(); ++k) {
            idx |= ((i >> measured[k]) & 1U) << k;
        }
        out[idx] += p;
    }
}

ProbDist measure_dist(const StateVector &s, std::span<const uint32_t> measured) {
    check_measured(s.n_qubits(), measured);
    std::vector<double> probs;
    marginal_probs(s, measured, probs);
    return ProbDist(static_cast<uint32_t>(measured.size()), std::move(probs));
}

std::vector<double> z_expectations(const StateVector &s, std::span<const uint32_t> measured) {
    check_measured(s.n_qubits(), measured);
    std::vector<double> z(measured.size(), 0.0);
    const auto amps = s.amplitudes();
    for (size_t i = 0; i < amps.size(); ++i) {
        const double p = std::norm(amps[i]);
        for (size_t k = 0; k < measured.size(); ++k) {
            z[k] += ((i >> measured[k]) & 1U) ? -p : p;
        }
    }
    return z;
}

std::vector<double> z_expectations(const ProbDist &p) {
    std::vector<double> z(p.n_bits(), 0.0);
    for (size_t i = 0; i < p.size(); ++i) {
        for (uint32_t k = 0; k < p.n_bits(); ++k) {
            z[k] += ((i >> k) & 1U) ? -p[i] : p[i];
        }
    }
    return z;
}

ProbDist sample(const ProbDist &p, uint64_t shots, Rng &rng) {
    if (shots == 0) {
        throw std::invalid_argument("sample: shots must be >= 1");
    }
    std::vector<double> cdf(p.size());
    double acc = 0.0;
    for (size_t i = 0; i < p.size(); ++i) {
        acc += p[i];
        cdf[i] = acc;
    }
    std::vector<double> counts(p.size(), 0.0);
    for (uint64_t s = 0; s < shots; ++s) {
        const double u = rng.uniform() * acc;
        auto it = std::upper_bound(cdf.begin(), cdf.end(), u);
        size_t idx = std::min<size_t>(static_cast<size_t>(it - cdf.begin()), p.size() - 1);
        // Zero-probability outcomes share their cdf value with a predecessor and are never selected.
        counts[idx] += 1.0;
    }
    for (double &c : counts) c /= static_cast<double>(shots);
    return ProbDist(p.n_bits(), std::move(counts));
}

ProbDist sample(const StateVector &s, std::span<const uint32_t> measured, uint64_t shots, Rng &rng) {
    return sample(measure_dist(s, measured), shots, rng);
}

}  // namespace qcs
