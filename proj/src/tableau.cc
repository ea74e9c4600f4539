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

#include "qcs/tableau.h"

#include <bit>
#include <stdexcept>

namespace qcs {

Tableau::Tableau(uint32_t n_qubits)
    : n_(n_qubits),
      words_((n_qubits + 63) / 64),
      xs_((2 * size_t{n_qubits} + 1) * words_, 0),
      zs_((2 * size_t{n_qubits} + 1) * words_, 0),
      r_(2 * size_t{n_qubits} + 1, 0) {
    for (uint32_t i = 0; i < n_; ++i) {
        xs_[i * words_ + (i >> 6)] |= uint64_t{1} << (i & 63);
        zs_[(n_ + i) * words_ + (i >> 6)] |= uint64_t{1} << (i & 63);
    }
}

void Tableau::h(uint32_t q) {
    const size_t w = q >> 6;
    const uint64_t m = uint64_t{1} << (q & 63);
    for (size_t row = 0; row < 2 * size_t{n_}; ++row) {
        uint64_t &xw = xs_[row * words_ + w];
        uint64_t &zw = zs_[row * words_ + w];
        const uint64_t xb = xw & m;
        const uint64_t zb = zw & m;
        r_[row] ^= static_cast<uint8_t>((xb && zb) ? 1 : 0);
        xw = (xw & ~m) | zb;
        zw = (zw & ~m) | xb;
    }
}

void Tableau::s(uint32_t q) {
    const size_t w = q >> 6;
    const uint64_t m = uint64_t{1} << (q & 63);
    for (size_t row = 0; row < 2 * size_t{n_}; ++row) {
        const uint64_t xb = xs_[row * words_ + w] & m;
        uint64_t &zw = zs_[row * words_ + w];
        r_[row] ^= static_cast<uint8_t>((xb && (zw & m)) ? 1 : 0);
        zw ^= xb;
    }
}

void Tableau::x(uint32_t q) {
    // X anticommutes with rows carrying Z on q.
    for (size_t row = 0; row < 2 * size_t{n_}; ++row) r_[row] ^= static_cast<uint8_t>(zbit(row, q));
}

void Tableau::z(uint32_t q) {
    for (size_t row = 0; row < 2 * size_t{n_}; ++row) r_[row] ^= static_cast<uint8_t>(xbit(row, q));
}

void Tableau::y(uint32_t q) {
    for (size_t row = 0; row < 2 * size_t{n_}; ++row) r_[row] ^= static_cast<uint8_t>(xbit(row, q) ^ zbit(row, q));
}

void Tableau::cx(uint32_t control, uint32_t target) {
    const size_t wc = control >> 6;
    const size_t wt = target >> 6;
    const uint64_t mc = uint64_t{1} << (control & 63);
    const uint64_t mt = uint64_t{1} << (target & 63);
    for (size_t row = 0; row < 2 * size_t{n_}; ++row) {
        uint64_t *xr = &xs_[row * words_];
        uint64_t *zr = &zs_[row * words_];
        const bool xa = xr[wc] & mc;
        const bool za = zr[wc] & mc;
        const bool xb = xr[wt] & mt;
        const bool zb = zr[wt] & mt;
        r_[row] ^= static_cast<uint8_t>(xa && zb && (xb == za));
        if (xa) xr[wt] ^= mt;
        if (zb) zr[wc] ^= mc;
    }
}

void Tableau::cz(uint32_t a, uint32_t b) {
    h(b);
    cx(a, b);
    h(b);
}

void Tableau::apply(const Gate &g) {
    const uint32_t q = g.qubits[0];
    if (q >= n_ || (g.arity() == 2 && g.qubits[1] >= n_)) {
        throw std::invalid_argument("tableau: gate qubit out of range");
    }
    switch (g.kind) {
        case GateKind::H: h(q); return;
        case GateKind::S: s(q); return;
        case GateKind::X: x(q); return;
        case GateKind::Y: y(q); return;
        case GateKind::Z: z(q); return;
        case GateKind::CX: cx(g.qubits[0], g.qubits[1]); return;
        case GateKind::CZ: cz(g.qubits[0], g.qubits[1]); return;
        default:
            throw std::invalid_argument("tableau: non-Clifford gate " + std::string(gate_name(g.kind)));
    }
}

void Tableau::row_copy(size_t dst, size_t src) {
    for (size_t w = 0; w < words_; ++w) {
        xs_[dst * words_ + w] = xs_[src * words_ + w];
        zs_[dst * words_ + w] = zs_[src * words_ + w];
    }
    r_[dst] = r_[src];
}

void Tableau::row_clear(size_t row) {
    for (size_t w = 0; w < words_; ++w) {
        xs_[row * words_ + w] = 0;
        zs_[row * words_ + w] = 0;
    }
    r_[row] = 0;
}

void Tableau::rowsum(size_t h, size_t i) {
    // Phase exponent of (row i)(row h), counted in powers of i, mod 4.
    // Per qubit: with a = row i bits and b = row h bits the product picks up
    // +i for XY, YZ, ZX and -i for YX, ZY, XZ; computed word-wise.
    int phase = 2 * r_[h] + 2 * r_[i];
    for (size_t w = 0; w < words_; ++w) {
        const uint64_t x1 = xs_[i * words_ + w];
        const uint64_t z1 = zs_[i * words_ + w];
        const uint64_t x2 = xs_[h * words_ + w];
        const uint64_t z2 = zs_[h * words_ + w];
        // i-row Pauli P1, h-row Pauli P2, product P1 * P2.
        const uint64_t p1x = x1 & ~z1, p1y = x1 & z1, p1z = ~x1 & z1;
        const uint64_t p2x = x2 & ~z2, p2y = x2 & z2, p2z = ~x2 & z2;
        const uint64_t plus = (p1x & p2y) | (p1y & p2z) | (p1z & p2x);
        const uint64_t minus = (p1y & p2x) | (p1z & p2y) | (p1x & p2z);
        phase += std::popcount(plus) - std::popcount(minus);
        xs_[h * words_ + w] = x1 ^ x2;
        zs_[h * words_ + w] = z1 ^ z2;
    }
    phase = ((phase % 4) + 4) % 4;
    // A valid rowsum of commuting generators never yields an odd exponent.
    r_[h] = static_cast<uint8_t>(phase == 2 ? 1 : 0);
}

bool Tableau::is_deterministic(uint32_t q) const {
    for (size_t p = n_; p < 2 * size_t{n_}; ++p) {
        if (xbit(p, q)) return false;
    }
    return true;
}

bool Tableau::deterministic_outcome(uint32_t q) const {
    Tableau scratch = *this;
    const size_t s = 2 * size_t{n_};
    scratch.row_clear(s);
    for (size_t i = 0; i < n_; ++i) {
        if (xbit(i, q)) scratch.rowsum(s, i + n_);
    }
    return scratch.r_[s] != 0;
}

void Tableau::collapse(uint32_t q, bool outcome) {
    size_t p = n_;
    while (p < 2 * size_t{n_} && !xbit(p, q)) ++p;
    if (p == 2 * size_t{n_}) {
        throw std::logic_error("collapse called on a deterministic qubit");
    }
    for (size_t i = 0; i < 2 * size_t{n_}; ++i) {
        if (i != p && xbit(i, q)) rowsum(i, p);
    }
    row_copy(p - n_, p);
    row_clear(p);
    zs_[p * words_ + (q >> 6)] |= uint64_t{1} << (q & 63);
    r_[p] = outcome ? 1 : 0;
}

std::string Tableau::row_string(size_t row) const {
    std::string out(1, r_.at(row) ? '-' : '+');
    for (uint32_t q = 0; q < n_; ++q) {
        const bool xb = xbit(row, q);
        const bool zb = zbit(row, q);
        out.push_back(xb ? (zb ? 'Y' : 'X') : (zb ? 'Z' : '_'));
    }
    return out;
}

bool Tableau::rows_commute(size_t a, size_t b) const {
    int acc = 0;
    for (size_t w = 0; w < words_; ++w) {
        acc += std::popcount((xs_[a * words_ + w] & zs_[b * words_ + w]) ^ (zs_[a * words_ + w] & xs_[b * words_ + w]));
    }
    return acc % 2 == 0;
}

bool Tableau::is_valid_symplectic() const {
    const size_t m = 2 * size_t{n_};
    for (size_t a = 0; a < m; ++a) {
        for (size_t b = a + 1; b < m; ++b) {
            const bool expect_anti = (b == a + n_) && a < n_;
            if (rows_commute(a, b) == expect_anti) return false;
        }
    }
    return true;
}

namespace {

void branch(const Tableau &t, std::span<const uint32_t> measured, size_t k, uint64_t outcome, double prob,
            std::vector<double> &out) {
    if (k == measured.size()) {
        out[outcome] += prob;
        return;
    }
    const uint32_t q = measured[k];
    if (t.is_deterministic(q)) {
        const uint64_t bit = t.deterministic_outcome(q) ? 1 : 0;
        branch(t, measured, k + 1, outcome | (bit << k), prob, out);
        return;
    }
    for (uint64_t bit = 0; bit < 2; ++bit) {
        Tableau child = t;
        child.collapse(q, bit != 0);
        branch(child, measured, k + 1, outcome | (bit << k), 0.5 * prob, out);
    }
}

}  // namespace

ProbDist clifford_dist(const Tableau &t, std::span<const uint32_t> measured) {
    if (measured.empty()) {
        throw std::invalid_argument("measured set is empty");
    }
    if (measured.size() > Tableau::kMaxMeasured) {
        throw std::invalid_argument("clifford_dist: at most " + std::to_string(Tableau::kMaxMeasured) +
                                    " measured qubits are supported");
    }
    for (uint32_t q : measured) {
        if (q >= t.n_qubits()) throw std::invalid_argument("measured qubit out of range");
    }
    std::vector<double> probs(size_t{1} << measured.size(), 0.0);
    branch(t, measured, 0, 0, 1.0, probs);
    return ProbDist(static_cast<uint32_t>(measured.size()), std::move(probs));
}

ProbDist clifford_dist(const Circuit &c) {
    Tableau t(c.n_qubits());
    for (const Gate &g : c.gates()) {
        t.apply(g);
    }
    return clifford_dist(t, c.measured());
}

}  // namespace qcs
