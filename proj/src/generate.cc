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

#include "qcs/generate.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>
#include <stdexcept>

namespace qcs {

std::vector<std::string> CircuitConfig::validate(const DeviceModel &dev) const {
    std::vector<std::string> out;
    if (n_q < 1) out.emplace_back("n_q: must be >= 1");
    if (n_q > dev.n_qubits()) {
        out.push_back("n_q: " + std::to_string(n_q) + " exceeds device size " + std::to_string(dev.n_qubits()));
    }
    if (n_meas < 1 || n_meas > n_q) out.emplace_back("n_meas: must lie in [1, n_q]");
    if (n_params + n_embeds < 1) out.emplace_back("n_params: circuit needs at least one parametric gate");
    if (n_embeds > 0 && data_dim < 1) out.emplace_back("data_dim: must be >= 1 when n_embeds > 0");
    return out;
}

namespace {

Subgraph induced(const DeviceModel &dev, std::vector<uint32_t> vertices) {
    std::sort(vertices.begin(), vertices.end());
    Subgraph s{std::move(vertices), {}};
    for (size_t e = 0; e < dev.edges().size(); ++e) {
        const auto &edge = dev.edges()[e];
        if (std::binary_search(s.vertices.begin(), s.vertices.end(), edge.q0) &&
            std::binary_search(s.vertices.begin(), s.vertices.end(), edge.q1)) {
            s.edges.push_back(e);
        }
    }
    return s;
}

size_t largest_component(const DeviceModel &dev) {
    std::vector<bool> seen(dev.n_qubits(), false);
    size_t best = 0;
    for (uint32_t start = 0; start < dev.n_qubits(); ++start) {
        if (seen[start]) continue;
        size_t size = 0;
        std::vector<uint32_t> stack{start};
        seen[start] = true;
        while (!stack.empty()) {
            uint32_t q = stack.back();
            stack.pop_back();
            ++size;
            for (uint32_t nb : dev.neighbors(q)) {
                if (!seen[nb]) {
                    seen[nb] = true;
                    stack.push_back(nb);
                }
            }
        }
        best = std::max(best, size);
    }
    return best;
}

/// Grows a connected set from `seed` by adding a uniformly chosen frontier
/// vertex each step. Returns an empty vector if the component is too small.
std::vector<uint32_t> grow(const DeviceModel &dev, uint32_t seed, uint32_t n_q, Rng &rng) {
    std::vector<uint32_t> chosen{seed};
    std::vector<bool> in_set(dev.n_qubits(), false);
    in_set[seed] = true;
    std::vector<uint32_t> frontier;
    auto extend_frontier = [&](uint32_t q) {
        for (uint32_t nb : dev.neighbors(q)) {
            if (!in_set[nb] && std::find(frontier.begin(), frontier.end(), nb) == frontier.end()) {
                frontier.push_back(nb);
            }
        }
    };
    extend_frontier(seed);
    while (chosen.size() < n_q) {
        if (frontier.empty()) return {};
        const size_t pick = rng.below(frontier.size());
        const uint32_t q = frontier[pick];
        frontier.erase(frontier.begin() + static_cast<std::ptrdiff_t>(pick));
        in_set[q] = true;
        chosen.push_back(q);
        extend_frontier(q);
    }
    return chosen;
}

}  // namespace

std::vector<Subgraph> sample_subgraphs(const DeviceModel &dev, uint32_t n_q, uint32_t k, Rng &rng) {
    if (k < 1) throw std::invalid_argument("sample_subgraphs: k must be >= 1");
    if (n_q < 1 || n_q > dev.n_qubits() || largest_component(dev) < n_q) {
        throw std::invalid_argument("no connected subgraph with " + std::to_string(n_q) + " qubits on device " +
                                    dev.name());
    }
    std::vector<Subgraph> out;
    std::set<std::vector<uint32_t>> seen;
    // Seeds in undersized components fail; keep drawing until k successes or
    // a generous attempt budget runs out (at least one success is guaranteed
    // eventually since a large-enough component exists).
    uint32_t successes = 0;
    for (uint64_t attempt = 0; successes < k && (attempt < 64ULL * k || out.empty()); ++attempt) {
        auto vertices = grow(dev, static_cast<uint32_t>(rng.below(dev.n_qubits())), n_q, rng);
        if (vertices.empty()) continue;
        ++successes;
        Subgraph s = induced(dev, std::move(vertices));
        if (seen.insert(s.vertices).second) out.push_back(std::move(s));
    }
    return out;
}

std::vector<double> softmax(std::span<const double> scores, double tau) {
    if (scores.empty()) throw std::invalid_argument("softmax: empty score vector");
    if (!(tau > 0.0)) throw std::invalid_argument("softmax: tau must be positive");
    const double top = *std::max_element(scores.begin(), scores.end());
    std::vector<double> w(scores.size());
    double sum = 0.0;
    for (size_t i = 0; i < scores.size(); ++i) {
        w[i] = std::exp((scores[i] - top) / tau);
        sum += w[i];
    }
    for (double &v : w) v /= sum;
    return w;
}

size_t softmax_choose(std::span<const double> scores, double tau, Rng &rng) {
    const auto w = softmax(scores, tau);
    const double u = rng.uniform();
    double acc = 0.0;
    for (size_t i = 0; i < w.size(); ++i) {
        acc += w[i];
        if (u < acc) return i;
    }
    // Rounding left u above the final partial sum; take the last nonzero weight.
    for (size_t i = w.size(); i-- > 0;) {
        if (w[i] > 0.0) return i;
    }
    return w.size() - 1;
}

double subgraph_score(const DeviceModel &dev, const Subgraph &s) {
    double readout = 0.0;
    for (uint32_t q : s.vertices) readout += dev.qubit(q).readout_fidelity;
    readout /= static_cast<double>(s.vertices.size());
    if (s.edges.empty()) return readout;
    double fid = 0.0;
    for (size_t e : s.edges) fid += dev.edges()[e].gate_fidelity;
    fid /= static_cast<double>(s.edges.size());
    return 0.5 * fid + 0.5 * readout;
}

Circuit generate_candidate(const DeviceModel &dev, const CircuitConfig &conf, const RunConfig &cfg, Rng &rng) {
    if (auto errs = conf.validate(dev); !errs.empty()) {
        throw std::invalid_argument("circuit config: " + errs.front());
    }

    // (1) subgraph
    const auto subgraphs = sample_subgraphs(dev, conf.n_q, cfg.n_subgraph_samples, rng);
    std::vector<double> sub_scores;
    for (const auto &s : subgraphs) sub_scores.push_back(subgraph_score(dev, s));
    const Subgraph &sub = subgraphs[softmax_choose(sub_scores, cfg.tau, rng)];

    // Logical qubit i lives on sub.vertices[i].
    const std::vector<uint32_t> &mapping = sub.vertices;
    auto logical = [&](uint32_t physical) {
        return static_cast<uint32_t>(std::lower_bound(mapping.begin(), mapping.end(), physical) - mapping.begin());
    };

    // (2) gate list: parametric 1q rotations plus a fixed share of 2q gates.
    constexpr GateKind kRot[3] = {GateKind::RX, GateKind::RY, GateKind::RZ};
    constexpr GateKind kTwo[2] = {GateKind::CX, GateKind::CZ};
    const uint32_t n_rot = conf.n_params + conf.n_embeds;
    const uint32_t n_two =
        sub.edges.empty() ? 0 : static_cast<uint32_t>(std::floor(cfg.two_q_fraction * static_cast<double>(n_rot)));
    std::vector<GateKind> ops;
    ops.reserve(n_rot + n_two);
    for (uint32_t i = 0; i < n_rot; ++i) ops.push_back(kRot[rng.below(3)]);
    for (uint32_t i = 0; i < n_two; ++i) ops.push_back(kTwo[rng.below(2)]);
    std::shuffle(ops.begin(), ops.end(), rng);

    // (3) placement
    const double max_t1 = dev.max_t1();
    const double max_t2 = dev.max_t2();
    std::vector<double> load(conf.n_q, 0.0);
    std::vector<Gate> gates;
    gates.reserve(ops.size());
    std::vector<double> scores;
    for (GateKind kind : ops) {
        scores.clear();
        if (is_two_qubit(kind)) {
            for (size_t e : sub.edges) {
                const auto &edge = dev.edges()[e];
                scores.push_back(edge.gate_fidelity - 0.05 * (load[logical(edge.q0)] + load[logical(edge.q1)]));
            }
            const auto &edge = dev.edges()[sub.edges[softmax_choose(scores, cfg.tau, rng)]];
            uint32_t a = logical(edge.q0);
            uint32_t b = logical(edge.q1);
            if (rng.below(2)) std::swap(a, b);
            gates.push_back(Gate::two(kind, a, b));
            load[a] += 1.0;
            load[b] += 1.0;
        } else {
            for (uint32_t q = 0; q < conf.n_q; ++q) {
                const auto &cal = dev.qubit(mapping[q]);
                scores.push_back(cal.t1_us / max_t1 + cal.t2_us / max_t2 - 0.1 * load[q]);
            }
            const auto q = static_cast<uint32_t>(softmax_choose(scores, cfg.tau, rng));
            gates.push_back(Gate::fixed_rotation(kind, q, 0.0));
            load[q] += 1.0;
        }
    }

    // (4) measured qubits, without replacement, by readout fidelity.
    std::vector<uint32_t> candidates(conf.n_q);
    std::iota(candidates.begin(), candidates.end(), 0);
    std::vector<uint32_t> measured;
    while (measured.size() < conf.n_meas) {
        scores.clear();
        for (uint32_t q : candidates) scores.push_back(dev.qubit(mapping[q]).readout_fidelity);
        const size_t pick = softmax_choose(scores, cfg.tau, rng);
        measured.push_back(candidates[pick]);
        candidates.erase(candidates.begin() + static_cast<std::ptrdiff_t>(pick));
    }

    // (5) embedding designation, then trainable indices in circuit order.
    std::vector<size_t> rotation_slots;
    for (size_t i = 0; i < gates.size(); ++i) {
        if (is_rotation(gates[i].kind)) rotation_slots.push_back(i);
    }
    std::vector<size_t> shuffled = rotation_slots;
    std::shuffle(shuffled.begin(), shuffled.end(), rng);
    std::vector<size_t> embed_slots(shuffled.begin(), shuffled.begin() + conf.n_embeds);
    std::sort(embed_slots.begin(), embed_slots.end());

    std::vector<uint32_t> dims(std::max<uint32_t>(conf.data_dim, 1));
    std::iota(dims.begin(), dims.end(), 0);
    std::shuffle(dims.begin(), dims.end(), rng);
    std::vector<bool> is_embed(gates.size(), false);
    for (size_t slot : embed_slots) is_embed[slot] = true;
    uint32_t next_trainable = 0;
    uint32_t next_embed = 0;
    for (size_t slot : rotation_slots) {
        Gate &g = gates[slot];
        if (is_embed[slot]) {
            g = Gate::embedding(g.kind, g.qubits[0], dims[next_embed++ % dims.size()]);
        } else {
            g = Gate::trainable(g.kind, g.qubits[0], next_trainable++);
        }
    }
    return Circuit(conf.n_q, std::move(gates), std::move(measured), mapping);
}

Circuit with_fixed_angle_embedding(const Circuit &c, uint32_t dim) {
    if (dim == 0) throw std::invalid_argument("fixed embedding needs dim >= 1");
    std::vector<Gate> gates;
    gates.reserve(c.gates().size() + c.n_qubits());
    for (uint32_t q = 0; q < c.n_qubits(); ++q) {
        gates.push_back(Gate::embedding(GateKind::RX, q, q % dim));
    }
    uint32_t next = c.n_trainable();
    for (Gate g : c.gates()) {
        if (g.role == ParamRole::Embedding) {
            g = Gate::trainable(g.kind, g.qubits[0], next++);
        }
        gates.push_back(g);
    }
    return c.with_gates(std::move(gates));
}

}  // namespace qcs
