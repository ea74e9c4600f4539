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

#include <cmath>
#include <map>
#include <numeric>
#include <set>

#include "gtest/gtest.h"
#include "qcs/generate.h"
#include "test_util.h"

using namespace qcs;
using namespace qcs::testing;

namespace {

// Brute force: every vertex subset of size k whose induced graph is connected.
std::set<std::vector<uint32_t>> connected_subsets(const DeviceModel &dev, uint32_t k) {
    std::set<std::vector<uint32_t>> out;
    const uint32_t n = dev.n_qubits();
    for (uint32_t mask = 0; mask < (1u << n); ++mask) {
        if (static_cast<uint32_t>(__builtin_popcount(mask)) != k) continue;
        std::vector<uint32_t> vs;
        for (uint32_t q = 0; q < n; ++q) {
            if (mask >> q & 1) vs.push_back(q);
        }
        uint32_t reached = 1u << vs[0];
        for (bool grew = true; grew;) {
            grew = false;
            for (uint32_t q : vs) {
                if (!(reached >> q & 1)) continue;
                for (uint32_t nb : dev.neighbors(q)) {
                    if ((mask >> nb & 1) && !(reached >> nb & 1)) {
                        reached |= 1u << nb;
                        grew = true;
                    }
                }
            }
        }
        if (reached == mask) out.insert(vs);
    }
    return out;
}

DeviceModel two_edge_device() {
    std::vector<QubitCalibration> qs(3, QubitCalibration{100, 80, 0.98, 1e-3});
    return DeviceModel("pair", qs, {{0, 1, 0.99}, {1, 2, 0.80}});
}

}  // namespace

TEST(sample_subgraphs, line_pairs) {
    const auto dev = line_device(3);
    Rng rng(1);
    const auto subs = sample_subgraphs(dev, 2, 16, rng);
    for (const auto &s : subs) {
        EXPECT_TRUE(s.vertices == (std::vector<uint32_t>{0, 1}) || s.vertices == (std::vector<uint32_t>{1, 2}));
        EXPECT_EQ(s.edges.size(), 1u);
    }
}

TEST(sample_subgraphs, whole_device) {
    const auto dev = make_synthetic_device({Topology::Grid, 2, 3, 1});
    Rng rng(2);
    const auto subs = sample_subgraphs(dev, 6, 8, rng);
    ASSERT_EQ(subs.size(), 1u);
    EXPECT_EQ(subs[0].vertices.size(), 6u);
    EXPECT_EQ(subs[0].edges.size(), dev.edges().size());
}

TEST(sample_subgraphs, grid_triples_match_enumeration) {
    const auto dev = make_synthetic_device({Topology::Grid, 2, 2, 1});
    const auto expected = connected_subsets(dev, 3);
    ASSERT_EQ(expected.size(), 4u);
    std::set<std::vector<uint32_t>> seen;
    for (uint64_t seed = 0; seed < 100; ++seed) {
        Rng rng(seed);
        for (const auto &s : sample_subgraphs(dev, 3, 32, rng)) {
            EXPECT_TRUE(expected.count(s.vertices));
            seen.insert(s.vertices);
        }
    }
    EXPECT_EQ(seen, expected);
}

TEST(sample_subgraphs, heavy_hex_subgraphs_are_connected) {
    const auto dev = make_synthetic_device({Topology::HeavyHex, 2, 2, 1});
    const auto all = connected_subsets(dev, 4);
    Rng rng(3);
    for (const auto &s : sample_subgraphs(dev, 4, 32, rng)) EXPECT_TRUE(all.count(s.vertices));
}

TEST(sample_subgraphs, too_large_throws) {
    Rng rng(1);
    const DeviceModel split("split", std::vector<QubitCalibration>(4), {{0, 1, 1.0}, {2, 3, 1.0}});
    EXPECT_THROW(sample_subgraphs(split, 3, 4, rng), std::invalid_argument);
    EXPECT_THROW(sample_subgraphs(line_device(3), 4, 4, rng), std::invalid_argument);
}

TEST(softmax, known_values) {
    const std::vector<double> s = {1.0, 0.9};
    const auto p = softmax(s, 0.1);
    const double e = std::exp(1.0);  // e^{10} / (e^{10} + e^{9}) = e / (e + 1)
    EXPECT_NEAR(p[0], e / (e + 1), 1e-12);
    EXPECT_NEAR(p[0], 0.731, 1e-3);
    EXPECT_NEAR(p[1], 0.269, 1e-3);
    const std::vector<double> big = {1000.0, 999.0};
    EXPECT_NO_THROW(softmax(big, 1e-3));
    EXPECT_THROW(softmax(std::vector<double>{}, 1.0), std::invalid_argument);
    EXPECT_THROW(softmax(s, 0.0), std::invalid_argument);
}

TEST(softmax_choose, uniform_passes_chi_square) {
    const std::vector<double> s(5, 0.3);
    Rng rng(4);
    std::vector<double> counts(5, 0);
    const int draws = 10000;
    for (int i = 0; i < draws; ++i) counts[softmax_choose(s, 0.05, rng)] += 1;
    double chi2 = 0;
    for (double c : counts) chi2 += (c - draws / 5.0) * (c - draws / 5.0) / (draws / 5.0);
    EXPECT_LT(chi2, 13.28);  // chi^2_{4}, alpha = 0.01
}

TEST(softmax_choose, frequencies_and_limit) {
    const std::vector<double> s = {1.0, 0.9};
    Rng rng(5);
    int first = 0;
    for (int i = 0; i < 10000; ++i) first += softmax_choose(s, 0.1, rng) == 0;
    EXPECT_NEAR(first / 10000.0, 0.731, 0.02);
    const std::vector<double> t = {0.2, 0.5, 0.49};
    for (int i = 0; i < 10000; ++i) ASSERT_EQ(softmax_choose(t, 1e-6, rng), 1u);
}

TEST(generate_candidate, valid_and_counts_match) {
    const auto dev = make_synthetic_device({Topology::Grid, 3, 3, 7});
    CircuitConfig conf;
    conf.n_meas = 2;
    RunConfig cfg;
    for (uint64_t seed = 0; seed < 200; ++seed) {
        Rng rng(seed);
        const auto c = generate_candidate(dev, conf, cfg, rng);
        EXPECT_TRUE(validate_circuit(c, dev, conf.data_dim).empty());
        EXPECT_EQ(c.n_trainable(), conf.n_params);
        EXPECT_EQ(c.n_embedding(), conf.n_embeds);
        EXPECT_EQ(c.measured().size(), conf.n_meas);
        EXPECT_EQ(c.n_qubits(), conf.n_q);
        EXPECT_EQ(c.count_two_qubit(), static_cast<size_t>(std::floor(0.3 * 20)));
        // Trainable indices follow circuit order.
        uint32_t next = 0;
        for (const auto &g : c.gates()) {
            if (g.role == ParamRole::Trainable) EXPECT_EQ(g.index, next++);
        }
    }
}

TEST(generate_candidate, embeddings_cover_every_dimension) {
    const auto dev = make_synthetic_device({Topology::Grid, 3, 3, 7});
    CircuitConfig conf;
    conf.data_dim = 4;
    conf.n_embeds = 4;
    for (uint64_t seed = 0; seed < 100; ++seed) {
        Rng rng(seed);
        const auto c = generate_candidate(dev, conf, RunConfig{}, rng);
        std::multiset<uint32_t> dims;
        for (const auto &g : c.gates()) {
            if (g.role == ParamRole::Embedding) dims.insert(g.index);
        }
        EXPECT_EQ(dims, (std::multiset<uint32_t>{0, 1, 2, 3}));
    }
}

TEST(generate_candidate, prefers_the_better_edge) {
    const auto dev = two_edge_device();
    CircuitConfig conf{3, 2, 0, 1, 1};
    RunConfig cfg;
    cfg.two_q_fraction = 0.5;
    size_t good = 0;
    size_t total = 0;
    for (uint64_t seed = 0; seed < 10000; ++seed) {
        Rng rng(seed);
        const auto c = generate_candidate(dev, conf, cfg, rng);
        for (const auto &g : c.gates()) {
            if (!is_two_qubit(g.kind)) continue;
            ++total;
            const uint32_t a = c.physical(g.qubits[0]);
            const uint32_t b = c.physical(g.qubits[1]);
            good += (std::min(a, b) == 0 && std::max(a, b) == 1);
        }
    }
    ASSERT_GT(total, 0u);
    EXPECT_GT(static_cast<double>(good) / total, 0.9);
}

TEST(generate_candidate, deterministic_per_seed) {
    const auto dev = make_synthetic_device({Topology::HeavyHex, 2, 2, 3});
    Rng a(9);
    Rng b(9);
    EXPECT_EQ(generate_candidate(dev, CircuitConfig{}, RunConfig{}, a),
              generate_candidate(dev, CircuitConfig{}, RunConfig{}, b));
}

TEST(generate_candidate, readout_fidelity_raises_selection_frequency) {
    std::vector<QubitCalibration> qs(3, QubitCalibration{100, 80, 0.95, 1e-3});
    auto frequency = [&](double r) {
        auto cal = qs;
        cal[2].readout_fidelity = r;
        const DeviceModel dev("tri", cal, {{0, 1, 0.99}, {1, 2, 0.99}});
        CircuitConfig conf{3, 2, 0, 1, 1};
        size_t hits = 0;
        for (uint64_t seed = 0; seed < 10000; ++seed) {
            Rng rng(seed);
            const auto c = generate_candidate(dev, conf, RunConfig{}, rng);
            hits += c.physical(c.measured()[0]) == 2;
        }
        return hits / 10000.0;
    };
    double last = -1;
    for (double r : {0.90, 0.95, 0.97, 0.99}) {
        const double f = frequency(r);
        EXPECT_GE(f, last);
        last = f;
    }
}

TEST(generate_candidate, zero_swap_on_several_topologies) {
    RunConfig cfg;
    for (auto topo : {Topology::Line, Topology::Ring, Topology::Grid, Topology::HeavyHex}) {
        const auto dev = make_synthetic_device({topo, 3, 3, 5});
        for (uint64_t seed = 0; seed < 300; ++seed) {
            Rng rng(seed);
            const auto c = generate_candidate(dev, CircuitConfig{}, cfg, rng);
            for (const auto &g : c.gates()) {
                if (is_two_qubit(g.kind)) {
                    ASSERT_TRUE(dev.has_edge(c.physical(g.qubits[0]), c.physical(g.qubits[1])));
                }
            }
        }
    }
}

TEST(generate_candidate, rejects_bad_config) {
    const auto dev = line_device(3);
    Rng rng(1);
    CircuitConfig conf;  // n_q = 4 > 3
    EXPECT_THROW(generate_candidate(dev, conf, RunConfig{}, rng), std::invalid_argument);
}

TEST(with_fixed_angle_embedding, replaces_embedding_layer) {
    const auto dev = make_synthetic_device({Topology::Grid, 3, 3, 7});
    Rng rng(2);
    const auto c = generate_candidate(dev, CircuitConfig{}, RunConfig{}, rng);
    const auto f = with_fixed_angle_embedding(c, 2);
    EXPECT_EQ(f.n_trainable(), c.n_trainable() + c.n_embedding());
    EXPECT_EQ(f.n_embedding(), c.n_qubits());
    for (uint32_t q = 0; q < c.n_qubits(); ++q) {
        EXPECT_EQ(f.gates()[q], Gate::embedding(GateKind::RX, q, q % 2));
    }
    EXPECT_TRUE(validate_circuit(f, dev, 2).empty());
}
