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

#include "gtest/gtest.h"
#include "qcs/circuit.h"
#include "qcs/json_io.h"
#include "qcs/prob_dist.h"
#include "qcs/run_config.h"
#include "qcs/stats.h"
#include "test_util.h"

using namespace qcs;
using namespace qcs::testing;

namespace {

bool has_message(const std::vector<std::string> &v, const std::string &needle) {
    for (const auto &s : v) {
        if (s.find(needle) != std::string::npos) return true;
    }
    return false;
}

ProbDist random_dist(uint32_t bits, Rng &rng) {
    std::vector<double> p(size_t{1} << bits);
    double total = 0;
    for (double &v : p) total += (v = rng.uniform());
    for (double &v : p) v /= total;
    return ProbDist(bits, p);
}

}  // namespace

TEST(gate, check_gate_arity_and_roles) {
    EXPECT_FALSE(check_gate(Gate::two(GateKind::CX, 0, 1)));
    EXPECT_TRUE(check_gate(Gate::two(GateKind::CX, 1, 1)));
    EXPECT_FALSE(check_gate(Gate::trainable(GateKind::RY, 0, 3)));
    Gate bad = Gate::one(GateKind::H, 0);
    bad.role = ParamRole::Trainable;
    EXPECT_TRUE(check_gate(bad));
}

TEST(gate, names_round_trip) {
    for (auto k : {GateKind::RX, GateKind::RY, GateKind::RZ, GateKind::CX, GateKind::CZ, GateKind::H, GateKind::S,
                   GateKind::X, GateKind::Y, GateKind::Z, GateKind::U3}) {
        EXPECT_EQ(parse_gate_kind(gate_name(k)), k);
    }
    EXPECT_FALSE(parse_gate_kind("T"));
}

TEST(validate_circuit, adjacent_pair_is_ok) {
    const auto dev = line_device(2);
    EXPECT_TRUE(validate_circuit(Circuit(2, {Gate::two(GateKind::CX, 0, 1)}, {0}), dev).empty());
}

TEST(validate_circuit, non_adjacent_pair) {
    const auto dev = line_device(3);
    const auto v = validate_circuit(Circuit(3, {Gate::two(GateKind::CX, 0, 2)}, {0}), dev);
    EXPECT_TRUE(has_message(v, "non-adjacent 2q gate"));
}

TEST(validate_circuit, trainable_index_gap) {
    const auto dev = line_device(2);
    const Circuit c(2, {Gate::trainable(GateKind::RX, 0, 0), Gate::trainable(GateKind::RX, 1, 2)}, {0});
    EXPECT_TRUE(has_message(validate_circuit(c, dev), "index gap"));
}

TEST(validate_circuit, mapping_and_embedding_bounds) {
    const auto dev = line_device(3);
    // Logical 0-1 mapped to physical 0 and 2: not an edge.
    const Circuit mapped(2, {Gate::two(GateKind::CZ, 0, 1)}, {0}, {0, 2});
    EXPECT_TRUE(has_message(validate_circuit(mapped, dev), "non-adjacent"));
    const Circuit dup(2, {Gate::one(GateKind::H, 0)}, {0}, {1, 1});
    EXPECT_FALSE(validate_circuit(dup, dev).empty());
    const Circuit emb(2, {Gate::embedding(GateKind::RX, 0, 3)}, {0});
    EXPECT_FALSE(validate_circuit(emb, dev, 2).empty());
    EXPECT_TRUE(validate_circuit(emb, dev, 4).empty());
}

TEST(validate_circuit, measured_set) {
    const auto dev = line_device(2);
    EXPECT_TRUE(has_message(validate_circuit(Circuit(2, {}, {}), dev), "measured set is empty"));
    EXPECT_FALSE(validate_circuit(Circuit(2, {}, {2}), dev).empty());
    EXPECT_FALSE(validate_circuit(Circuit(2, {}, {0, 0}), dev).empty());
}

TEST(prob_dist, validates) {
    EXPECT_THROW(ProbDist(1, {0.5, 0.4}), std::invalid_argument);
    EXPECT_THROW(ProbDist(1, {1.5, -0.5}), std::invalid_argument);
    EXPECT_THROW(ProbDist(2, {0.5, 0.5}), std::invalid_argument);
    EXPECT_NO_THROW(ProbDist(1, {0.25, 0.75}));
}

TEST(tvd, examples) {
    const auto p = ProbDist(2, {0.1, 0.2, 0.3, 0.4});
    EXPECT_EQ(tvd(p, p), 0.0);
    EXPECT_DOUBLE_EQ(tvd(ProbDist::point(2, 0), ProbDist::point(2, 3)), 1.0);
    EXPECT_NEAR(tvd(ProbDist(1, {0.75, 0.25}), ProbDist(1, {0.5, 0.5})), 0.25, 1e-15);
    EXPECT_THROW(tvd(ProbDist::uniform(1), ProbDist::uniform(2)), std::invalid_argument);
}

TEST(tvd, metric_properties) {
    Rng rng(7);
    for (int trial = 0; trial < 200; ++trial) {
        const uint32_t bits = 1 + static_cast<uint32_t>(rng.below(4));
        const auto p = random_dist(bits, rng);
        const auto q = random_dist(bits, rng);
        const auto r = random_dist(bits, rng);
        EXPECT_EQ(tvd(p, p), 0.0);
        EXPECT_DOUBLE_EQ(tvd(p, q), tvd(q, p));
        EXPECT_LE(tvd(p, r), tvd(p, q) + tvd(q, r) + 1e-12);
        EXPECT_GE(tvd(p, q), 0.0);
        EXPECT_LE(tvd(p, q), 1.0);
    }
}

TEST(run_config, defaults_are_valid) {
    EXPECT_TRUE(RunConfig{}.validate().empty());
    RunConfig cfg;
    cfg.cnr_threshold = 1.01;
    const auto errors = cfg.validate();
    ASSERT_EQ(errors.size(), 1u);
    EXPECT_EQ(errors[0].rfind("cnr_threshold", 0), 0u);
    cfg = RunConfig{};
    cfg.replicas = 0;
    cfg.keep_fraction = 0.0;
    EXPECT_EQ(cfg.validate().size(), 2u);
}

TEST(stats, spearman_and_ranks) {
    const std::vector<double> a = {1, 2, 3, 4, 5};
    const std::vector<double> b = {2, 4, 6, 8, 100};
    const std::vector<double> c = {5, 4, 3, 2, 1};
    EXPECT_NEAR(spearman(a, b), 1.0, 1e-12);
    EXPECT_NEAR(spearman(a, c), -1.0, 1e-12);
    EXPECT_EQ(average_ranks(std::vector<double>{3, 1, 3}), (std::vector<double>{2.5, 1, 2.5}));
    // Hand-evaluated Pearson of (1,2,3) vs (1,3,2): cov 0.5 / var 1.
    EXPECT_NEAR(pearson(std::vector<double>{1, 2, 3}, std::vector<double>{1, 3, 2}), 0.5, 1e-12);
}

TEST(rng, derive_seed_separates_paths) {
    EXPECT_EQ(derive_seed(1, "a", {2, 3}), derive_seed(1, "a", {2, 3}));
    EXPECT_NE(derive_seed(1, "a", {2, 3}), derive_seed(1, "a", {3, 2}));
    EXPECT_NE(derive_seed(1, "a"), derive_seed(1, "b"));
    EXPECT_NE(derive_seed(1, "a"), derive_seed(2, "a"));
    Rng rng(3);
    for (int i = 0; i < 1000; ++i) EXPECT_LT(rng.below(7), 7u);
}

TEST(json_io, device_round_trip_is_exact) {
    const auto dev = make_synthetic_device({Topology::HeavyHex, 2, 3, 11});
    const auto back = device_from_json(nlohmann::json::parse(device_to_json(dev).dump()));
    EXPECT_EQ(back, dev);
}

TEST(json_io, circuit_round_trip_is_exact) {
    Rng rng(5);
    for (int i = 0; i < 20; ++i) {
        auto c = random_param_circuit(4, 5, 3, 2, 6, rng, 2);
        auto gates = c.gates();
        gates.push_back(Gate::u3(1, 0.1 + rng.uniform(), rng.uniform() * 3, 1.0 / 3.0));
        gates.push_back(Gate::one(GateKind::S, 2));
        const Circuit full(4, gates, c.measured(), {3, 1, 0, 2});
        const auto back = circuit_from_json(nlohmann::json::parse(circuit_to_json(full).dump()));
        EXPECT_EQ(back, full);
    }
}

TEST(json_io, bad_documents_throw) {
    EXPECT_THROW(circuit_from_json(nlohmann::json::parse(R"({"n_qubits":1,"gates":[{"kind":"T","qubits":[0]}],"measured":[0]})")),
                 std::invalid_argument);
    EXPECT_THROW(device_from_json(nlohmann::json::parse(R"({"qubits":[]})")), std::invalid_argument);
}
