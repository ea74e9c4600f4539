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
#include "qcs/noise.h"
#include "qcs/statevector.h"
#include "qcs/tableau.h"
#include "test_util.h"

using namespace qcs;
using namespace qcs::testing;

namespace {

RunConfig with_trajectories(uint32_t t) {
    RunConfig cfg;
    cfg.trajectories = t;
    return cfg;
}

}  // namespace

TEST(readout_convolve, examples) {
    const auto p = ProbDist(2, {0.1, 0.2, 0.3, 0.4});
    const std::vector<double> zero = {0.0, 0.0};
    EXPECT_EQ(readout_convolve(p, zero), p);
    const std::vector<double> half = {0.5};
    const auto flipped = readout_convolve(ProbDist::point(1, 0), half);
    EXPECT_DOUBLE_EQ(flipped[0], 0.5);
    EXPECT_DOUBLE_EQ(flipped[1], 0.5);
    // Bit 0 flips with 0.1, bit 1 with 0.2; index = b0 + 2 b1.
    const std::vector<double> f = {0.1, 0.2};
    const auto q = readout_convolve(ProbDist::point(2, 0), f);
    EXPECT_NEAR(q[0], 0.72, 1e-15);
    EXPECT_NEAR(q[1], 0.08, 1e-15);
    EXPECT_NEAR(q[2], 0.18, 1e-15);
    EXPECT_NEAR(q[3], 0.02, 1e-15);
    EXPECT_THROW(readout_convolve(p, half), std::invalid_argument);
}

TEST(readout_convolve, half_flip_gives_uniform_and_keeps_norm) {
    Rng rng(1);
    for (int trial = 0; trial < 20; ++trial) {
        std::vector<double> v(8);
        double total = 0;
        for (double &x : v) total += (x = rng.uniform());
        for (double &x : v) x /= total;
        const ProbDist p(3, v);
        const std::vector<double> flips = {rng.uniform() * 0.5, rng.uniform() * 0.5, rng.uniform() * 0.5};
        EXPECT_NEAR(readout_convolve(p, flips).total(), 1.0, 1e-12);
        const std::vector<double> half = {0.5, 0.5, 0.5};
        const auto u = readout_convolve(p, half);
        for (double x : u.probs()) EXPECT_NEAR(x, 0.125, 1e-12);
    }
}

TEST(noisy_dist, zero_noise_matches_both_backends) {
    const auto dev = line_device(4);
    Rng rng(3);
    const auto cfg = with_trajectories(16);
    for (int trial = 0; trial < 10; ++trial) {
        auto cliff = random_clifford_circuit(4, 30, rng);
        // Restrict 2q gates to the line so the noise spec resolves.
        std::vector<Gate> gates;
        for (auto g : cliff.gates()) {
            if (g.arity() == 2) g.qubits[1] = g.qubits[0] == 3 ? 2 : g.qubits[0] + 1;
            gates.push_back(g);
        }
        const Circuit c(4, gates, cliff.measured());
        EXPECT_LE(tvd(noisy_dist(c, dev, std::nullopt, cfg, rng), clifford_dist(c)), 1e-9);

        auto pc = random_param_circuit(4, 6, 2, 2, 0, rng, 2);
        const auto x = random_angles(2, rng);
        const auto theta = random_angles(pc.n_trainable(), rng);
        const auto noisy = noisy_dist(pc, dev, Binding{x, theta}, cfg, rng);
        EXPECT_LE(tvd(noisy, measure_dist(run(pc, x, theta), pc.measured())), 1e-9);
    }
}

TEST(noisy_dist, readout_only) {
    // Single X gate, p1 = 0, r = 0.1.
    const auto dev = line_device(1, 0.9);
    Rng rng(4);
    const auto p = noisy_dist(Circuit(1, {Gate::one(GateKind::X, 0)}, {0}), dev, std::nullopt, with_trajectories(8), rng);
    EXPECT_NEAR(p[1], 0.9, 1e-12);
    EXPECT_NEAR(p[0], 0.1, 1e-12);
}

TEST(noisy_dist, bell_matches_depolarizing_closed_form) {
    // After H and CX, a two-qubit depolarizing error flips the parity for the 8
    // of 15 Paulis with X or Y on exactly one qubit.
    const double p2 = 0.1;
    const auto dev = line_device(2, 1.0, 0.0, 1.0 - p2);
    const Circuit bell(2, {Gate::one(GateKind::H, 0), Gate::two(GateKind::CX, 0, 1)}, {0, 1});
    Rng rng(5);
    const auto p = noisy_dist(bell, dev, std::nullopt, with_trajectories(8192), rng);
    const double odd = p2 * 8.0 / 15.0;
    const ProbDist expected(2, {(1 - odd) / 2, odd / 2, odd / 2, (1 - odd) / 2});
    EXPECT_LE(tvd(p, expected), 0.02);
}

TEST(noisy_dist, bell_fidelity_falls_with_error_rate) {
    const Circuit bell(2, {Gate::one(GateKind::H, 0), Gate::two(GateKind::CX, 0, 1)}, {0, 1});
    const auto ideal = clifford_dist(bell);
    double last = -1;
    for (double p2 : {0.0, 0.05, 0.1}) {
        Rng rng(6);
        const auto p = noisy_dist(bell, line_device(2, 1.0, 0.0, 1.0 - p2), std::nullopt, with_trajectories(4096), rng);
        const double d = tvd(p, ideal);
        EXPECT_GT(d, last);
        last = d;
    }
}

TEST(noisy_dist, frame_path_agrees_with_statevector_trajectories) {
    // The same Clifford circuit with a zero-angle RZ appended is routed to the
    // statevector backend; both estimate the same channel.
    Rng rng(7);
    const auto dev = line_device(3, 0.97, 0.02, 0.9);
    const Circuit cliff(3,
                        {Gate::one(GateKind::H, 0), Gate::two(GateKind::CX, 0, 1), Gate::one(GateKind::S, 1),
                         Gate::two(GateKind::CZ, 1, 2), Gate::one(GateKind::H, 2), Gate::two(GateKind::CX, 2, 1)},
                        {0, 1, 2});
    auto gates = cliff.gates();
    gates.push_back(Gate::fixed_rotation(GateKind::RZ, 0, 0.0));
    const Circuit generic(3, gates, cliff.measured());
    // Give the extra gate no error so the channels coincide.
    auto spec_a = make_noise_spec(cliff, dev);
    auto spec_b = make_noise_spec(generic, dev);
    spec_b.gate_error.back() = 0.0;
    const auto a = noisy_dist(cliff, spec_a, std::nullopt, 8192, 0, rng);
    const auto b = noisy_dist(generic, spec_b, Binding{{}, {}}, 8192, 0, rng);
    EXPECT_LE(tvd(a, b), 0.03);
}

TEST(noisy_dist, inserted_errors_reproduce_a_trajectory) {
    // One fixed error pattern materialized as gates must equal the exact
    // distribution of that trajectory, on both simulators.
    Rng rng(8);
    const auto dev = line_device(3, 1.0, 0.3, 0.5);
    const Circuit c(3, {Gate::one(GateKind::H, 0), Gate::two(GateKind::CX, 0, 1), Gate::two(GateKind::CZ, 1, 2)},
                    {0, 1, 2});
    const auto spec = make_noise_spec(c, dev);
    ErrorPattern pattern;
    for (int trial = 0; trial < 20; ++trial) {
        sample_error_pattern(c, spec, rng, pattern);
        const auto with = insert_errors(c, pattern);
        EXPECT_LE(tvd(clifford_dist(with), measure_dist(run(with, {}, {}), with.measured())), 1e-12);
    }
}

TEST(noisy_dist, independent_runs_agree) {
    Rng rng(9);
    const auto dev = make_synthetic_device({Topology::Line, 1, 4, 3, {0.05, 0.01, 0.05, 100, 80, 0.3}});
    const auto c = random_param_circuit(4, 6, 0, 1, 0, rng, 2);
    std::vector<Gate> gates = c.gates();
    gates.push_back(Gate::two(GateKind::CX, 0, 1));
    gates.push_back(Gate::two(GateKind::CZ, 2, 3));
    const Circuit circ(4, gates, c.measured());
    const auto theta = random_angles(circ.n_trainable(), rng);
    Rng r1(100);
    Rng r2(200);
    const auto a = noisy_dist(circ, dev, Binding{{}, theta}, with_trajectories(4096), r1);
    const auto b = noisy_dist(circ, dev, Binding{{}, theta}, with_trajectories(4096), r2);
    EXPECT_LT(tvd(a, b), 0.02);
}

TEST(noisy_dist, errors) {
    const auto dev = line_device(2);
    Rng rng(1);
    const Circuit c(2, {Gate::trainable(GateKind::RX, 0, 0)}, {0});
    EXPECT_THROW(noisy_dist(c, dev, std::nullopt, with_trajectories(4), rng), std::invalid_argument);
    EXPECT_THROW(noisy_dist(Circuit(2, {Gate::one(GateKind::H, 0)}, {0}), dev, std::nullopt, with_trajectories(0), rng),
                 std::invalid_argument);
    EXPECT_THROW(make_noise_spec(Circuit(3, {Gate::two(GateKind::CX, 0, 2)}, {0}), line_device(3)),
                 std::invalid_argument);
}

TEST(noisy_dist, deterministic_per_seed) {
    const auto dev = line_device(2, 0.95, 0.01, 0.9);
    const Circuit bell(2, {Gate::one(GateKind::H, 0), Gate::two(GateKind::CX, 0, 1)}, {0, 1});
    Rng a(11);
    Rng b(11);
    EXPECT_EQ(noisy_dist(bell, dev, std::nullopt, with_trajectories(64), a),
              noisy_dist(bell, dev, std::nullopt, with_trajectories(64), b));
}
