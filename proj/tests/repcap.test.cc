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
#include <numbers>

#include "gtest/gtest.h"
#include "qcs/data.h"
#include "qcs/repcap.h"
#include "qcs/statevector.h"
#include "test_util.h"

using namespace qcs;
using namespace qcs::testing;

namespace {

Dataset small_moons(uint64_t seed = 0) {
    auto samples = make_moons(120, 0.1, seed);
    normalize(samples, Normalization::MinMaxPi);
    return stratified_split(samples, 2, 0.5, seed);
}

}  // namespace

TEST(approx_state, identity_basis_is_plain_measurement) {
    Rng rng(1);
    const auto c = random_param_circuit(3, 4, 2, 2, 6, rng, 2);
    const auto x = random_angles(2, rng);
    const auto theta = random_angles(c.n_trainable(), rng);
    const auto a = approx_state(c, x, theta, BasisAngles::identity(1, 2));
    ASSERT_EQ(a.bases.size(), 1u);
    EXPECT_LE(tvd(a.bases[0], measure_dist(run(c, x, theta), c.measured())), 1e-12);
}

TEST(approx_state, appended_u3_matches_explicit_circuit) {
    Rng rng(2);
    const auto c = random_param_circuit(3, 4, 2, 2, 6, rng, 2);
    const auto x = random_angles(2, rng);
    const auto theta = random_angles(c.n_trainable(), rng);
    Rng basis_rng(3);
    const auto alphas = BasisAngles::random(4, 2, basis_rng);
    const auto a = approx_state(c, x, theta, alphas);
    for (uint32_t i = 0; i < 4; ++i) {
        auto gates = c.gates();
        for (uint32_t k = 0; k < 2; ++k) {
            const auto ang = alphas.at(i, k);
            gates.push_back(Gate::u3(c.measured()[k], ang[0], ang[1], ang[2]));
        }
        const auto explicit_c = c.with_gates(gates);
        const auto ref = dense_probs(dense_run(explicit_c, x, theta), c.measured());
        for (size_t j = 0; j < ref.size(); ++j) EXPECT_NEAR(a.bases[i][j], ref[j], 1e-10);
    }
}

TEST(approx_state, deterministic_and_shape_checked) {
    Rng rng(4);
    const auto c = random_param_circuit(2, 2, 1, 1, 2, rng, 1);
    const std::vector<double> x = {0.3};
    const auto theta = random_angles(c.n_trainable(), rng);
    Rng b(5);
    const auto alphas = BasisAngles::random(3, 1, b);
    EXPECT_EQ(approx_state(c, x, theta, alphas), approx_state(c, x, theta, alphas));
    EXPECT_THROW(approx_state(c, x, theta, BasisAngles::identity(3, 2)), std::invalid_argument);
}

TEST(approx_state, orthogonal_states_in_rotated_bases) {
    // |0> and |1> after U3(a, b, c): P(0) = cos^2(a/2) versus sin^2(a/2), so
    // TVD = |cos a|.
    const Circuit c(1, {Gate::embedding(GateKind::RX, 0, 0)}, {0});
    const std::vector<double> x0 = {0.0};
    const std::vector<double> x1 = {std::numbers::pi};
    for (double a : {0.0, 0.4, 1.1, 2.0}) {
        const BasisAngles basis(1, 1, {a, 0.3, 0.7});
        const auto s0 = approx_state(c, x0, {}, basis);
        const auto s1 = approx_state(c, x1, {}, basis);
        EXPECT_NEAR(tvd(s0.bases[0], s1.bases[0]), std::abs(std::cos(a)), 1e-12);
    }
}

TEST(similarity, examples) {
    StateApprox same{{ProbDist::point(1, 0), ProbDist::uniform(1)}};
    EXPECT_DOUBLE_EQ(similarity(same, same), 1.0);
    StateApprox a{{ProbDist::point(2, 0), ProbDist::point(2, 1)}};
    StateApprox b{{ProbDist::point(2, 3), ProbDist::point(2, 2)}};
    EXPECT_DOUBLE_EQ(similarity(a, b), 0.0);
    StateApprox c{{ProbDist::point(2, 0), ProbDist::point(2, 2)}};
    EXPECT_DOUBLE_EQ(similarity(a, c), 0.5);
    StateApprox d{{ProbDist::point(2, 0)}};
    EXPECT_THROW(similarity(a, d), std::invalid_argument);
}

TEST(induced_similarity, examples) {
    Rng rng(6);
    const auto c = random_param_circuit(3, 4, 2, 2, 6, rng, 2);
    const auto thetas = draw_thetas(c.n_trainable(), 4, rng);
    const auto alphas = BasisAngles::random(4, 2, rng);
    const std::vector<double> x = {0.4, 1.3};
    EXPECT_NEAR(induced_similarity(c, x, x, thetas, alphas), 1.0, 1e-9);

    const auto no_embed = random_param_circuit(3, 5, 0, 1, 6, rng, 2);
    const auto t2 = draw_thetas(no_embed.n_trainable(), 4, rng);
    const std::vector<double> y = {2.0, 0.1};
    EXPECT_NEAR(induced_similarity(no_embed, x, y, t2, alphas), 1.0, 1e-9);

    const Circuit rx(1, {Gate::embedding(GateKind::RX, 0, 0)}, {0});
    const std::vector<double> zero = {0.0};
    const std::vector<double> pi = {std::numbers::pi};
    const std::vector<std::vector<double>> empty_theta = {{}};
    EXPECT_NEAR(induced_similarity(rx, zero, pi, empty_theta, BasisAngles::identity(1, 1)), 0.0, 1e-12);
    EXPECT_THROW(induced_similarity(rx, zero, pi, {}, BasisAngles::identity(1, 1)), std::invalid_argument);
}

TEST(rep_from_matrix, examples) {
    const std::vector<uint32_t> labels = {0, 1};
    EXPECT_DOUBLE_EQ(rep_from_matrix(SimilarityMatrix(labels, {1, 0, 0, 1}), 2, 1), 1.0);
    EXPECT_DOUBLE_EQ(rep_from_matrix(SimilarityMatrix(labels, {1, 1, 1, 1}), 2, 1), 0.5);
    EXPECT_DOUBLE_EQ(rep_from_matrix(SimilarityMatrix(labels, {0, 1, 1, 0}), 2, 1), 0.0);
}

TEST(rep_from_matrix, permutation_invariant) {
    Rng rng(7);
    const size_t d = 6;
    std::vector<uint32_t> labels = {0, 0, 0, 1, 1, 1};
    std::vector<double> v(d * d);
    for (size_t i = 0; i < d; ++i) {
        for (size_t j = i; j < d; ++j) v[i * d + j] = v[j * d + i] = i == j ? 1.0 : rng.uniform();
    }
    const double base = rep_from_matrix(SimilarityMatrix(labels, v), 2, 3);
    std::vector<size_t> perm = {4, 0, 5, 2, 1, 3};
    std::vector<uint32_t> pl(d);
    std::vector<double> pv(d * d);
    for (size_t i = 0; i < d; ++i) {
        pl[i] = labels[perm[i]];
        for (size_t j = 0; j < d; ++j) pv[i * d + j] = v[perm[i] * d + perm[j]];
    }
    EXPECT_NEAR(rep_from_matrix(SimilarityMatrix(pl, pv), 2, 3), base, 1e-12);
    EXPECT_LT(base, 1.0);
}

TEST(repcap_score, matrix_invariants_and_accounting) {
    const auto ds = small_moons();
    Rng rng(8);
    const auto c = random_param_circuit(3, 6, 4, 2, 6, rng, 1);
    RunConfig cfg;
    cfg.d_c = 6;
    cfg.n_p = 5;
    cfg.n_bases = 3;
    const auto r = repcap_score(c, 3, ds, cfg);
    EXPECT_EQ(r.id, 3u);
    const size_t d = r.matrix.size();
    ASSERT_EQ(d, 12u);
    for (size_t i = 0; i < d; ++i) {
        EXPECT_NEAR(r.matrix(i, i), 1.0, 1e-9);
        for (size_t j = 0; j < d; ++j) {
            EXPECT_EQ(r.matrix(i, j), r.matrix(j, i));
            EXPECT_GE(r.matrix(i, j), -1e-12);
            EXPECT_LE(r.matrix(i, j), 1.0 + 1e-12);
        }
    }
    for (size_t i = 0; i < 6; ++i) EXPECT_EQ(r.matrix.labels()[i], 0u);
    EXPECT_LE(r.rep, 1.0);
    EXPECT_EQ(r.executions, 2u * 6 * 5);
    EXPECT_EQ(r.physical_executions, 2u * 6 * 5 * 3);
    EXPECT_EQ(repcap_score(c, 3, ds, cfg).rep, r.rep);
}

TEST(repcap_score, matches_pairwise_induced_similarity) {
    const auto ds = small_moons(1);
    Rng rng(9);
    const auto c = random_param_circuit(3, 4, 3, 2, 5, rng, 2);
    RunConfig cfg;
    cfg.d_c = 3;
    cfg.n_p = 4;
    cfg.n_bases = 2;
    const auto plan = make_repcap_plan(ds, cfg);
    const auto r = repcap_score(c, 0, ds, cfg, plan);
    Rng theta_rng(plan.theta_seed);
    const auto thetas = draw_thetas(c.n_trainable(), cfg.n_p, theta_rng);
    Rng basis_rng(plan.basis_seed);
    const auto alphas = BasisAngles::random(cfg.n_bases, 2, basis_rng);
    for (size_t i = 0; i < plan.samples.size(); ++i) {
        for (size_t j = i + 1; j < plan.samples.size(); ++j) {
            const double is = induced_similarity(c, ds.train()[plan.samples[i]].x, ds.train()[plan.samples[j]].x,
                                                 thetas, alphas);
            EXPECT_NEAR(r.matrix(i, j), is, 1e-12);
        }
    }
}

TEST(repcap_score, data_blind_circuit_scores_half) {
    const auto ds = small_moons();
    Rng rng(10);
    const auto c = random_param_circuit(2, 4, 0, 1, 3, rng);
    RunConfig cfg;
    cfg.d_c = 4;
    cfg.n_p = 3;
    EXPECT_NEAR(repcap_score(c, 0, ds, cfg).rep, 0.5, 1e-9);
}

TEST(repcap_score, needs_enough_samples_per_class) {
    const auto ds = small_moons();
    RunConfig cfg;
    cfg.d_c = 100;
    const Circuit c(1, {Gate::embedding(GateKind::RX, 0, 0)}, {0});
    EXPECT_THROW(repcap_score(c, 0, ds, cfg), std::invalid_argument);
}

TEST(select_repcap_samples, draws_without_replacement_per_class) {
    const auto ds = small_moons();
    Rng rng(11);
    const auto idx = select_repcap_samples(ds, 10, rng);
    ASSERT_EQ(idx.size(), 20u);
    std::set<size_t> unique(idx.begin(), idx.end());
    EXPECT_EQ(unique.size(), 20u);
    for (size_t i = 0; i < 20; ++i) EXPECT_EQ(ds.train()[idx[i]].y, i < 10 ? 0u : 1u);
}
