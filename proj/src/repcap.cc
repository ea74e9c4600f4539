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

#include "qcs/repcap.h"

#include <algorithm>
#include <numbers>
#include <stdexcept>
#include <string>

#include "qcs/parallel.h"
#include "qcs/statevector.h"

namespace qcs {

BasisAngles::BasisAngles(uint32_t n_bases, uint32_t n_meas, std::vector<double> angles)
    : n_bases_(n_bases), n_meas_(n_meas), angles_(std::move(angles)) {
    if (angles_.size() != size_t{n_bases} * n_meas * 3) {
        throw std::invalid_argument("basis angles: expected " + std::to_string(size_t{n_bases} * n_meas * 3) +
                                    " values, got " + std::to_string(angles_.size()));
    }
}

BasisAngles BasisAngles::random(uint32_t n_bases, uint32_t n_meas, Rng &rng) {
    std::vector<double> a(size_t{n_bases} * n_meas * 3);
    for (double &v : a) v = 2.0 * std::numbers::pi * rng.uniform();
    return BasisAngles(n_bases, n_meas, std::move(a));
}

BasisAngles BasisAngles::identity(uint32_t n_bases, uint32_t n_meas) {
    return BasisAngles(n_bases, n_meas, std::vector<double>(size_t{n_bases} * n_meas * 3, 0.0));
}

std::array<double, 3> BasisAngles::at(uint32_t basis, uint32_t qubit) const {
    const size_t o = (size_t{basis} * n_meas_ + qubit) * 3;
    return {angles_[o], angles_[o + 1], angles_[o + 2]};
}

namespace {

StateApprox approx_from_state(const StateVector &state, const Circuit &c, const BasisAngles &alphas) {
    StateApprox out;
    out.bases.reserve(alphas.n_bases());
    const auto &measured = c.measured();
    StateVector rotated = state;
    std::vector<double> probs;
    for (uint32_t i = 0; i < alphas.n_bases(); ++i) {
        std::copy(state.amplitudes().begin(), state.amplitudes().end(), rotated.amplitudes().begin());
        for (uint32_t k = 0; k < measured.size(); ++k) {
            rotated.apply_1q(measured[k], gate_matrix(GateKind::U3, alphas.at(i, k)));
        }
        marginal_probs(rotated, measured, probs);
        out.bases.emplace_back(static_cast<uint32_t>(measured.size()), probs);
    }
    return out;
}

void check_basis_shape(const Circuit &c, const BasisAngles &alphas) {
    if (alphas.n_meas() != c.measured().size()) {
        throw std::invalid_argument("basis angles cover " + std::to_string(alphas.n_meas()) +
                                    " qubits; circuit measures " + std::to_string(c.measured().size()));
    }
}

}  // namespace

StateApprox approx_state(const Circuit &c, std::span<const double> x, std::span<const double> theta,
                         const BasisAngles &alphas) {
    check_basis_shape(c, alphas);
    return approx_from_state(run(c, x, theta), c, alphas);
}

double similarity(const StateApprox &a, const StateApprox &b) {
    if (a.bases.size() != b.bases.size() || a.bases.empty()) {
        throw std::invalid_argument("similarity: approximations use different basis counts");
    }
    double acc = 0.0;
    for (size_t k = 0; k < a.bases.size(); ++k) {
        acc += 1.0 - tvd(a.bases[k], b.bases[k]);
    }
    return acc / static_cast<double>(a.bases.size());
}

double induced_similarity(const Circuit &c, std::span<const double> x_i, std::span<const double> x_j,
                          const std::vector<std::vector<double>> &theta_draws, const BasisAngles &alphas) {
    if (theta_draws.empty()) {
        throw std::invalid_argument("induced_similarity: needs at least one parameter draw");
    }
    double acc = 0.0;
    for (const auto &theta : theta_draws) {
        acc += similarity(approx_state(c, x_i, theta, alphas), approx_state(c, x_j, theta, alphas));
    }
    return acc / static_cast<double>(theta_draws.size());
}

SimilarityMatrix::SimilarityMatrix(std::vector<uint32_t> labels, std::vector<double> values)
    : labels_(std::move(labels)), values_(std::move(values)) {
    if (values_.size() != labels_.size() * labels_.size()) {
        throw std::invalid_argument("similarity matrix: value count does not match label count");
    }
}

double SimilarityMatrix::squared_error() const {
    double acc = 0.0;
    const size_t d = size();
    for (size_t i = 0; i < d; ++i) {
        for (size_t j = 0; j < d; ++j) {
            const double e = (*this)(i, j) - reference(i, j);
            acc += e * e;
        }
    }
    return acc;
}

double rep_from_matrix(const SimilarityMatrix &m, uint32_t n_classes, uint32_t d_c) {
    const double denom = 2.0 * n_classes * static_cast<double>(d_c) * d_c;
    return 1.0 - m.squared_error() / denom;
}

std::vector<size_t> select_repcap_samples(const Dataset &ds, uint32_t d_c, Rng &rng) {
    std::vector<size_t> out;
    const auto by_class = ds.train_indices_by_class();
    for (uint32_t c = 0; c < by_class.size(); ++c) {
        auto idx = by_class[c];
        if (idx.size() < d_c) {
            throw std::invalid_argument("class " + std::to_string(c) + " has " + std::to_string(idx.size()) +
                                        " training samples; RepCap needs d_c = " + std::to_string(d_c));
        }
        // Partial Fisher-Yates: the first d_c slots are a uniform draw.
        for (uint32_t k = 0; k < d_c; ++k) {
            const size_t j = k + rng.below(idx.size() - k);
            std::swap(idx[k], idx[j]);
        }
        out.insert(out.end(), idx.begin(), idx.begin() + d_c);
    }
    return out;
}

std::vector<std::vector<double>> draw_thetas(uint32_t n_trainable, uint32_t n_p, Rng &rng) {
    std::vector<std::vector<double>> out(n_p, std::vector<double>(n_trainable));
    for (auto &theta : out) {
        for (double &t : theta) t = 2.0 * std::numbers::pi * rng.uniform();
    }
    return out;
}

RepCapPlan make_repcap_plan(const Dataset &ds, const RunConfig &cfg) {
    Rng rng(derive_seed(cfg.rng_seed, "repcap-samples"));
    return RepCapPlan{select_repcap_samples(ds, cfg.d_c, rng), derive_seed(cfg.rng_seed, "repcap-theta"),
                      derive_seed(cfg.rng_seed, "repcap-bases")};
}

RepCapResult repcap_score(const Circuit &c, uint64_t id, const Dataset &ds, const RunConfig &cfg,
                          const RepCapPlan &plan) {
    const size_t d = plan.samples.size();
    const uint32_t n_c = ds.n_classes();
    if (d != size_t{n_c} * cfg.d_c) {
        throw std::invalid_argument("repcap plan does not hold d_c samples per class");
    }
    Rng theta_rng(plan.theta_seed);
    const auto thetas = draw_thetas(c.n_trainable(), cfg.n_p, theta_rng);
    Rng basis_rng(plan.basis_seed);
    const auto alphas = BasisAngles::random(cfg.n_bases, static_cast<uint32_t>(c.measured().size()), basis_rng);

    // Validates shapes once on the first sample.
    (void)run(c, ds.train()[plan.samples[0]].x, thetas[0], SimOptions{cfg.max_qubits});

    std::vector<StateApprox> cache(d * cfg.n_p);
    parallel_for(d, cfg.workers, [&](size_t s) {
        StateVector state(c.n_qubits());
        const auto &x = ds.train()[plan.samples[s]].x;
        for (uint32_t t = 0; t < cfg.n_p; ++t) {
            run_into(state, c, x, thetas[t]);
            StateApprox a = approx_from_state(state, c, alphas);
            a.sample_id = plan.samples[s];
            a.theta_id = t;
            cache[s * cfg.n_p + t] = std::move(a);
        }
    });

    std::vector<double> values(d * d, 1.0);
    std::vector<uint32_t> labels(d);
    for (size_t i = 0; i < d; ++i) labels[i] = ds.train()[plan.samples[i]].y;
    for (size_t i = 0; i < d; ++i) {
        for (size_t j = i + 1; j < d; ++j) {
            double acc = 0.0;
            for (uint32_t t = 0; t < cfg.n_p; ++t) {
                acc += similarity(cache[i * cfg.n_p + t], cache[j * cfg.n_p + t]);
            }
            const double v = acc / static_cast<double>(cfg.n_p);
            values[i * d + j] = v;
            values[j * d + i] = v;
        }
    }
    RepCapResult out;
    out.id = id;
    out.matrix = SimilarityMatrix(std::move(labels), std::move(values));
    out.rep = rep_from_matrix(out.matrix, n_c, cfg.d_c);
    out.executions = uint64_t{n_c} * cfg.d_c * cfg.n_p;
    out.physical_executions = out.executions * cfg.n_bases;
    return out;
}

RepCapResult repcap_score(const Circuit &c, uint64_t id, const Dataset &ds, const RunConfig &cfg) {
    return repcap_score(c, id, ds, cfg, make_repcap_plan(ds, cfg));
}

}  // namespace qcs
