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

#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "qcs/circuit.h"
#include "qcs/dataset.h"
#include "qcs/prob_dist.h"
#include "qcs/rng.h"
#include "qcs/run_config.h"

namespace qcs {

/// Random single-qubit measurement bases: n_bases x n_meas U3 angle triples.
class BasisAngles {
  public:
    BasisAngles(uint32_t n_bases, uint32_t n_meas, std::vector<double> angles);

    /// Uniform draws over [0, 2pi)^3 per basis per qubit.
    static BasisAngles random(uint32_t n_bases, uint32_t n_meas, Rng &rng);
    /// All-zero angles: every basis is the computational basis.
    static BasisAngles identity(uint32_t n_bases, uint32_t n_meas);

    uint32_t n_bases() const { return n_bases_; }
    uint32_t n_meas() const { return n_meas_; }
    std::array<double, 3> at(uint32_t basis, uint32_t qubit) const;

  private:
    uint32_t n_bases_;
    uint32_t n_meas_;
    std::vector<double> angles_;
};

/// Classical approximation of one output state: its measured-qubit
/// distribution in each random basis.
struct StateApprox {
    std::vector<ProbDist> bases;
    uint64_t sample_id = 0;
    uint64_t theta_id = 0;

    bool operator==(const StateApprox &) const = default;
};

/// Runs c(x, theta) noiselessly, appends U3(alphas[i][k]) on measured qubit k
/// for each basis i, and records the exact distributions. Throws
/// std::invalid_argument when the basis shape does not match c.measured().
StateApprox approx_state(const Circuit &c, std::span<const double> x, std::span<const double> theta,
                         const BasisAngles &alphas);

/// Mean over bases of 1 - TVD. Throws on mismatched basis or bit counts.
double similarity(const StateApprox &a, const StateApprox &b);

/// Induced similarity: similarity of x_i and x_j averaged over parameter draws,
/// with both points sharing each draw and the bases.
double induced_similarity(const Circuit &c, std::span<const double> x_i, std::span<const double> x_j,
                          const std::vector<std::vector<double>> &theta_draws, const BasisAngles &alphas);

/// Symmetric d x d similarity matrix with the sample labels that define the
/// reference matrix (R_ref(i, j) = 1 iff labels match).
class SimilarityMatrix {
  public:
    SimilarityMatrix(std::vector<uint32_t> labels, std::vector<double> values);

    size_t size() const { return labels_.size(); }
    double operator()(size_t i, size_t j) const { return values_[i * labels_.size() + j]; }
    double reference(size_t i, size_t j) const { return labels_[i] == labels_[j] ? 1.0 : 0.0; }
    const std::vector<uint32_t> &labels() const { return labels_; }
    const std::vector<double> &values() const { return values_; }

    /// Squared Frobenius distance to the reference matrix.
    double squared_error() const;

  private:
    std::vector<uint32_t> labels_;
    std::vector<double> values_;
};

/// 1 - ||R_C - R_ref||_F^2 / (2 n_c d_c^2).
double rep_from_matrix(const SimilarityMatrix &m, uint32_t n_classes, uint32_t d_c);

/// Training samples used for RepCap: d_c per class, drawn without replacement.
/// Indices into ds.train(), grouped by class.
std::vector<size_t> select_repcap_samples(const Dataset &ds, uint32_t d_c, Rng &rng);

/// n_p parameter vectors, each uniform over [0, 2pi)^n_trainable.
std::vector<std::vector<double>> draw_thetas(uint32_t n_trainable, uint32_t n_p, Rng &rng);

struct RepCapResult {
    uint64_t id = 0;
    double rep = 0.0;
    SimilarityMatrix matrix{{}, {}};
    uint64_t executions = 0;           // n_c * d_c * n_p
    uint64_t physical_executions = 0;  // executions * n_bases
};

/// Shared randomness of one search: the evaluated samples, the parameter draw
/// seed and the bases are common to every candidate so scores are comparable.
struct RepCapPlan {
    std::vector<size_t> samples;
    uint64_t theta_seed = 0;
    uint64_t basis_seed = 0;
};

/// Derives a plan from cfg.rng_seed. Throws std::invalid_argument when a class
/// has fewer than cfg.d_c training samples.
RepCapPlan make_repcap_plan(const Dataset &ds, const RunConfig &cfg);

/// RepCap of `c`. Each (sample, parameter draw) state is simulated once.
RepCapResult repcap_score(const Circuit &c, uint64_t id, const Dataset &ds, const RunConfig &cfg,
                          const RepCapPlan &plan);

/// Convenience overload building the plan from cfg.
RepCapResult repcap_score(const Circuit &c, uint64_t id, const Dataset &ds, const RunConfig &cfg);

}  // namespace qcs
