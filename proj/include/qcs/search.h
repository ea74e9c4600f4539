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
#include <optional>
#include <stdexcept>
#include <vector>

#include "qcs/circuit.h"
#include "qcs/cnr.h"
#include "qcs/dataset.h"
#include "qcs/device.h"
#include "qcs/generate.h"
#include "qcs/repcap.h"
#include "qcs/rng.h"
#include "qcs/run_config.h"

namespace qcs {

/// Raised when early rejection leaves no candidate to evaluate.
class NoSurvivors : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// cnr^alpha * rep. Throws std::invalid_argument for cnr < 0 or alpha <= 0.
double composite_score(double cnr, double rep, double alpha);

/// Mean over k random bindings (x uniform over [0, pi), theta uniform over
/// [0, 2pi)) of 1 - TVD between the exact and the noisy output.
double true_fidelity(const Circuit &c, const DeviceModel &dev, const RunConfig &cfg, uint32_t k_samples, Rng &rng);

/// Executions a SuperCircuit-style search spends: 2 t |X_train| p_bar + N |X_valid|.
double supercircuit_cost(double epochs, double x_train, double p_bar, double n_candidates, double x_valid);

/// Executions RepCap spends on n_candidates circuits: d_c n_p n_c each.
uint64_t repcap_cost(uint64_t n_candidates, uint32_t n_classes, uint32_t d_c = 16, uint32_t n_p = 32);

/// Whether any trainable parameter moves the readout of `c`. Probes the
/// parameter-shift Jacobian at `points` random (x, theta) and reports false
/// when every entry vanishes. Each probe costs 2 * n_trainable executions.
bool readout_responds_to_parameters(const Circuit &c, uint32_t n_readouts, Rng &rng, uint32_t points = 2);

struct CandidateRecord {
    uint64_t id = 0;
    Circuit circuit;
    double cnr = 0.0;
    bool rejected = false;
    bool untrainable = false;     // kept by CNR but no parameter moves its readout
    std::optional<double> rep;    // absent for rejected candidates
    std::optional<double> score;  // absent for rejected candidates
};

struct BudgetLedger {
    uint64_t generation = 0;
    uint64_t cnr_executions = 0;               // replicas * N
    uint64_t repcap_executions = 0;            // d_c n_p n_c per kept candidate
    uint64_t repcap_physical_executions = 0;   // times n_bases
    uint64_t performance_evaluations = 0;      // kept candidates scored by RepCap
    uint64_t trainability_executions = 0;      // parameter-shift probes of kept candidates
    uint64_t training_executions = 0;          // filled in when the winner is trained

    uint64_t total() const {
        return generation + cnr_executions + trainability_executions + repcap_executions + training_executions;
    }
    bool operator==(const BudgetLedger &) const = default;
};

/// Outcome of training the winning circuit.
struct WinnerTraining {
    std::vector<double> theta;
    double initial_loss = 0.0;
    double final_loss = 0.0;
    double test_accuracy = 0.0;
    double test_mse = 0.0;
    double noisy_test_accuracy = 0.0;
    double noisy_test_mse = 0.0;
};

struct SearchReport {
    std::vector<CandidateRecord> candidates;  // in id order
    uint64_t winner = 0;
    BudgetLedger ledger;
    RunConfig config;
    CircuitConfig circuit_config;
    uint32_t n_classes = 0;
    uint64_t n_train = 0;
    uint64_t n_test = 0;
    uint64_t seed = 0;
    std::optional<WinnerTraining> training;

    const CandidateRecord &winner_record() const { return candidates.at(winner); }
};

/// N candidates with per-candidate streams derived from cfg.rng_seed.
std::vector<Circuit> generate_candidates(const DeviceModel &dev, const CircuitConfig &conf, const RunConfig &cfg,
                                         uint32_t n);

/// CNR for every circuit; ids are positions in `circuits`.
std::vector<CnrResult> score_cnr(const std::vector<Circuit> &circuits, const DeviceModel &dev,
                                 const RunConfig &cfg);

/// Rejection, RepCap on survivors, composite scores and the winner (highest
/// score, then higher cnr, then lower id). Throws NoSurvivors.
SearchReport assemble_report(const std::vector<Circuit> &circuits, const std::vector<CnrResult> &cnr,
                             const Dataset &ds, const RunConfig &cfg);

/// Full pipeline: generate, CNR, reject, RepCap, score, pick.
SearchReport run_search(const DeviceModel &dev, const CircuitConfig &conf, const Dataset &ds, const RunConfig &cfg,
                        uint32_t n_candidates);

}  // namespace qcs
