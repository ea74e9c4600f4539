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
#include <vector>

#include "qcs/circuit.h"
#include "qcs/device.h"
#include "qcs/rng.h"
#include "qcs/run_config.h"

namespace qcs {

struct CnrResult {
    uint64_t id = 0;
    std::vector<double> fidelities;  // one per replica
    double cnr = 0.0;                // mean of fidelities
};

/// Builds a CnrResult from replica fidelities; cnr is their mean.
CnrResult make_cnr_result(uint64_t id, std::vector<double> fidelities);

/// Clifford replica: each 1q gate becomes a uniform draw from {H, S, Z, X, Y},
/// each 2q gate a CX on the same qubit pair. Structure, qubits, mapping and
/// measured set are unchanged.
Circuit make_replica(const Circuit &c, Rng &rng);

/// Fidelity (1 - TVD) of one replica: exact stabilizer output against the
/// noisy output on `dev`.
double replica_fidelity(const Circuit &replica, const DeviceModel &dev, const RunConfig &cfg, Rng &rng);

/// CNR of `c` over cfg.replicas replicas. Randomness is derived from
/// (cfg.rng_seed, id, replica index), so results do not depend on evaluation
/// order.
CnrResult cnr_score(const Circuit &c, uint64_t id, const DeviceModel &dev, const RunConfig &cfg);

struct RejectOutcome {
    std::vector<uint64_t> kept;
    std::vector<uint64_t> rejected;
};

/// Early rejection. Candidates are ranked by descending cnr (ties by id);
/// the rank cut keeps the first ceil(keep_fraction * N). Under KeepRule::Both a
/// candidate must also reach cnr_threshold; under KeepRule::Either one
/// condition suffices. Both lists come back in rank order.
RejectOutcome reject(const std::vector<CnrResult> &results, const RunConfig &cfg);

/// ceil(keep_fraction * n), computed robustly against rounding.
size_t rank_cut(size_t n, double keep_fraction);

}  // namespace qcs
