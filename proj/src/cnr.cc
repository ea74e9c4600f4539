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

#include "qcs/cnr.h"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "qcs/noise.h"
#include "qcs/prob_dist.h"
#include "qcs/tableau.h"

namespace qcs {

CnrResult make_cnr_result(uint64_t id, std::vector<double> fidelities) {
    CnrResult r{id, std::move(fidelities), 0.0};
    if (!r.fidelities.empty()) {
        r.cnr = std::accumulate(r.fidelities.begin(), r.fidelities.end(), 0.0) /
                static_cast<double>(r.fidelities.size());
    }
    return r;
}

Circuit make_replica(const Circuit &c, Rng &rng) {
    constexpr GateKind kClifford1q[5] = {GateKind::H, GateKind::S, GateKind::Z, GateKind::X, GateKind::Y};
    std::vector<Gate> gates;
    gates.reserve(c.gates().size());
    for (const Gate &g : c.gates()) {
        if (is_two_qubit(g.kind)) {
            gates.push_back(Gate::two(GateKind::CX, g.qubits[0], g.qubits[1]));
        } else {
            gates.push_back(Gate::one(kClifford1q[rng.below(5)], g.qubits[0]));
        }
    }
    return c.with_gates(std::move(gates));
}

double replica_fidelity(const Circuit &replica, const DeviceModel &dev, const RunConfig &cfg, Rng &rng) {
    const ProbDist ideal = clifford_dist(replica);
    const ProbDist noisy = noisy_dist(replica, dev, std::nullopt, cfg, rng);
    return 1.0 - tvd(ideal, noisy);
}

CnrResult cnr_score(const Circuit &c, uint64_t id, const DeviceModel &dev, const RunConfig &cfg) {
    std::vector<double> fids;
    fids.reserve(cfg.replicas);
    for (uint32_t r = 0; r < cfg.replicas; ++r) {
        Rng rng(derive_seed(cfg.rng_seed, "replica", {id, r}));
        const Circuit replica = make_replica(c, rng);
        fids.push_back(replica_fidelity(replica, dev, cfg, rng));
    }
    return make_cnr_result(id, std::move(fids));
}

size_t rank_cut(size_t n, double keep_fraction) {
    const double raw = keep_fraction * static_cast<double>(n);
    auto cut = static_cast<size_t>(std::ceil(raw - 1e-9));
    return std::min(cut, n);
}

RejectOutcome reject(const std::vector<CnrResult> &results, const RunConfig &cfg) {
    std::vector<size_t> order(results.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](size_t a, size_t b) {
        if (results[a].cnr != results[b].cnr) return results[a].cnr > results[b].cnr;
        return results[a].id < results[b].id;
    });
    const size_t cut = rank_cut(results.size(), cfg.keep_fraction);
    RejectOutcome out;
    for (size_t rank = 0; rank < order.size(); ++rank) {
        const CnrResult &r = results[order[rank]];
        const bool above = r.cnr >= cfg.cnr_threshold;
        const bool in_top = rank < cut;
        const bool keep = cfg.keep_rule == KeepRule::Both ? (above && in_top) : (above || in_top);
        (keep ? out.kept : out.rejected).push_back(r.id);
    }
    return out;
}

}  // namespace qcs
