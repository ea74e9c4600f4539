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

#include "qcs/search.h"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "qcs/noise.h"
#include "qcs/parallel.h"
#include "qcs/prob_dist.h"
#include "qcs/statevector.h"
#include "qcs/train.h"

namespace qcs {

double composite_score(double cnr, double rep, double alpha) {
    if (cnr < 0.0) throw std::invalid_argument("composite_score: cnr must be non-negative");
    if (!(alpha > 0.0)) throw std::invalid_argument("composite_score: alpha must be positive");
    return std::pow(cnr, alpha) * rep;
}

double true_fidelity(const Circuit &c, const DeviceModel &dev, const RunConfig &cfg, uint32_t k_samples, Rng &rng) {
    if (k_samples < 1) throw std::invalid_argument("true_fidelity: needs at least one sample");
    const auto spec = make_noise_spec(c, dev);
    std::vector<double> x(c.embedding_dim());
    std::vector<double> theta(c.n_trainable());
    double acc = 0.0;
    for (uint32_t k = 0; k < k_samples; ++k) {
        for (double &v : x) v = std::numbers::pi * rng.uniform();
        for (double &v : theta) v = 2.0 * std::numbers::pi * rng.uniform();
        const auto ideal = measure_dist(run(c, x, theta, SimOptions{cfg.max_qubits}), c.measured());
        const auto noisy = noisy_dist(c, spec, Binding{x, theta}, cfg.trajectories, cfg.shots, rng);
        acc += 1.0 - tvd(ideal, noisy);
    }
    return acc / k_samples;
}

double supercircuit_cost(double epochs, double x_train, double p_bar, double n_candidates, double x_valid) {
    return 2.0 * epochs * x_train * p_bar + n_candidates * x_valid;
}

uint64_t repcap_cost(uint64_t n_candidates, uint32_t n_classes, uint32_t d_c, uint32_t n_p) {
    return n_candidates * n_classes * d_c * n_p;
}

std::vector<Circuit> generate_candidates(const DeviceModel &dev, const CircuitConfig &conf, const RunConfig &cfg,
                                         uint32_t n) {
    std::vector<Circuit> out(n);
    parallel_for(n, cfg.workers, [&](size_t i) {
        Rng rng(derive_seed(cfg.rng_seed, "candidate", {i}));
        out[i] = generate_candidate(dev, conf, cfg, rng);
    });
    return out;
}

std::vector<CnrResult> score_cnr(const std::vector<Circuit> &circuits, const DeviceModel &dev,
                                 const RunConfig &cfg) {
    std::vector<CnrResult> out(circuits.size());
    RunConfig inner = cfg;
    inner.workers = 1;
    parallel_for(circuits.size(), cfg.workers, [&](size_t i) { out[i] = cnr_score(circuits[i], i, dev, inner); });
    return out;
}

bool readout_responds_to_parameters(const Circuit &c, uint32_t n_readouts, Rng &rng, uint32_t points) {
    if (c.n_trainable() == 0) return false;
    std::vector<double> x(c.embedding_dim());
    std::vector<double> theta(c.n_trainable());
    for (uint32_t k = 0; k < points; ++k) {
        for (double &v : x) v = std::numbers::pi * rng.uniform();
        for (double &v : theta) v = 2.0 * std::numbers::pi * rng.uniform();
        for (double d : expectation_jacobian(c, x, theta, n_readouts)) {
            if (std::abs(d) > 1e-9) return true;
        }
    }
    return false;
}

SearchReport assemble_report(const std::vector<Circuit> &circuits, const std::vector<CnrResult> &cnr,
                             const Dataset &ds, const RunConfig &cfg) {
    if (circuits.size() != cnr.size() || circuits.empty()) {
        throw std::invalid_argument("assemble_report: one CNR result per circuit required");
    }
    SearchReport report;
    report.config = cfg;
    report.seed = cfg.rng_seed;
    report.n_classes = ds.n_classes();
    report.n_train = ds.train().size();
    report.n_test = ds.test().size();
    report.candidates.resize(circuits.size());
    for (size_t i = 0; i < circuits.size(); ++i) {
        if (cnr[i].id != i) throw std::invalid_argument("assemble_report: CNR ids must match positions");
        auto &rec = report.candidates[i];
        rec.id = i;
        rec.circuit = circuits[i];
        rec.cnr = cnr[i].cnr;
        rec.rejected = true;
    }
    auto outcome = reject(cnr, cfg);
    report.ledger.cnr_executions = uint64_t{cfg.replicas} * circuits.size();
    if (outcome.kept.empty()) {
        throw NoSurvivors("no candidate survived rejection (threshold " + std::to_string(cfg.cnr_threshold) + ")");
    }

    // A readout that no parameter can move is fixed at initialization, so
    // training cannot repair it however well it separates the classes.
    constexpr uint32_t kProbePoints = 2;
    std::vector<uint64_t> trainable;
    for (uint64_t id : outcome.kept) {
        const auto &c = circuits[id];
        Rng rng(derive_seed(cfg.rng_seed, "trainability", {id}));
        report.ledger.trainability_executions += uint64_t{kProbePoints} * 2 * c.n_trainable();
        if (readout_responds_to_parameters(c, readout_count(c, ds.n_classes()), rng, kProbePoints)) {
            trainable.push_back(id);
        } else {
            report.candidates[id].untrainable = true;
        }
    }
    if (trainable.empty()) throw NoSurvivors("no kept candidate has a readout that depends on its parameters");
    outcome.kept = std::move(trainable);

    const auto plan = make_repcap_plan(ds, cfg);
    RunConfig inner = cfg;
    inner.workers = 1;
    std::vector<RepCapResult> reps(outcome.kept.size());
    parallel_for(outcome.kept.size(), cfg.workers, [&](size_t k) {
        const uint64_t id = outcome.kept[k];
        reps[k] = repcap_score(circuits[id], id, ds, inner, plan);
    });

    bool have_winner = false;
    for (size_t k = 0; k < outcome.kept.size(); ++k) {
        auto &rec = report.candidates[outcome.kept[k]];
        rec.rejected = false;
        rec.rep = reps[k].rep;
        rec.score = composite_score(rec.cnr, reps[k].rep, cfg.alpha_cnr);
        report.ledger.repcap_executions += reps[k].executions;
        report.ledger.repcap_physical_executions += reps[k].physical_executions;
        ++report.ledger.performance_evaluations;
        if (!have_winner) {
            report.winner = rec.id;
            have_winner = true;
            continue;
        }
        const auto &best = report.candidates[report.winner];
        const bool better = *rec.score > *best.score ||
                            (*rec.score == *best.score &&
                             (rec.cnr > best.cnr || (rec.cnr == best.cnr && rec.id < best.id)));
        if (better) report.winner = rec.id;
    }
    return report;
}

SearchReport run_search(const DeviceModel &dev, const CircuitConfig &conf, const Dataset &ds, const RunConfig &cfg,
                        uint32_t n_candidates) {
    if (n_candidates < 2) throw std::invalid_argument("run_search: needs at least two candidates");
    const auto circuits = generate_candidates(dev, conf, cfg, n_candidates);
    const auto cnr = score_cnr(circuits, dev, cfg);
    auto report = assemble_report(circuits, cnr, ds, cfg);
    report.circuit_config = conf;
    return report;
}

}  // namespace qcs
