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

#include "qcs/train.h"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "qcs/noise.h"
#include "qcs/parallel.h"
#include "qcs/rng.h"
#include "qcs/statevector.h"

namespace qcs {

std::vector<std::string> TrainConfig::validate() const {
    std::vector<std::string> out;
    if (epochs < 1) out.push_back("epochs: must be at least 1");
    if (batch < 1) out.push_back("batch: must be at least 1");
    if (!(lr >= 0.0) || !std::isfinite(lr)) out.push_back("lr: must be non-negative");
    if (!(beta1 >= 0.0 && beta1 < 1.0)) out.push_back("beta1: must lie in [0, 1)");
    if (!(beta2 >= 0.0 && beta2 < 1.0)) out.push_back("beta2: must lie in [0, 1)");
    if (!(eps > 0.0)) out.push_back("eps: must be positive");
    return out;
}

uint32_t readout_count(const Circuit &c, uint32_t n_classes) {
    const auto k = static_cast<uint32_t>(c.measured().size());
    if (n_classes == 2 && k == 1) return 1;
    if (k < n_classes) {
        throw std::invalid_argument("circuit measures " + std::to_string(k) + " qubits; " +
                                    std::to_string(n_classes) + " classes need as many");
    }
    return n_classes;
}

std::vector<double> predict_from_z(std::span<const double> z, uint32_t n_classes) {
    if (n_classes == 2 && z.size() == 1) {
        return {(1.0 + z[0]) / 2.0, (1.0 - z[0]) / 2.0};
    }
    if (z.size() < n_classes) throw std::invalid_argument("predict: fewer readouts than classes");
    const double m = *std::max_element(z.begin(), z.begin() + n_classes);
    std::vector<double> p(n_classes);
    double total = 0.0;
    for (uint32_t c = 0; c < n_classes; ++c) {
        p[c] = std::exp(z[c] - m);
        total += p[c];
    }
    for (double &v : p) v /= total;
    return p;
}

namespace {

std::span<const uint32_t> readouts(const Circuit &c, uint32_t n) {
    return std::span<const uint32_t>(c.measured()).first(n);
}

// Runs c with gate `shifted` offset by `delta`, starting from `state` which
// already holds the output of gates [0, from).
void run_suffix(StateVector &state, const Circuit &c, size_t from, std::span<const double> x,
                std::span<const double> theta, size_t shifted, double delta) {
    const auto &gates = c.gates();
    for (size_t g = from; g < gates.size(); ++g) {
        auto angles = resolve_angles(gates[g], x, theta);
        if (g == shifted) angles[0] += delta;
        state.apply(gates[g], angles);
    }
}

// dL/dz for one sample's readouts z.
std::vector<double> loss_z_gradient(std::span<const double> z, const std::vector<double> &p, uint32_t label,
                                    uint32_t n_classes) {
    const double scale = 2.0 / n_classes;
    std::vector<double> dl_dp(n_classes);
    for (uint32_t c = 0; c < n_classes; ++c) dl_dp[c] = scale * (p[c] - (c == label ? 1.0 : 0.0));
    std::vector<double> out(z.size(), 0.0);
    if (n_classes == 2 && z.size() == 1) {
        out[0] = 0.5 * dl_dp[0] - 0.5 * dl_dp[1];
        return out;
    }
    for (size_t j = 0; j < z.size(); ++j) {
        double acc = 0.0;
        for (uint32_t c = 0; c < n_classes; ++c) acc += dl_dp[c] * p[c] * ((c == j ? 1.0 : 0.0) - p[j]);
        out[j] = acc;
    }
    return out;
}

}  // namespace

std::vector<double> predict(const Circuit &c, std::span<const double> x, std::span<const double> theta,
                            uint32_t n_classes) {
    const uint32_t k = readout_count(c, n_classes);
    const auto state = run(c, x, theta);
    return predict_from_z(z_expectations(state, readouts(c, k)), n_classes);
}

double sample_mse(std::span<const double> probs, uint32_t label) {
    double acc = 0.0;
    for (size_t c = 0; c < probs.size(); ++c) {
        const double e = probs[c] - (c == label ? 1.0 : 0.0);
        acc += e * e;
    }
    return acc / static_cast<double>(probs.size());
}

namespace {

std::vector<double> jacobian_unchecked(const Circuit &c, std::span<const double> x, std::span<const double> theta,
                                       uint32_t n_readouts, double shift) {
    const uint32_t p = c.n_trainable();
    const auto meas = readouts(c, n_readouts);
    std::vector<double> jac(size_t{n_readouts} * p, 0.0);
    const auto &gates = c.gates();
    StateVector prefix(c.n_qubits());
    StateVector work(c.n_qubits());
    for (size_t g = 0; g < gates.size(); ++g) {
        if (gates[g].role == ParamRole::Trainable) {
            const uint32_t k = gates[g].index;
            for (const double sign : {1.0, -1.0}) {
                std::copy(prefix.amplitudes().begin(), prefix.amplitudes().end(), work.amplitudes().begin());
                run_suffix(work, c, g, x, theta, g, sign * shift);
                const auto z = z_expectations(work, meas);
                for (uint32_t j = 0; j < n_readouts; ++j) jac[size_t{j} * p + k] += 0.5 * sign * z[j];
            }
        }
        prefix.apply(gates[g], resolve_angles(gates[g], x, theta));
    }
    return jac;
}

}  // namespace

std::vector<double> expectation_jacobian(const Circuit &c, std::span<const double> x,
                                         std::span<const double> theta, uint32_t n_readouts, double shift) {
    (void)run(c, x, theta);  // shape checks
    if (n_readouts > c.measured().size()) throw std::invalid_argument("more readouts than measured qubits");
    return jacobian_unchecked(c, x, theta, n_readouts, shift);
}

LossGradient loss_gradient(const Circuit &c, std::span<const Sample> batch, std::span<const double> theta,
                           uint32_t n_classes, const TrainConfig &cfg) {
    const uint32_t k = readout_count(c, n_classes);
    const uint32_t p = c.n_trainable();
    std::vector<double> losses(batch.size());
    std::vector<std::vector<double>> grads(batch.size());
    parallel_for(batch.size(), cfg.workers, [&](size_t i) {
        const auto &s = batch[i];
        const auto state = run(c, s.x, theta);
        const auto z = z_expectations(state, readouts(c, k));
        const auto probs = predict_from_z(z, n_classes);
        losses[i] = sample_mse(probs, s.y);
        const auto dl_dz = loss_z_gradient(z, probs, s.y, n_classes);
        const auto jac = jacobian_unchecked(c, s.x, theta, k, cfg.shift);
        std::vector<double> g(p, 0.0);
        for (uint32_t j = 0; j < k; ++j) {
            for (uint32_t t = 0; t < p; ++t) g[t] += dl_dz[j] * jac[size_t{j} * p + t];
        }
        grads[i] = std::move(g);
    });
    LossGradient out;
    out.gradient.assign(p, 0.0);
    const double inv = batch.empty() ? 0.0 : 1.0 / static_cast<double>(batch.size());
    for (size_t i = 0; i < batch.size(); ++i) {
        out.loss += losses[i] * inv;
        for (uint32_t t = 0; t < p; ++t) out.gradient[t] += grads[i][t] * inv;
    }
    return out;
}

double loss(const Circuit &c, std::span<const Sample> samples, std::span<const double> theta, uint32_t n_classes,
            unsigned workers) {
    std::vector<double> losses(samples.size());
    parallel_for(samples.size(), workers, [&](size_t i) {
        losses[i] = sample_mse(predict(c, samples[i].x, theta, n_classes), samples[i].y);
    });
    double acc = 0.0;
    for (double l : losses) acc += l;
    return samples.empty() ? 0.0 : acc / static_cast<double>(samples.size());
}

TrainResult train(const Circuit &c, const Dataset &ds, const TrainConfig &cfg,
                  std::optional<std::vector<double>> init) {
    if (const auto errors = cfg.validate(); !errors.empty()) throw std::invalid_argument(errors.front());
    const uint32_t p = c.n_trainable();
    const uint32_t n_c = ds.n_classes();
    TrainResult out;
    if (init) {
        if (init->size() != p) throw std::invalid_argument("initial theta has the wrong length");
        out.theta = std::move(*init);
    } else {
        Rng rng(derive_seed(cfg.seed, "theta-init"));
        out.theta.resize(p);
        for (double &t : out.theta) t = 2.0 * std::numbers::pi * rng.uniform();
    }
    const auto &train_set = ds.train();
    out.initial_loss = loss(c, train_set, out.theta, n_c, cfg.workers);
    std::vector<double> m(p, 0.0);
    std::vector<double> v(p, 0.0);
    uint64_t step = 0;
    std::vector<size_t> order(train_set.size());
    std::vector<Sample> batch;
    for (uint32_t epoch = 0; epoch < cfg.epochs; ++epoch) {
        for (size_t i = 0; i < order.size(); ++i) order[i] = i;
        Rng rng(derive_seed(cfg.seed, "batches", {epoch}));
        std::shuffle(order.begin(), order.end(), rng);
        for (size_t start = 0; start < order.size(); start += cfg.batch) {
            const size_t end = std::min(order.size(), start + cfg.batch);
            batch.clear();
            for (size_t i = start; i < end; ++i) batch.push_back(train_set[order[i]]);
            if (p == 0) continue;
            const auto lg = loss_gradient(c, batch, out.theta, n_c, cfg);
            ++step;
            const double b1t = 1.0 - std::pow(cfg.beta1, static_cast<double>(step));
            const double b2t = 1.0 - std::pow(cfg.beta2, static_cast<double>(step));
            for (uint32_t t = 0; t < p; ++t) {
                const double g = lg.gradient[t];
                m[t] = cfg.beta1 * m[t] + (1.0 - cfg.beta1) * g;
                v[t] = cfg.beta2 * v[t] + (1.0 - cfg.beta2) * g * g;
                out.theta[t] -= cfg.lr * (m[t] / b1t) / (std::sqrt(v[t] / b2t) + cfg.eps);
            }
        }
        out.history.push_back(loss(c, train_set, out.theta, n_c, cfg.workers));
    }
    return out;
}

EvalMetrics evaluate(const Circuit &c, std::span<const double> theta, std::span<const Sample> samples,
                     uint32_t n_classes, const std::optional<NoisyEval> &noisy, unsigned workers) {
    const uint32_t k = readout_count(c, n_classes);
    std::optional<NoiseSpec> spec;
    if (noisy) {
        if (noisy->device == nullptr) throw std::invalid_argument("noisy evaluation needs a device");
        spec = make_noise_spec(c, *noisy->device);
    }
    std::vector<double> mse(samples.size());
    std::vector<uint8_t> correct(samples.size());
    parallel_for(samples.size(), workers, [&](size_t i) {
        const auto &s = samples[i];
        std::vector<double> probs;
        if (spec) {
            Rng rng(derive_seed(noisy->run.rng_seed, "noisy-eval", {i}));
            const auto dist = noisy_dist(c, *spec, Binding{s.x, theta}, noisy->run.trajectories, noisy->run.shots, rng);
            auto z = z_expectations(dist);
            z.resize(k);
            probs = predict_from_z(z, n_classes);
        } else {
            probs = predict(c, s.x, theta, n_classes);
        }
        mse[i] = sample_mse(probs, s.y);
        const auto best = static_cast<uint32_t>(std::max_element(probs.begin(), probs.end()) - probs.begin());
        correct[i] = best == s.y ? 1 : 0;
    });
    EvalMetrics out;
    if (samples.empty()) return out;
    for (size_t i = 0; i < samples.size(); ++i) {
        out.mse += mse[i];
        out.accuracy += correct[i];
    }
    out.mse /= static_cast<double>(samples.size());
    out.accuracy /= static_cast<double>(samples.size());
    return out;
}

}  // namespace qcs
