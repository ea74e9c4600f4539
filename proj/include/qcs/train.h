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
#include <numbers>
#include <optional>
#include <span>
#include <vector>

#include "qcs/circuit.h"
#include "qcs/dataset.h"
#include "qcs/device.h"
#include "qcs/run_config.h"

namespace qcs {

struct TrainConfig {
    uint32_t epochs = 200;
    uint32_t batch = 128;
    double lr = 0.01;
    double beta1 = 0.9;
    double beta2 = 0.999;
    double eps = 1e-8;
    double shift = std::numbers::pi / 2;
    uint64_t seed = 0;
    unsigned workers = 0;

    std::vector<std::string> validate() const;
};

/// Number of <Z> readouts the prediction map consumes: 1 for a binary task
/// on a single measured qubit, n_classes otherwise. Throws std::invalid_argument
/// when the circuit measures too few qubits.
uint32_t readout_count(const Circuit &c, uint32_t n_classes);

/// Class probabilities from <Z> readouts. Binary single-readout tasks use
/// p(1) = (1 - <Z>) / 2; otherwise a softmax over the first n_classes values.
std::vector<double> predict_from_z(std::span<const double> z, uint32_t n_classes);

/// Noiseless class probabilities of c(x, theta).
std::vector<double> predict(const Circuit &c, std::span<const double> x, std::span<const double> theta,
                            uint32_t n_classes);

/// Mean over classes of (p_c - onehot(y)_c)^2.
double sample_mse(std::span<const double> probs, uint32_t label);

/// d<Z_j>/d theta_k for the first `n_readouts` measured qubits by the
/// parameter-shift rule, row-major [j][k]. A parameter that drives several
/// gates gets the sum of the per-gate shifts.
std::vector<double> expectation_jacobian(const Circuit &c, std::span<const double> x,
                                         std::span<const double> theta, uint32_t n_readouts,
                                         double shift = std::numbers::pi / 2);

struct LossGradient {
    double loss = 0.0;             // mean sample MSE over the batch
    std::vector<double> gradient;  // d loss / d theta
};

/// Loss and parameter-shift gradient over `batch`.
LossGradient loss_gradient(const Circuit &c, std::span<const Sample> batch, std::span<const double> theta,
                           uint32_t n_classes, const TrainConfig &cfg);

/// Noiseless mean sample MSE over `samples`.
double loss(const Circuit &c, std::span<const Sample> samples, std::span<const double> theta, uint32_t n_classes,
            unsigned workers = 1);

struct TrainResult {
    std::vector<double> theta;
    double initial_loss = 0.0;
    std::vector<double> history;  // full training loss after each epoch
};

/// Minibatch Adam on the noiseless training split. theta starts uniform over
/// [0, 2pi); batch order and initialization derive from cfg.seed. `init`
/// overrides the starting point.
TrainResult train(const Circuit &c, const Dataset &ds, const TrainConfig &cfg,
                  std::optional<std::vector<double>> init = std::nullopt);

struct EvalMetrics {
    double accuracy = 0.0;
    double mse = 0.0;
};

/// Noisy inference settings: outputs come from the trajectory noise model
/// instead of exact amplitudes.
struct NoisyEval {
    const DeviceModel *device = nullptr;
    RunConfig run;
};

/// Accuracy (argmax, ties to the lower class) and mean sample MSE.
EvalMetrics evaluate(const Circuit &c, std::span<const double> theta, std::span<const Sample> samples,
                     uint32_t n_classes, const std::optional<NoisyEval> &noisy = std::nullopt, unsigned workers = 1);

}  // namespace qcs
