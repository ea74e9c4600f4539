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

#include "qcs/prob_dist.h"

#include <cmath>
#include <stdexcept>
#include <string>

namespace qcs {

ProbDist::ProbDist(uint32_t n_bits, std::vector<double> probs) : n_bits_(n_bits), probs_(std::move(probs)) {
    if (n_bits_ > 30 || probs_.size() != (size_t{1} << n_bits_)) {
        throw std::invalid_argument("distribution over " + std::to_string(n_bits_) + " bits needs 2^" +
                                    std::to_string(n_bits_) + " entries, got " + std::to_string(probs_.size()));
    }
    double sum = 0.0;
    for (double &p : probs_) {
        if (!(p >= -kNormTolerance)) {
            throw std::invalid_argument("negative probability " + std::to_string(p));
        }
        if (p < 0.0) p = 0.0;
        sum += p;
    }
    if (std::abs(sum - 1.0) > kNormTolerance) {
        throw std::invalid_argument("probabilities sum to " + std::to_string(sum));
    }
}

ProbDist ProbDist::point(uint32_t n_bits, uint64_t outcome) {
    std::vector<double> probs(size_t{1} << n_bits, 0.0);
    probs.at(outcome) = 1.0;
    return ProbDist(n_bits, std::move(probs));
}

ProbDist ProbDist::uniform(uint32_t n_bits) {
    const size_t n = size_t{1} << n_bits;
    return ProbDist(n_bits, std::vector<double>(n, 1.0 / static_cast<double>(n)));
}

double ProbDist::total() const {
    double sum = 0.0;
    for (double p : probs_) sum += p;
    return sum;
}

double tvd(const ProbDist &p, const ProbDist &q) {
    if (p.n_bits() != q.n_bits()) {
        throw std::invalid_argument("tvd: distributions over " + std::to_string(p.n_bits()) + " and " +
                                    std::to_string(q.n_bits()) + " bits");
    }
    double acc = 0.0;
    for (size_t i = 0; i < p.size(); ++i) {
        acc += std::abs(p[i] - q[i]);
    }
    return std::min(1.0, 0.5 * acc);
}

}  // namespace qcs
