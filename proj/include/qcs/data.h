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
#include <string>
#include <vector>

#include "qcs/dataset.h"

namespace qcs {

enum class Normalization {
    None,
    MinMaxPi,  // each feature mapped onto [0, pi]
    ZScore,
};

std::optional<Normalization> parse_normalization(const std::string &name);
std::string normalization_name(Normalization n);

/// Rescales every feature column in place. Constant columns map to 0.
void normalize(std::vector<Sample> &samples, Normalization n);

/// Splits by class so each class contributes round(train_fraction * count)
/// samples to train (at least one to each split). Sample order within a class
/// is shuffled with `seed` first. Throws when a class has fewer than two
/// samples or train_fraction lies outside (0, 1).
Dataset stratified_split(const std::vector<Sample> &samples, uint32_t n_classes, double train_fraction,
                         uint64_t seed);

/// Two interleaved half circles; n/2 points per class on a uniform grid of
/// t over [0, pi], plus Gaussian noise. Features are returned raw (not
/// normalized). Throws on odd n.
std::vector<Sample> make_moons(uint32_t n, double noise_sd, uint64_t seed);

struct DelimitedSpec {
    std::string path;
    std::string label_column = "label";
    char delimiter = ',';
};

/// Reads a header-led delimited table. Every column except the label column is
/// a feature. Labels must be non-negative integers. Throws std::runtime_error
/// naming the offending line for ragged rows or non-numeric cells.
std::vector<Sample> load_delimited(const DelimitedSpec &spec);

/// Class count implied by the labels (max label + 1).
uint32_t infer_n_classes(const std::vector<Sample> &samples);

}  // namespace qcs
