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

namespace qcs {

struct Sample {
    std::vector<double> x;
    uint32_t y = 0;
};

/// Labelled samples with a train/test split. Validated on construction:
/// labels in [0, n_classes), a common feature dimension, both splits nonempty.
class Dataset {
  public:
    Dataset(std::vector<Sample> train, std::vector<Sample> test, uint32_t n_classes);

    const std::vector<Sample> &train() const { return train_; }
    const std::vector<Sample> &test() const { return test_; }
    uint32_t n_classes() const { return n_classes_; }
    uint32_t dim() const { return dim_; }

    /// Indices into train() grouped by label.
    std::vector<std::vector<size_t>> train_indices_by_class() const;

  private:
    std::vector<Sample> train_;
    std::vector<Sample> test_;
    uint32_t n_classes_;
    uint32_t dim_ = 0;
};

}  // namespace qcs
