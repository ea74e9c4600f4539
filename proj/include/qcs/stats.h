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

#include <span>
#include <vector>

namespace qcs {

double mean(std::span<const double> v);
/// 1-based ranks; ties receive the average of the ranks they span.
std::vector<double> average_ranks(std::span<const double> v);
double pearson(std::span<const double> a, std::span<const double> b);
/// Spearman rank correlation (Pearson on tie-averaged ranks).
double spearman(std::span<const double> a, std::span<const double> b);

}  // namespace qcs
