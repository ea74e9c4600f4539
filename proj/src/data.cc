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

#include "qcs/data.h"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numbers>
#include <random>
#include <sstream>
#include <stdexcept>

#include "qcs/rng.h"

namespace qcs {

Dataset::Dataset(std::vector<Sample> train, std::vector<Sample> test, uint32_t n_classes)
    : train_(std::move(train)), test_(std::move(test)), n_classes_(n_classes) {
    if (train_.empty() || test_.empty()) throw std::invalid_argument("dataset: both splits must be nonempty");
    if (n_classes_ == 0) throw std::invalid_argument("dataset: n_classes must be positive");
    dim_ = static_cast<uint32_t>(train_[0].x.size());
    for (const auto *split : {&train_, &test_}) {
        for (const auto &s : *split) {
            if (s.x.size() != dim_) throw std::invalid_argument("dataset: samples differ in dimension");
            if (s.y >= n_classes_) {
                throw std::invalid_argument("dataset: label " + std::to_string(s.y) + " outside [0, " +
                                            std::to_string(n_classes_) + ")");
            }
        }
    }
}

std::vector<std::vector<size_t>> Dataset::train_indices_by_class() const {
    std::vector<std::vector<size_t>> out(n_classes_);
    for (size_t i = 0; i < train_.size(); ++i) out[train_[i].y].push_back(i);
    return out;
}

std::optional<Normalization> parse_normalization(const std::string &name) {
    if (name == "none") return Normalization::None;
    if (name == "minmax") return Normalization::MinMaxPi;
    if (name == "zscore") return Normalization::ZScore;
    return std::nullopt;
}

std::string normalization_name(Normalization n) {
    switch (n) {
        case Normalization::None:
            return "none";
        case Normalization::MinMaxPi:
            return "minmax";
        case Normalization::ZScore:
            return "zscore";
    }
    return "none";
}

void normalize(std::vector<Sample> &samples, Normalization n) {
    if (n == Normalization::None || samples.empty()) return;
    const size_t dim = samples[0].x.size();
    for (size_t f = 0; f < dim; ++f) {
        if (n == Normalization::MinMaxPi) {
            double lo = samples[0].x[f];
            double hi = lo;
            for (const auto &s : samples) {
                lo = std::min(lo, s.x[f]);
                hi = std::max(hi, s.x[f]);
            }
            const double span = hi - lo;
            for (auto &s : samples) {
                if (span <= 0.0) {
                    s.x[f] = 0.0;
                } else if (s.x[f] == hi) {
                    s.x[f] = std::numbers::pi;  // exact endpoint
                } else {
                    s.x[f] = (s.x[f] - lo) / span * std::numbers::pi;
                }
            }
        } else {
            double mu = 0.0;
            for (const auto &s : samples) mu += s.x[f];
            mu /= static_cast<double>(samples.size());
            double var = 0.0;
            for (const auto &s : samples) var += (s.x[f] - mu) * (s.x[f] - mu);
            const double sd = std::sqrt(var / static_cast<double>(samples.size()));
            for (auto &s : samples) s.x[f] = sd > 0.0 ? (s.x[f] - mu) / sd : 0.0;
        }
    }
}

Dataset stratified_split(const std::vector<Sample> &samples, uint32_t n_classes, double train_fraction,
                         uint64_t seed) {
    if (!(train_fraction > 0.0 && train_fraction < 1.0)) {
        throw std::invalid_argument("train_fraction must lie in (0, 1)");
    }
    std::vector<std::vector<size_t>> by_class(n_classes);
    for (size_t i = 0; i < samples.size(); ++i) {
        if (samples[i].y >= n_classes) throw std::invalid_argument("label outside class range");
        by_class[samples[i].y].push_back(i);
    }
    Rng rng(derive_seed(seed, "split"));
    std::vector<Sample> train;
    std::vector<Sample> test;
    for (uint32_t c = 0; c < n_classes; ++c) {
        auto &idx = by_class[c];
        if (idx.size() < 2) {
            throw std::invalid_argument("class " + std::to_string(c) + " needs at least two samples to split");
        }
        std::shuffle(idx.begin(), idx.end(), rng);
        auto n_train = static_cast<size_t>(std::llround(train_fraction * static_cast<double>(idx.size())));
        n_train = std::clamp<size_t>(n_train, 1, idx.size() - 1);
        for (size_t k = 0; k < idx.size(); ++k) (k < n_train ? train : test).push_back(samples[idx[k]]);
    }
    return Dataset(std::move(train), std::move(test), n_classes);
}

std::vector<Sample> make_moons(uint32_t n, double noise_sd, uint64_t seed) {
    if (n % 2 != 0 || n == 0) throw std::invalid_argument("make_moons: n must be even and positive");
    const uint32_t half = n / 2;
    Rng rng(derive_seed(seed, "moons"));
    std::normal_distribution<double> noise(0.0, 1.0);
    std::vector<Sample> out;
    out.reserve(n);
    for (uint32_t c = 0; c < 2; ++c) {
        for (uint32_t i = 0; i < half; ++i) {
            const double t = half == 1 ? 0.0 : std::numbers::pi * i / (half - 1);
            Sample s;
            if (c == 0) {
                s.x = {std::cos(t), std::sin(t)};
            } else {
                s.x = {1.0 - std::cos(t), 0.5 - std::sin(t)};
            }
            s.y = c;
            if (noise_sd > 0.0) {
                for (double &v : s.x) v += noise_sd * noise(rng);
            }
            out.push_back(std::move(s));
        }
    }
    return out;
}

namespace {

std::vector<std::string> split_line(const std::string &line, char delim) {
    std::vector<std::string> cells;
    std::string cell;
    std::istringstream in(line);
    while (std::getline(in, cell, delim)) cells.push_back(cell);
    if (!line.empty() && line.back() == delim) cells.emplace_back();
    return cells;
}

std::string trim(std::string s) {
    const auto not_space = [](unsigned char ch) { return !std::isspace(ch); };
    s.erase(s.begin(), std::find_if(s.begin(), s.end(), not_space));
    s.erase(std::find_if(s.rbegin(), s.rend(), not_space).base(), s.end());
    return s;
}

double parse_cell(const std::string &cell, size_t line_no) {
    const std::string t = trim(cell);
    size_t used = 0;
    double v = 0.0;
    try {
        v = std::stod(t, &used);
    } catch (const std::exception &) {
        used = 0;
    }
    if (t.empty() || used != t.size() || !std::isfinite(v)) {
        throw std::runtime_error("line " + std::to_string(line_no) + ": non-numeric cell '" + t + "'");
    }
    return v;
}

}  // namespace

std::vector<Sample> load_delimited(const DelimitedSpec &spec) {
    std::ifstream in(spec.path);
    if (!in) throw std::runtime_error("cannot open " + spec.path);
    std::string line;
    size_t line_no = 0;
    std::vector<std::string> header;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (trim(line).empty()) continue;
        header = split_line(line, spec.delimiter);
        break;
    }
    if (header.empty()) throw std::runtime_error(spec.path + ": missing header row");
    size_t label_col = header.size();
    for (size_t k = 0; k < header.size(); ++k) {
        if (trim(header[k]) == spec.label_column) label_col = k;
    }
    if (label_col == header.size()) {
        throw std::runtime_error(spec.path + ": no column named '" + spec.label_column + "'");
    }
    std::vector<Sample> out;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (trim(line).empty()) continue;
        const auto cells = split_line(line, spec.delimiter);
        if (cells.size() != header.size()) {
            throw std::runtime_error("line " + std::to_string(line_no) + ": expected " +
                                     std::to_string(header.size()) + " cells, found " +
                                     std::to_string(cells.size()));
        }
        Sample s;
        for (size_t k = 0; k < cells.size(); ++k) {
            const double v = parse_cell(cells[k], line_no);
            if (k == label_col) {
                if (v < 0.0 || v != std::floor(v) || v > 1e6) {
                    throw std::runtime_error("line " + std::to_string(line_no) + ": label must be a non-negative integer");
                }
                s.y = static_cast<uint32_t>(v);
            } else {
                s.x.push_back(v);
            }
        }
        out.push_back(std::move(s));
    }
    if (out.empty()) throw std::runtime_error(spec.path + ": no data rows");
    return out;
}

uint32_t infer_n_classes(const std::vector<Sample> &samples) {
    uint32_t m = 0;
    for (const auto &s : samples) m = std::max(m, s.y + 1);
    return m;
}

}  // namespace qcs
