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

#include <filesystem>
#include <stdexcept>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "qcs/circuit.h"
#include "qcs/device.h"

namespace qcs {

/// File could not be read, written or parsed.
class IoError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

nlohmann::json device_to_json(const DeviceModel &dev);
/// Throws std::invalid_argument on schema or calibration errors.
DeviceModel device_from_json(const nlohmann::json &j);

/// {n_qubits, mapping, gates: [{kind, qubits, role, value}], measured}.
/// `value` holds the index of a trainable or embedding gate, the angle of a
/// fixed rotation, the three angles of a U3, and is absent otherwise.
nlohmann::json circuit_to_json(const Circuit &c);
Circuit circuit_from_json(const nlohmann::json &j);

nlohmann::json read_json_file(const std::filesystem::path &path);
void write_text_file(const std::filesystem::path &path, const std::string &text);
/// Pretty-printed with a trailing newline.
void write_json_file(const std::filesystem::path &path, const nlohmann::json &j);

DeviceModel load_device(const std::filesystem::path &path);

/// A JSON array of circuit objects, or a single circuit object.
std::vector<Circuit> load_circuits(const std::filesystem::path &path);

}  // namespace qcs
