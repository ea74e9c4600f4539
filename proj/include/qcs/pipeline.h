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
#include <filesystem>
#include <functional>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "qcs/data.h"
#include "qcs/dataset.h"
#include "qcs/device.h"
#include "qcs/generate.h"
#include "qcs/run_config.h"
#include "qcs/search.h"
#include "qcs/train.h"

namespace qcs {

/// Invalid configuration; the message names the offending field.
class ConfigError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

enum ExitCode : int {
    kExitOk = 0,
    kExitFailure = 1,
    kExitConfig = 2,
    kExitNoSurvivors = 3,
    kExitIo = 4,
};

struct DeviceSource {
    std::optional<std::filesystem::path> path;  // calibration file; synthetic when absent
    SyntheticDeviceSpec synthetic;
};

struct DataSpec {
    enum class Source { Moons, File } source = Source::Moons;
    uint32_t n = 720;
    double noise_sd = 0.1;
    uint64_t seed = 0;
    std::filesystem::path path;
    std::string label_column = "label";
    Normalization normalization = Normalization::MinMaxPi;
    double train_fraction = 600.0 / 720.0;
};

struct PipelineConfig {
    DeviceSource device;
    DataSpec dataset;
    CircuitConfig circuit;
    RunConfig run;
    TrainConfig train;
    uint32_t n_candidates = 50;
    bool train_winner = true;
    uint64_t seed = 0;
    unsigned workers = 0;
    std::filesystem::path out = "qcsearch-out";
};

/// Command-line values that take precedence over the environment and file.
struct CliOverrides {
    std::optional<uint64_t> seed;
    std::optional<unsigned> workers;
    std::optional<std::filesystem::path> out;
};

using EnvLookup = std::function<std::optional<std::string>(const std::string &)>;

/// Reads ELIVAGAR_* variables from the process environment.
EnvLookup process_env();

/// The full configuration as JSON, defaults filled in.
nlohmann::json config_to_json(const PipelineConfig &cfg);

/// Merges, in increasing precedence, the defaults, the optional config file,
/// ELIVAGAR_<KEY> environment variables and the command-line overrides, then
/// validates. Relative paths in the file resolve against its directory.
/// Throws ConfigError (or IoError when the file cannot be read).
PipelineConfig load_pipeline_config(const std::optional<std::filesystem::path> &file, const EnvLookup &env,
                                    const CliOverrides &cli);

/// Parses and validates a configuration object (no environment).
PipelineConfig pipeline_config_from_json(const nlohmann::json &j, const std::filesystem::path &base_dir = {});

DeviceModel build_device(const PipelineConfig &cfg);
Dataset build_dataset(const PipelineConfig &cfg);

/// Per-stage commands. Each writes its artifacts below cfg.out and reports
/// progress on `log`. Errors surface as ConfigError, IoError, NoSurvivors or
/// std::invalid_argument.
void cmd_generate(const PipelineConfig &cfg, std::ostream &log);
void cmd_cnr(const PipelineConfig &cfg, const std::filesystem::path &circuits, std::ostream &log);
void cmd_repcap(const PipelineConfig &cfg, const std::filesystem::path &circuits,
                const std::optional<std::filesystem::path> &kept_from, std::ostream &log);
SearchReport cmd_search(const PipelineConfig &cfg, std::ostream &log);
void cmd_train(const PipelineConfig &cfg, const std::filesystem::path &circuit, std::ostream &log);
/// Budget comparison for a finished search report.
void cmd_report(const std::filesystem::path &report, const std::optional<std::filesystem::path> &out,
                std::ostream &log);

/// Structured search report (no timestamps; identical inputs give identical
/// bytes).
nlohmann::json report_to_json(const SearchReport &report);
std::string summary_table(const SearchReport &report);

/// Reads the kept ids from a cnr.tsv produced by cmd_cnr.
std::vector<uint64_t> read_kept_ids(const std::filesystem::path &cnr_tsv);

}  // namespace qcs
