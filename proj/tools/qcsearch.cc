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

#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "qcs/json_io.h"
#include "qcs/pipeline.h"
#include "qcs/search.h"

namespace {

struct CommonFlags {
    std::string config;
    std::optional<uint64_t> seed;
    std::optional<unsigned> workers;
    std::optional<std::string> out;

    qcs::PipelineConfig load() const {
        qcs::CliOverrides cli{seed, workers, std::nullopt};
        if (out) cli.out = *out;
        std::optional<std::filesystem::path> file;
        if (!config.empty()) file = config;
        return qcs::load_pipeline_config(file, qcs::process_env(), cli);
    }
};

void add_common(CLI::App *cmd, CommonFlags &flags) {
    cmd->add_option("--config", flags.config, "JSON configuration file");
    cmd->add_option("--seed", flags.seed, "Root seed");
    cmd->add_option("--workers", flags.workers, "Worker threads (0 = all cores)");
    cmd->add_option("--out", flags.out, "Output directory");
}

}  // namespace

int main(int argc, char **argv) {
    CLI::App app{"Device-aware variational circuit search"};
    app.require_subcommand(1);

    CommonFlags flags;
    std::string circuits;
    std::string kept_from;
    std::string report;

    auto *generate = app.add_subcommand("generate", "Generate candidate circuits");
    add_common(generate, flags);

    auto *cnr = app.add_subcommand("cnr", "Score circuits by Clifford noise resilience");
    add_common(cnr, flags);
    cnr->add_option("--circuits", circuits, "Circuits file")->required();

    auto *repcap = app.add_subcommand("repcap", "Score circuits by representational capacity");
    add_common(repcap, flags);
    repcap->add_option("--circuits", circuits, "Circuits file")->required();
    repcap->add_option("--kept-from", kept_from, "cnr.tsv whose kept rows select the circuits");

    auto *search = app.add_subcommand("search", "Run the full search pipeline");
    add_common(search, flags);

    auto *train = app.add_subcommand("train", "Train one circuit");
    add_common(train, flags);
    train->add_option("--circuit", circuits, "Circuit file")->required();

    auto *rep = app.add_subcommand("report", "Budget comparison for a finished search");
    rep->add_option("--report", report, "search_report.json")->required();
    rep->add_option("--out", flags.out, "Output directory (default: next to the report)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : qcs::kExitConfig;
    }

    try {
        if (*generate) {
            qcs::cmd_generate(flags.load(), std::cout);
        } else if (*cnr) {
            qcs::cmd_cnr(flags.load(), circuits, std::cout);
        } else if (*repcap) {
            std::optional<std::filesystem::path> kept;
            if (!kept_from.empty()) kept = kept_from;
            qcs::cmd_repcap(flags.load(), circuits, kept, std::cout);
        } else if (*search) {
            qcs::cmd_search(flags.load(), std::cout);
        } else if (*train) {
            qcs::cmd_train(flags.load(), circuits, std::cout);
        } else if (*rep) {
            std::optional<std::filesystem::path> out;
            if (flags.out) out = *flags.out;
            qcs::cmd_report(report, out, std::cout);
        }
    } catch (const qcs::ConfigError &e) {
        std::cerr << "config error: " << e.what() << "\n";
        return qcs::kExitConfig;
    } catch (const qcs::NoSurvivors &e) {
        std::cerr << "no survivors: " << e.what() << "\n";
        return qcs::kExitNoSurvivors;
    } catch (const qcs::IoError &e) {
        std::cerr << "io error: " << e.what() << "\n";
        return qcs::kExitIo;
    } catch (const std::invalid_argument &e) {
        std::cerr << "invalid input: " << e.what() << "\n";
        return qcs::kExitConfig;
    } catch (const std::exception &e) {
        std::cerr << "error: " << e.what() << "\n";
        return qcs::kExitFailure;
    }
    return qcs::kExitOk;
}
