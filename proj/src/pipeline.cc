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

#include "qcs/pipeline.h"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "qcs/cnr.h"
#include "qcs/json_io.h"
#include "qcs/parallel.h"
#include "qcs/repcap.h"

namespace qcs {

using nlohmann::json;
namespace fs = std::filesystem;

namespace {

std::string topology_name(Topology t) {
    switch (t) {
        case Topology::Line:
            return "line";
        case Topology::Ring:
            return "ring";
        case Topology::Grid:
            return "grid";
        case Topology::HeavyHex:
            return "heavy_hex";
    }
    return "grid";
}

std::string keep_rule_name(KeepRule r) { return r == KeepRule::Both ? "both" : "either"; }

std::string upper(std::string s) {
    for (char &c : s) c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
    return s;
}

std::string format_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

json run_to_json(const RunConfig &r) {
    return {{"d_c", r.d_c},
            {"n_p", r.n_p},
            {"replicas", r.replicas},
            {"n_bases", r.n_bases},
            {"cnr_threshold", r.cnr_threshold},
            {"keep_fraction", r.keep_fraction},
            {"keep_rule", keep_rule_name(r.keep_rule)},
            {"alpha_cnr", r.alpha_cnr},
            {"tau", r.tau},
            {"two_q_fraction", r.two_q_fraction},
            {"n_subgraph_samples", r.n_subgraph_samples},
            {"shots", r.shots},
            {"trajectories", r.trajectories},
            {"true_fidelity_samples", r.true_fidelity_samples},
            {"max_qubits", r.max_qubits}};
}

json train_to_json(const TrainConfig &t) {
    return {{"epochs", t.epochs}, {"batch", t.batch}, {"lr", t.lr},
            {"beta1", t.beta1},   {"beta2", t.beta2}, {"eps", t.eps}};
}

json circuit_config_to_json(const CircuitConfig &c) {
    return {{"n_q", c.n_q}, {"n_params", c.n_params}, {"n_embeds", c.n_embeds}, {"n_meas", c.n_meas}};
}

// Reads obj[key] as T, reporting the dotted field path on a type mismatch.
template <class T>
T field(const json &obj, const std::string &key, const std::string &path) {
    try {
        return obj.at(key).get<T>();
    } catch (const json::exception &) {
        throw ConfigError(path + key + ": wrong type or missing");
    }
}

// Overlays `patch` onto `base`, rejecting keys the schema does not know.
void merge_known(json &base, const json &patch, const std::string &path) {
    if (!patch.is_object()) throw ConfigError(path.empty() ? "config: expected an object" : path + ": expected an object");
    for (const auto &[key, value] : patch.items()) {
        if (!base.contains(key)) throw ConfigError(path + (path.empty() ? "" : ".") + key + ": unknown key");
        auto &slot = base[key];
        if (slot.is_object() && key != "device") {
            merge_known(slot, value, path + (path.empty() ? "" : ".") + key);
        } else {
            slot = value;
        }
    }
}

json parse_env_value(const std::string &var, const std::string &text, const json &like) {
    try {
        size_t used = 0;
        if (like.is_boolean()) {
            if (text == "1" || text == "true") return true;
            if (text == "0" || text == "false") return false;
            throw std::invalid_argument("bool");
        }
        if (like.is_number_unsigned() || like.is_number_integer()) {
            if (!text.empty() && text[0] == '-') throw std::invalid_argument("negative");
            const auto v = std::stoull(text, &used);
            if (used != text.size()) throw std::invalid_argument("trailing");
            return v;
        }
        if (like.is_number_float()) {
            const double v = std::stod(text, &used);
            if (used != text.size()) throw std::invalid_argument("trailing");
            return v;
        }
        return text;
    } catch (const std::exception &) {
        throw ConfigError(var + ": cannot parse '" + text + "'");
    }
}

void apply_env(json &j, const EnvLookup &env) {
    if (!env) return;
    for (const char *key : {"seed", "workers", "out", "n_candidates", "train_winner"}) {
        const std::string var = "ELIVAGAR_" + upper(key);
        if (auto v = env(var)) j[key] = parse_env_value(var, *v, j[key]);
    }
    for (const char *section : {"run", "train", "circuit"}) {
        for (auto &[key, value] : j[section].items()) {
            const std::string var = "ELIVAGAR_" + upper(key);
            if (auto v = env(var)) value = parse_env_value(var, *v, value);
        }
    }
}

fs::path resolve(const fs::path &p, const fs::path &base) {
    if (p.empty() || p.is_absolute() || base.empty()) return p;
    return base / p;
}

void fail_on(const std::vector<std::string> &errors, const std::string &prefix) {
    if (!errors.empty()) throw ConfigError(prefix + errors.front());
}

std::vector<json> circuits_with_ids(const std::vector<Circuit> &circuits) {
    std::vector<json> out;
    for (size_t i = 0; i < circuits.size(); ++i) {
        json j = {{"id", i}};
        j.update(circuit_to_json(circuits[i]));
        out.push_back(std::move(j));
    }
    return out;
}

void ensure_out(const fs::path &out) {
    std::error_code ec;
    fs::create_directories(out, ec);
    if (ec || !fs::is_directory(out)) throw IoError("cannot create output directory " + out.string());
}

CircuitConfig circuit_config_for(const PipelineConfig &cfg, const Dataset &ds, const DeviceModel &dev) {
    CircuitConfig conf = cfg.circuit;
    conf.data_dim = ds.dim();
    std::vector<std::string> errors;
    for (const auto &e : conf.validate(dev)) errors.push_back("circuit." + e);
    fail_on(errors, "");
    return conf;
}

RunConfig run_config_for(const PipelineConfig &cfg) {
    RunConfig run = cfg.run;
    run.rng_seed = cfg.seed;
    run.workers = cfg.workers;
    return run;
}

TrainConfig train_config_for(const PipelineConfig &cfg) {
    TrainConfig t = cfg.train;
    t.seed = derive_seed(cfg.seed, "train");
    t.workers = cfg.workers;
    return t;
}

WinnerTraining train_and_evaluate(const Circuit &c, const Dataset &ds, const DeviceModel &dev,
                                  const PipelineConfig &cfg) {
    const auto tcfg = train_config_for(cfg);
    const auto result = train(c, ds, tcfg);
    WinnerTraining w;
    w.theta = result.theta;
    w.initial_loss = result.initial_loss;
    w.final_loss = result.history.empty() ? result.initial_loss : result.history.back();
    const auto test = evaluate(c, w.theta, ds.test(), ds.n_classes(), std::nullopt, cfg.workers);
    w.test_accuracy = test.accuracy;
    w.test_mse = test.mse;
    NoisyEval noisy{&dev, run_config_for(cfg)};
    noisy.run.rng_seed = derive_seed(cfg.seed, "noisy-test");
    const auto ntest = evaluate(c, w.theta, ds.test(), ds.n_classes(), noisy, cfg.workers);
    w.noisy_test_accuracy = ntest.accuracy;
    w.noisy_test_mse = ntest.mse;
    return w;
}

json training_to_json(const WinnerTraining &w) {
    return {{"theta", w.theta},
            {"initial_loss", w.initial_loss},
            {"final_loss", w.final_loss},
            {"test_accuracy", w.test_accuracy},
            {"test_mse", w.test_mse},
            {"noisy_test_accuracy", w.noisy_test_accuracy},
            {"noisy_test_mse", w.noisy_test_mse}};
}

json ledger_to_json(const BudgetLedger &l) {
    return {{"generation", l.generation},
            {"cnr_executions", l.cnr_executions},
            {"repcap_executions", l.repcap_executions},
            {"repcap_physical_executions", l.repcap_physical_executions},
            {"performance_evaluations", l.performance_evaluations},
            {"trainability_executions", l.trainability_executions},
            {"training_executions", l.training_executions},
            {"total", l.total()}};
}

}  // namespace

EnvLookup process_env() {
    return [](const std::string &name) -> std::optional<std::string> {
        if (const char *v = std::getenv(name.c_str())) return std::string(v);
        return std::nullopt;
    };
}

json config_to_json(const PipelineConfig &cfg) {
    json device;
    if (cfg.device.path) {
        device = {{"path", cfg.device.path->string()}};
    } else {
        const auto &s = cfg.device.synthetic;
        device = {{"synthetic",
                   {{"topology", topology_name(s.topology)},
                    {"rows", s.rows},
                    {"cols", s.cols},
                    {"seed", s.seed},
                    {"readout_error", s.magnitudes.readout_error},
                    {"err_1q", s.magnitudes.err_1q},
                    {"err_2q", s.magnitudes.err_2q},
                    {"t1_us", s.magnitudes.t1_us},
                    {"t2_us", s.magnitudes.t2_us},
                    {"spread", s.magnitudes.spread}}}};
    }
    const auto &d = cfg.dataset;
    json dataset = {{"source", d.source == DataSpec::Source::Moons ? "moons" : "file"},
                    {"n", d.n},
                    {"noise_sd", d.noise_sd},
                    {"seed", d.seed},
                    {"path", d.path.string()},
                    {"label_column", d.label_column},
                    {"normalization", normalization_name(d.normalization)},
                    {"train_fraction", d.train_fraction}};
    return {{"device", device},
            {"dataset", dataset},
            {"circuit", circuit_config_to_json(cfg.circuit)},
            {"run", run_to_json(cfg.run)},
            {"train", train_to_json(cfg.train)},
            {"n_candidates", cfg.n_candidates},
            {"train_winner", cfg.train_winner},
            {"seed", cfg.seed},
            {"workers", cfg.workers},
            {"out", cfg.out.string()}};
}

PipelineConfig pipeline_config_from_json(const json &j, const fs::path &base_dir) {
    PipelineConfig cfg;

    const json &dev = j.at("device");
    if (dev.is_string()) {
        cfg.device.path = resolve(dev.get<std::string>(), base_dir);
    } else if (dev.is_object() && dev.contains("path")) {
        cfg.device.path = resolve(field<std::string>(dev, "path", "device."), base_dir);
    } else if (dev.is_object() && dev.contains("synthetic")) {
        const json &s = dev.at("synthetic");
        auto &spec = cfg.device.synthetic;
        json defaults = config_to_json(PipelineConfig{}).at("device").at("synthetic");
        merge_known(defaults, s, "device.synthetic");
        const auto topo = field<std::string>(defaults, "topology", "device.synthetic.");
        const auto parsed = parse_topology(topo);
        if (!parsed) throw ConfigError("device.synthetic.topology: unknown topology '" + topo + "'");
        spec.topology = *parsed;
        spec.rows = field<uint32_t>(defaults, "rows", "device.synthetic.");
        spec.cols = field<uint32_t>(defaults, "cols", "device.synthetic.");
        spec.seed = field<uint64_t>(defaults, "seed", "device.synthetic.");
        spec.magnitudes.readout_error = field<double>(defaults, "readout_error", "device.synthetic.");
        spec.magnitudes.err_1q = field<double>(defaults, "err_1q", "device.synthetic.");
        spec.magnitudes.err_2q = field<double>(defaults, "err_2q", "device.synthetic.");
        spec.magnitudes.t1_us = field<double>(defaults, "t1_us", "device.synthetic.");
        spec.magnitudes.t2_us = field<double>(defaults, "t2_us", "device.synthetic.");
        spec.magnitudes.spread = field<double>(defaults, "spread", "device.synthetic.");
        if (spec.rows == 0 || spec.cols == 0) throw ConfigError("device.synthetic.rows: must be positive");
    } else {
        throw ConfigError("device: expected a path or {\"synthetic\": {...}}");
    }

    const json &d = j.at("dataset");
    const auto source = field<std::string>(d, "source", "dataset.");
    if (source == "moons") {
        cfg.dataset.source = DataSpec::Source::Moons;
    } else if (source == "file") {
        cfg.dataset.source = DataSpec::Source::File;
    } else {
        throw ConfigError("dataset.source: expected 'moons' or 'file', got '" + source + "'");
    }
    cfg.dataset.n = field<uint32_t>(d, "n", "dataset.");
    cfg.dataset.noise_sd = field<double>(d, "noise_sd", "dataset.");
    cfg.dataset.seed = field<uint64_t>(d, "seed", "dataset.");
    cfg.dataset.path = resolve(field<std::string>(d, "path", "dataset."), base_dir);
    cfg.dataset.label_column = field<std::string>(d, "label_column", "dataset.");
    const auto norm = field<std::string>(d, "normalization", "dataset.");
    const auto parsed_norm = parse_normalization(norm);
    if (!parsed_norm) throw ConfigError("dataset.normalization: expected none, minmax or zscore");
    cfg.dataset.normalization = *parsed_norm;
    cfg.dataset.train_fraction = field<double>(d, "train_fraction", "dataset.");
    if (!(cfg.dataset.train_fraction > 0.0 && cfg.dataset.train_fraction < 1.0)) {
        throw ConfigError("dataset.train_fraction: must lie in (0, 1)");
    }
    if (cfg.dataset.noise_sd < 0.0) throw ConfigError("dataset.noise_sd: must be non-negative");
    if (cfg.dataset.source == DataSpec::Source::Moons && (cfg.dataset.n < 4 || cfg.dataset.n % 2 != 0)) {
        throw ConfigError("dataset.n: must be even and at least 4");
    }
    if (cfg.dataset.source == DataSpec::Source::File && cfg.dataset.path.empty()) {
        throw ConfigError("dataset.path: required for file datasets");
    }

    const json &c = j.at("circuit");
    cfg.circuit.n_q = field<uint32_t>(c, "n_q", "circuit.");
    cfg.circuit.n_params = field<uint32_t>(c, "n_params", "circuit.");
    cfg.circuit.n_embeds = field<uint32_t>(c, "n_embeds", "circuit.");
    cfg.circuit.n_meas = field<uint32_t>(c, "n_meas", "circuit.");

    const json &r = j.at("run");
    auto &run = cfg.run;
    run.d_c = field<uint32_t>(r, "d_c", "run.");
    run.n_p = field<uint32_t>(r, "n_p", "run.");
    run.replicas = field<uint32_t>(r, "replicas", "run.");
    run.n_bases = field<uint32_t>(r, "n_bases", "run.");
    run.cnr_threshold = field<double>(r, "cnr_threshold", "run.");
    run.keep_fraction = field<double>(r, "keep_fraction", "run.");
    const auto rule = field<std::string>(r, "keep_rule", "run.");
    if (rule == "both") {
        run.keep_rule = KeepRule::Both;
    } else if (rule == "either") {
        run.keep_rule = KeepRule::Either;
    } else {
        throw ConfigError("run.keep_rule: expected 'both' or 'either'");
    }
    run.alpha_cnr = field<double>(r, "alpha_cnr", "run.");
    run.tau = field<double>(r, "tau", "run.");
    run.two_q_fraction = field<double>(r, "two_q_fraction", "run.");
    run.n_subgraph_samples = field<uint32_t>(r, "n_subgraph_samples", "run.");
    run.shots = field<uint32_t>(r, "shots", "run.");
    run.trajectories = field<uint32_t>(r, "trajectories", "run.");
    run.true_fidelity_samples = field<uint32_t>(r, "true_fidelity_samples", "run.");
    run.max_qubits = field<uint32_t>(r, "max_qubits", "run.");
    std::vector<std::string> errors;
    for (const auto &e : run.validate()) errors.push_back("run." + e);
    fail_on(errors, "");

    const json &t = j.at("train");
    cfg.train.epochs = field<uint32_t>(t, "epochs", "train.");
    cfg.train.batch = field<uint32_t>(t, "batch", "train.");
    cfg.train.lr = field<double>(t, "lr", "train.");
    cfg.train.beta1 = field<double>(t, "beta1", "train.");
    cfg.train.beta2 = field<double>(t, "beta2", "train.");
    cfg.train.eps = field<double>(t, "eps", "train.");
    fail_on(cfg.train.validate(), "train.");

    cfg.n_candidates = field<uint32_t>(j, "n_candidates", "");
    if (cfg.n_candidates < 2) throw ConfigError("n_candidates: must be at least 2");
    cfg.train_winner = field<bool>(j, "train_winner", "");
    cfg.seed = field<uint64_t>(j, "seed", "");
    cfg.workers = field<unsigned>(j, "workers", "");
    cfg.out = field<std::string>(j, "out", "");
    if (cfg.out.empty()) throw ConfigError("out: must not be empty");
    return cfg;
}

PipelineConfig load_pipeline_config(const std::optional<fs::path> &file, const EnvLookup &env,
                                    const CliOverrides &cli) {
    PipelineConfig defaults;
    defaults.train.epochs = 100;
    json j = config_to_json(defaults);
    fs::path base_dir;
    if (file) {
        const json patch = read_json_file(*file);
        if (patch.is_object() && patch.contains("device")) {
            j["device"] = patch.at("device");
        }
        json rest = patch;
        if (rest.is_object()) rest.erase("device");
        merge_known(j, rest, "");
        base_dir = file->parent_path();
    }
    apply_env(j, env);
    if (cli.seed) j["seed"] = *cli.seed;
    if (cli.workers) j["workers"] = *cli.workers;
    if (cli.out) j["out"] = cli.out->string();
    auto cfg = pipeline_config_from_json(j, base_dir);
    // The output directory is relative to the working directory, not the file.
    cfg.out = j.at("out").get<std::string>();
    return cfg;
}

DeviceModel build_device(const PipelineConfig &cfg) {
    if (cfg.device.path) return load_device(*cfg.device.path);
    return make_synthetic_device(cfg.device.synthetic);
}

Dataset build_dataset(const PipelineConfig &cfg) {
    const auto &spec = cfg.dataset;
    std::vector<Sample> samples;
    if (spec.source == DataSpec::Source::Moons) {
        samples = make_moons(spec.n, spec.noise_sd, spec.seed);
    } else {
        try {
            samples = load_delimited({spec.path.string(), spec.label_column});
        } catch (const std::runtime_error &e) {
            throw IoError(e.what());
        }
    }
    normalize(samples, spec.normalization);
    const uint32_t n_classes = std::max<uint32_t>(2, infer_n_classes(samples));
    try {
        return stratified_split(samples, n_classes, spec.train_fraction, spec.seed);
    } catch (const std::invalid_argument &e) {
        throw ConfigError(std::string("dataset: ") + e.what());
    }
}

void cmd_generate(const PipelineConfig &cfg, std::ostream &log) {
    const auto dev = build_device(cfg);
    const auto ds = build_dataset(cfg);
    const auto conf = circuit_config_for(cfg, ds, dev);
    ensure_out(cfg.out);
    const auto circuits = generate_candidates(dev, conf, run_config_for(cfg), cfg.n_candidates);
    write_json_file(cfg.out / "circuits.json", circuits_with_ids(circuits));
    log << "generated " << circuits.size() << " circuits -> " << (cfg.out / "circuits.json").string() << "\n";
}

void cmd_cnr(const PipelineConfig &cfg, const fs::path &circuits_path, std::ostream &log) {
    const auto dev = build_device(cfg);
    const auto circuits = load_circuits(circuits_path);
    for (size_t i = 0; i < circuits.size(); ++i) {
        if (const auto errors = validate_circuit(circuits[i], dev); !errors.empty()) {
            throw std::invalid_argument("circuit " + std::to_string(i) + ": " + errors.front());
        }
    }
    const auto run = run_config_for(cfg);
    ensure_out(cfg.out);
    const auto results = score_cnr(circuits, dev, run);
    const auto outcome = reject(results, run);
    std::vector<bool> kept(results.size(), false);
    for (uint64_t id : outcome.kept) kept[id] = true;
    std::ostringstream tsv;
    tsv << "id\tcnr\tstatus\n";
    for (const auto &r : results) {
        tsv << r.id << "\t" << format_double(r.cnr) << "\t" << (kept[r.id] ? "kept" : "rejected") << "\n";
    }
    write_text_file(cfg.out / "cnr.tsv", tsv.str());
    log << results.size() << " CNR records (" << outcome.kept.size() << " kept) -> "
        << (cfg.out / "cnr.tsv").string() << "\n";
}

std::vector<uint64_t> read_kept_ids(const fs::path &cnr_tsv) {
    std::ifstream in(cnr_tsv);
    if (!in) throw IoError("cannot open " + cnr_tsv.string());
    std::string line;
    std::getline(in, line);
    std::vector<uint64_t> ids;
    size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        std::istringstream row(line);
        std::string id, cnr, status;
        if (!std::getline(row, id, '\t') || !std::getline(row, cnr, '\t') || !std::getline(row, status, '\t')) {
            throw IoError(cnr_tsv.string() + ": line " + std::to_string(line_no) + " is malformed");
        }
        if (status == "kept") ids.push_back(std::stoull(id));
    }
    return ids;
}

void cmd_repcap(const PipelineConfig &cfg, const fs::path &circuits_path, const std::optional<fs::path> &kept_from,
                std::ostream &log) {
    const auto ds = build_dataset(cfg);
    const auto circuits = load_circuits(circuits_path);
    std::vector<uint64_t> ids;
    if (kept_from) {
        ids = read_kept_ids(*kept_from);
        std::sort(ids.begin(), ids.end());
    } else {
        for (size_t i = 0; i < circuits.size(); ++i) ids.push_back(i);
    }
    for (uint64_t id : ids) {
        if (id >= circuits.size()) throw std::invalid_argument("kept id " + std::to_string(id) + " has no circuit");
    }
    const auto run = run_config_for(cfg);
    const auto plan = make_repcap_plan(ds, run);
    ensure_out(cfg.out);
    RunConfig inner = run;
    inner.workers = 1;
    std::vector<RepCapResult> results(ids.size());
    parallel_for(ids.size(), run.workers, [&](size_t k) {
        results[k] = repcap_score(circuits[ids[k]], ids[k], ds, inner, plan);
    });
    std::ostringstream tsv;
    tsv << "id\trep\texecutions\tphysical_executions\n";
    for (const auto &r : results) {
        tsv << r.id << "\t" << format_double(r.rep) << "\t" << r.executions << "\t" << r.physical_executions << "\n";
    }
    write_text_file(cfg.out / "repcap.tsv", tsv.str());
    log << results.size() << " RepCap records -> " << (cfg.out / "repcap.tsv").string() << "\n";
}

json report_to_json(const SearchReport &report) {
    json candidates = json::array();
    for (const auto &c : report.candidates) {
        json j = {{"id", c.id},
                  {"cnr", c.cnr},
                  {"rejected", c.rejected},
                  {"untrainable", c.untrainable},
                  {"rep", c.rep ? json(*c.rep) : json(nullptr)},
                  {"score", c.score ? json(*c.score) : json(nullptr)},
                  {"n_params", c.circuit.n_trainable()},
                  {"n_two_qubit", c.circuit.count_two_qubit()},
                  {"circuit", circuit_to_json(c.circuit)}};
        candidates.push_back(std::move(j));
    }
    json out = {{"seed", report.seed},
                {"winner", report.winner},
                {"n_classes", report.n_classes},
                {"n_train", report.n_train},
                {"n_test", report.n_test},
                {"circuit_config", circuit_config_to_json(report.circuit_config)},
                {"run_config", run_to_json(report.config)},
                {"ledger", ledger_to_json(report.ledger)},
                {"candidates", candidates}};
    if (report.training) out["winner_training"] = training_to_json(*report.training);
    return out;
}

std::string summary_table(const SearchReport &report) {
    std::ostringstream out;
    char line[160];
    std::snprintf(line, sizeof line, "%-6s %-10s %-9s %-10s %-10s %-8s\n", "id", "cnr", "status", "rep", "score",
                  "params");
    out << line;
    for (const auto &c : report.candidates) {
        const char *status = c.untrainable ? "frozen"
                             : c.rejected ? "rejected"
                                          : (c.id == report.winner ? "winner" : "kept");
        char rep[32] = "-";
        char score[32] = "-";
        if (c.rep) std::snprintf(rep, sizeof rep, "%.6f", *c.rep);
        if (c.score) std::snprintf(score, sizeof score, "%.6f", *c.score);
        std::snprintf(line, sizeof line, "%-6llu %-10.6f %-9s %-10s %-10s %-8u\n",
                      static_cast<unsigned long long>(c.id), c.cnr, status, rep, score, c.circuit.n_trainable());
        out << line;
    }
    const auto &l = report.ledger;
    out << "\n";
    std::snprintf(line, sizeof line, "%-28s %llu\n", "cnr executions", static_cast<unsigned long long>(l.cnr_executions));
    out << line;
    std::snprintf(line, sizeof line, "%-28s %llu\n", "trainability executions",
                  static_cast<unsigned long long>(l.trainability_executions));
    out << line;
    std::snprintf(line, sizeof line, "%-28s %llu\n", "repcap executions",
                  static_cast<unsigned long long>(l.repcap_executions));
    out << line;
    std::snprintf(line, sizeof line, "%-28s %llu\n", "repcap physical executions",
                  static_cast<unsigned long long>(l.repcap_physical_executions));
    out << line;
    std::snprintf(line, sizeof line, "%-28s %llu\n", "performance evaluations",
                  static_cast<unsigned long long>(l.performance_evaluations));
    out << line;
    std::snprintf(line, sizeof line, "%-28s %llu\n", "training executions",
                  static_cast<unsigned long long>(l.training_executions));
    out << line;
    if (report.training) {
        const auto &t = *report.training;
        std::snprintf(line, sizeof line, "%-28s %.4f\n", "winner test accuracy", t.test_accuracy);
        out << line;
        std::snprintf(line, sizeof line, "%-28s %.4f\n", "winner noisy test accuracy", t.noisy_test_accuracy);
        out << line;
    }
    return out.str();
}

SearchReport cmd_search(const PipelineConfig &cfg, std::ostream &log) {
    const auto dev = build_device(cfg);
    const auto ds = build_dataset(cfg);
    const auto conf = circuit_config_for(cfg, ds, dev);
    ensure_out(cfg.out);
    auto report = run_search(dev, conf, ds, run_config_for(cfg), cfg.n_candidates);
    const auto &winner = report.winner_record();
    if (cfg.train_winner) {
        report.training = train_and_evaluate(winner.circuit, ds, dev, cfg);
        report.ledger.training_executions =
            uint64_t{cfg.train.epochs} * ds.train().size() * (2 * uint64_t{winner.circuit.n_trainable()} + 1);
    }
    write_json_file(cfg.out / "search_report.json", report_to_json(report));
    write_text_file(cfg.out / "summary.txt", summary_table(report));
    write_json_file(cfg.out / "winner_circuit.json", circuit_to_json(winner.circuit));
    log << "winner " << report.winner << " (score " << *winner.score << ", cnr " << winner.cnr << ") -> "
        << cfg.out.string() << "\n";
    return report;
}

void cmd_train(const PipelineConfig &cfg, const fs::path &circuit_path, std::ostream &log) {
    const auto dev = build_device(cfg);
    const auto ds = build_dataset(cfg);
    const auto circuits = load_circuits(circuit_path);
    if (circuits.size() != 1) throw std::invalid_argument("train: expected exactly one circuit");
    const auto &c = circuits.front();
    if (const auto errors = validate_circuit(c, dev, ds.dim()); !errors.empty()) {
        throw std::invalid_argument("train: " + errors.front());
    }
    ensure_out(cfg.out);
    const auto tcfg = train_config_for(cfg);
    const auto result = train(c, ds, tcfg);
    const auto train_m = evaluate(c, result.theta, ds.train(), ds.n_classes(), std::nullopt, cfg.workers);
    const auto test_m = evaluate(c, result.theta, ds.test(), ds.n_classes(), std::nullopt, cfg.workers);
    NoisyEval noisy{&dev, run_config_for(cfg)};
    noisy.run.rng_seed = derive_seed(cfg.seed, "noisy-test");
    const auto noisy_m = evaluate(c, result.theta, ds.test(), ds.n_classes(), noisy, cfg.workers);
    write_json_file(cfg.out / "theta.json", json{{"theta", result.theta}});
    write_json_file(cfg.out / "metrics.json",
                    json{{"initial_loss", result.initial_loss},
                         {"final_loss", result.history.empty() ? result.initial_loss : result.history.back()},
                         {"train", {{"accuracy", train_m.accuracy}, {"mse", train_m.mse}}},
                         {"test", {{"accuracy", test_m.accuracy}, {"mse", test_m.mse}}},
                         {"noisy_test", {{"accuracy", noisy_m.accuracy}, {"mse", noisy_m.mse}}}});
    std::ostringstream hist;
    hist << "epoch\tloss\n0\t" << format_double(result.initial_loss) << "\n";
    for (size_t e = 0; e < result.history.size(); ++e) hist << e + 1 << "\t" << format_double(result.history[e]) << "\n";
    write_text_file(cfg.out / "history.tsv", hist.str());
    log << "test accuracy " << test_m.accuracy << ", noisy " << noisy_m.accuracy << " -> " << cfg.out.string()
        << "\n";
}

void cmd_report(const fs::path &report_path, const std::optional<fs::path> &out, std::ostream &log) {
    const auto j = read_json_file(report_path);
    try {
        const auto &ledger = j.at("ledger");
        const auto total = ledger.at("total").get<uint64_t>();
        const auto n = j.at("candidates").size();
        double p_sum = 0.0;
        for (const auto &c : j.at("candidates")) p_sum += c.at("n_params").get<double>();
        const double p_bar = n ? p_sum / static_cast<double>(n) : 0.0;
        const auto n_train = j.at("n_train").get<double>();
        const auto n_test = j.at("n_test").get<double>();
        const uint32_t n_classes = j.at("n_classes").get<uint32_t>();
        const double epochs = 200.0;
        const double super = supercircuit_cost(epochs, n_train, p_bar, static_cast<double>(n), n_test);
        const uint64_t search_total = ledger.at("cnr_executions").get<uint64_t>() +
                                      ledger.at("repcap_executions").get<uint64_t>() +
                                      ledger.value("trainability_executions", uint64_t{0});
        json budget = {{"ledger_total", total},
                       {"search_executions", search_total},
                       {"supercircuit_cost", super},
                       {"supercircuit_epochs", epochs},
                       {"mean_params", p_bar},
                       {"repcap_cost_all_candidates", repcap_cost(n, n_classes)},
                       {"ratio_supercircuit_to_ledger", total ? super / static_cast<double>(total) : 0.0},
                       {"ratio_supercircuit_to_search", search_total ? super / static_cast<double>(search_total) : 0.0}};
        const fs::path dest = out ? *out : report_path.parent_path();
        ensure_out(dest);
        write_json_file(dest / "budget.json", budget);
        char line[160];
        std::ostringstream text;
        for (const auto &[key, value] : budget.items()) {
            std::snprintf(line, sizeof line, "%-30s %s\n", key.c_str(), value.dump().c_str());
            text << line;
        }
        write_text_file(dest / "budget.txt", text.str());
        log << text.str();
    } catch (const json::exception &e) {
        throw IoError(report_path.string() + ": not a search report (" + e.what() + ")");
    }
}

}  // namespace qcs
