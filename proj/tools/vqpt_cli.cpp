// Copyright 2026 The vqpt Authors
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

#include <CLI11.hpp>

#include <iostream>

#include "vqpt/experiments/runners.hpp"

namespace ex = vqpt::experiments;

namespace {

constexpr int kExitPass = 0;
constexpr int kExitError = 1;
constexpr int kExitTolerance = 2;

struct GlobalFlags {
    std::string output_dir;
    std::string backend;
    std::string dump_dir;
    std::optional<double> tolerance;
};

int run(const std::string &subcommand, const std::string &config_path, const GlobalFlags &flags) {
    ex::ExperimentConfig cfg;
    try {
        cfg = ex::load_config(config_path);
        const auto expected = ex::kind_from_string(subcommand);
        if (cfg.kind != expected) {
            throw vqpt::ParseError("config kind is " + ex::to_string(cfg.kind) + " but the subcommand is " +
                                   subcommand);
        }
        if (!flags.output_dir.empty()) {
            cfg.output_dir = flags.output_dir;
        }
        if (!flags.backend.empty()) {
            cfg.evolution.backend = vqpt::backend_from_string(flags.backend);
        }
        if (flags.tolerance) {
            cfg.tolerance = flags.tolerance;
        }
        ex::RunOptions opts;
        if (!flags.dump_dir.empty()) {
            opts.dump_dir = flags.dump_dir;
        }
        const auto result = ex::run_experiment(cfg, opts);
        for (const auto &f : result.files) {
            std::cout << "wrote " << f.string() << "\n";
        }
        if (result.report) {
            std::cout << result.report->summary();
            return result.report->passed() ? kExitPass : kExitTolerance;
        }
        return kExitPass;
    } catch (const std::exception &e) {
        std::cerr << "vqpt: " << config_path << ": " << e.what() << "\n";
        return kExitError;
    }
}

} // namespace

int main(int argc, char **argv) {
    CLI::App app{"Variational quantum time evolution experiments"};
    app.require_subcommand(1);
    app.fallthrough();
    GlobalFlags flags;
    app.add_option("--output-dir", flags.output_dir, "directory for CSV and manifest output");
    app.add_option("--backend", flags.backend, "M/V assembly backend")->check(CLI::IsMember({"direct", "circuit"}));
    app.add_option("--dump-circuits", flags.dump_dir, "write Hadamard-test circuit listings here");
    app.add_option("--tolerance", flags.tolerance, "comparison tolerance override")->check(CLI::NonNegativeNumber);

    std::string config_path;
    std::string chosen;
    for (const auto *name : {"evolve", "ground-state", "pt-compare", "rabi-sweep", "h2-curve"}) {
        auto *sub = app.add_subcommand(name);
        sub->add_option("config", config_path, "experiment config file")->required();
        sub->callback([&chosen, name] { chosen = name; });
    }
    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        const int code = app.exit(e);
        return code == 0 ? kExitPass : kExitError;
    }
    return run(chosen, config_path, flags);
}
