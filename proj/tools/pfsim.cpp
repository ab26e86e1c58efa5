// Copyright 2026 The pfsim Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <spdlog/spdlog.h>

#include "pfsim/errors.hpp"
#include "pfsim/experiment.hpp"

namespace {

struct ConfigFlags {
    std::string preset;
    std::string config;
    std::vector<std::string> sets;
    std::string out;
    std::string format;
    double tol_algebra = 0.0;
    double tol_unitarity = 0.0;
};

void add_config_flags(CLI::App* cmd, ConfigFlags& f, bool with_output = true) {
    cmd->add_option("--preset", f.preset, "Built-in preset (see `pfsim presets`)");
    cmd->add_option("--config", f.config, "key = value configuration file")->check(CLI::ExistingFile);
    cmd->add_option("--set", f.sets, "Override one field, key=value (repeatable)");
    if (with_output) {
        cmd->add_option("--out", f.out, "Output path (default: standard output)");
        cmd->add_option("--format", f.format, "csv or json");
    }
    cmd->add_option("--tol-algebra", f.tol_algebra, "Algebraic identity tolerance");
    cmd->add_option("--tol-unitarity", f.tol_unitarity, "Norm and unitarity tolerance");
}

std::string exact(double v) {
    std::ostringstream os;
    os.precision(17);
    os << v;
    return os.str();
}

pfsim::ExperimentConfig build_config(const ConfigFlags& f) {
    pfsim::ExperimentConfig cfg = f.preset.empty() ? pfsim::ExperimentConfig{} : pfsim::preset(f.preset);
    if (!f.config.empty()) {
        std::ifstream in(f.config);
        std::stringstream text;
        text << in.rdbuf();
        pfsim::apply_config_text(cfg, text.str());
    }
    for (const auto& s : f.sets) {
        pfsim::apply_override(cfg, s);
    }
    if (!f.out.empty()) {
        cfg.out = f.out;
    }
    if (!f.format.empty()) {
        pfsim::apply_setting(cfg, "format", f.format);
    }
    if (f.tol_algebra != 0.0) {
        pfsim::apply_setting(cfg, "tol_algebra", exact(f.tol_algebra));
    }
    if (f.tol_unitarity != 0.0) {
        pfsim::apply_setting(cfg, "tol_unitarity", exact(f.tol_unitarity));
    }
    return cfg;
}

// Writes through `write` to cfg.out, or to stdout when it is empty.
template <typename Fn>
void emit(const std::string& path, Fn&& write) {
    if (path.empty()) {
        write(std::cout);
        std::cout.flush();
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw pfsim::ConfigError("field 'out': cannot write '" + path + "'");
    }
    write(out);
}

std::vector<std::string> split_values(const std::string& text) {
    std::vector<std::string> values;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (!item.empty()) {
            values.push_back(item);
        }
    }
    return values;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Para-Fermi oscillator simulations of the cross-cavity Jaynes-Cummings model"};
    app.require_subcommand(1);
    bool verbose = false;
    app.add_flag("-v,--verbose", verbose, "Debug logging on stderr");

    ConfigFlags sim_flags;
    auto* sim = app.add_subcommand("simulate", "Run one simulation and write the trajectory");
    add_config_flags(sim, sim_flags);

    ConfigFlags rev_flags;
    auto* rev = app.add_subcommand("revival", "Detect the first collapse and revival of <sigma_z>");
    add_config_flags(rev, rev_flags, false);

    ConfigFlags ver_flags;
    std::string scope = "all";
    int lambda_max = 0;
    auto* ver = app.add_subcommand("verify", "Run the identity verification suites");
    ver->add_option("--scope", scope, "algebra, frames, closedform or all");
    ver->add_option("--lambda-max", lambda_max, "Largest lambda checked (0: suite default)");
    ver->add_option("--out", ver_flags.out, "Report path (default: standard output)");
    ver->add_option("--tol-algebra", ver_flags.tol_algebra, "Algebraic identity tolerance");
    ver->add_option("--tol-unitarity", ver_flags.tol_unitarity, "Norm and unitarity tolerance");

    ConfigFlags sweep_flags;
    std::string sweep_key;
    std::string sweep_values;
    std::string sweep_dir = "sweep";
    int jobs = 0;
    auto* sweep = app.add_subcommand("sweep", "Run one simulation per value of a field");
    add_config_flags(sweep, sweep_flags, false);
    sweep->add_option("--format", sweep_flags.format, "csv or json");
    sweep->add_option("--key", sweep_key, "Field to vary")->required();
    sweep->add_option("--values", sweep_values, "Comma-separated values")->required();
    sweep->add_option("--out-dir", sweep_dir, "Directory for the per-run outputs");
    sweep->add_option("--jobs", jobs, "Concurrent runs (0: hardware threads)");

    std::string dump;
    auto* presets = app.add_subcommand("presets", "List presets or dump one as a config file");
    presets->add_option("--dump", dump, "Preset to print as key = value text");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? pfsim::kExitSuccess : pfsim::kExitInvalidConfig;
    }
    spdlog::set_level(verbose ? spdlog::level::debug : spdlog::level::warn);

    try {
        if (*sim) {
            const pfsim::ExperimentConfig r = pfsim::resolve(build_config(sim_flags));
            const pfsim::Trajectory traj = pfsim::simulate(r);
            emit(r.out, [&](std::ostream& os) { pfsim::write_trajectory(os, r, traj, r.format); });
            return pfsim::kExitSuccess;
        }
        if (*rev) {
            const pfsim::RevivalReport report = pfsim::run_revival(build_config(rev_flags));
            std::cout << pfsim::format_revival(report) << '\n';
            return pfsim::kExitSuccess;
        }
        if (*ver) {
            pfsim::VerifyOptions options;
            if (ver_flags.tol_algebra > 0.0) {
                options.tolerances.algebra = ver_flags.tol_algebra;
            }
            if (ver_flags.tol_unitarity > 0.0) {
                options.tolerances.unitarity = ver_flags.tol_unitarity;
            }
            const auto report = pfsim::run_verify(pfsim::parse_scope(scope), lambda_max, options);
            emit(ver_flags.out, [&](std::ostream& os) { pfsim::write_report(os, report); });
            if (!report.passed()) {
                const auto* w = report.worst();
                std::cerr << "verification failed: " << w->group << " / " << w->name << " ["
                          << w->case_label << "] residual " << w->residual << " > tolerance "
                          << w->tolerance << '\n';
                return pfsim::kExitVerificationFailure;
            }
            return pfsim::kExitSuccess;
        }
        if (*sweep) {
            const pfsim::ExperimentConfig base = build_config(sweep_flags);
            const auto results =
                pfsim::run_sweep(base, sweep_key, split_values(sweep_values), sweep_dir, jobs);
            int failures = 0;
            for (const auto& job : results) {
                if (job.ok) {
                    std::cout << sweep_key << '=' << job.value << " -> " << job.output.string() << '\n';
                } else {
                    ++failures;
                    std::cerr << sweep_key << '=' << job.value << " failed: " << job.error << '\n';
                }
            }
            return failures == 0 ? pfsim::kExitSuccess : pfsim::kExitInvalidConfig;
        }
        if (*presets) {
            if (dump.empty()) {
                for (const auto& name : pfsim::preset_names()) {
                    std::cout << name << '\n';
                }
            } else {
                std::cout << pfsim::dump_config(pfsim::resolve(pfsim::preset(dump)));
            }
            return pfsim::kExitSuccess;
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return pfsim::exit_code_for(e);
    }
    return pfsim::kExitSuccess;
}
