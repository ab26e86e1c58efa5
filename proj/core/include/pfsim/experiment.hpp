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

#pragma once

#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "pfsim/dynamics.hpp"
#include "pfsim/models.hpp"

namespace pfsim {

// g_eff / sqrt((g1^2 + g2^2)/2) as found by calibrate_g_eff at lambda = 1.
// Frozen so figure runs are reproducible; a unit test re-derives it.
inline constexpr double kCalibratedGEffRatio = 1.0;

enum class ModelKind { ccjc, ccqrm, schwinger, subspace };
enum class OutputFormat { csv, json };

const char* to_string(ModelKind kind);
const char* to_string(OutputFormat format);

struct ExperimentConfig {
    ModelKind model = ModelKind::ccjc;
    ModelParams params;
    int lambda = 25;
    std::string initial_state = "pf_lowest";
    double t_start = 0.0;
    std::optional<double> t_end;  // default: 2 pi sqrt(lambda) / g_eff
    int n_points = 4000;
    std::optional<int> n_max_1;   // default: lambda (lambda + 20 for ccqrm)
    std::optional<int> n_max_2;
    Tolerances tolerances;
    std::string out;              // empty: standard output
    OutputFormat format = OutputFormat::csv;
    std::string preset;
};

// Applies one "key=value" assignment. Throws ConfigError naming the field.
void apply_setting(ExperimentConfig& cfg, const std::string& key, const std::string& value);
void apply_override(ExperimentConfig& cfg, const std::string& assignment);

// Flat "key = value" text with '#' comments.
void apply_config_text(ExperimentConfig& cfg, const std::string& text);
ExperimentConfig load_config_file(const std::filesystem::path& path);

std::vector<std::string> preset_names();
ExperimentConfig preset(const std::string& name);

// Fills every defaulted field and validates the result.
ExperimentConfig resolve(const ExperimentConfig& cfg);

// Resolved configuration as ordered key/value pairs, sufficient to rerun.
std::vector<std::pair<std::string, std::string>> config_echo(const ExperimentConfig& resolved);
std::string dump_config(const ExperimentConfig& cfg);

double effective_coupling(const ExperimentConfig& cfg);
TimeGrid time_grid(const ExperimentConfig& resolved);

Trajectory simulate(const ExperimentConfig& cfg);

// CSV: '#' echo lines, then t,n1,n2,I3,sigma_z,norm with 17 significant
// digits, '.' decimal point, LF line endings.
void write_trajectory(std::ostream& os, const ExperimentConfig& resolved, const Trajectory& traj,
                      OutputFormat format);

enum class VerifyScope { algebra, frames, closedform, all };
VerifyScope parse_scope(const std::string& text);
const char* to_string(VerifyScope scope);

struct CheckEntry {
    std::string group;
    std::string name;
    std::string case_label;  // lambda or parameter set
    double residual = 0.0;
    double tolerance = 0.0;
    bool pass = false;
    bool informational = false;
};

struct VerificationReport {
    VerifyScope scope = VerifyScope::all;
    int lambda_max = 0;
    std::vector<CheckEntry> checks;
    std::map<std::string, double> values;      // g_eff ratio, min fidelity, ...
    std::map<std::string, std::string> labels; // FG composition, ...

    bool passed() const;
    // Worst failing check, or the check with the largest residual/tolerance
    // ratio when everything passes.
    const CheckEntry* worst() const;
};

struct VerifyOptions {
    Tolerances tolerances;
    Limits limits;
    int frames_truncation = 6;
};

// lambda_max defaults to 8 for algebra and 10 for closed-form checks when 0.
VerificationReport run_verify(VerifyScope scope, int lambda_max, const VerifyOptions& options = {});
void write_report(std::ostream& os, const VerificationReport& report);

struct RevivalReport {
    RevivalResult result;
    int lambda = 0;
    double g_eff = 0.0;
    double predicted = 0.0;
    double deviation = 0.0;  // |measured - predicted| / predicted
    double window = 0.0;
    double max_n1 = 0.0;
};

RevivalReport run_revival(const ExperimentConfig& cfg);
std::string format_revival(const RevivalReport& report);

struct SweepJob {
    std::string value;
    std::filesystem::path output;
    bool ok = false;
    std::string error;
};

// Runs one simulation per value of `key`, concurrently, each writing its own
// file under out_dir.
std::vector<SweepJob> run_sweep(const ExperimentConfig& base, const std::string& key,
                                const std::vector<std::string>& values,
                                const std::filesystem::path& out_dir, int max_parallel = 0);

// Process exit codes of the command-line tool.
enum ExitCode : int {
    kExitSuccess = 0,
    kExitVerificationFailure = 1,
    kExitInvalidConfig = 2,
    kExitNumericalContract = 3,
};

// Maps a library exception onto an exit code.
int exit_code_for(const std::exception& e);

}  // namespace pfsim
