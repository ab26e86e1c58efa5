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

#include "pfsim/experiment.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <future>
#include <numbers>
#include <ostream>
#include <sstream>
#include <thread>

#include "pfsim/errors.hpp"
#include "pfsim/parafermi.hpp"

namespace pfsim {

const char* to_string(ModelKind kind) {
    switch (kind) {
        case ModelKind::ccjc:
            return "ccjc";
        case ModelKind::ccqrm:
            return "ccqrm";
        case ModelKind::schwinger:
            return "schwinger";
        case ModelKind::subspace:
            return "subspace";
    }
    return "unknown";
}

const char* to_string(OutputFormat format) {
    return format == OutputFormat::csv ? "csv" : "json";
}

namespace {

std::string trim(const std::string& s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string::npos) {
        return {};
    }
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

double parse_double(const std::string& key, const std::string& text) {
    double value = 0.0;
    const char* begin = text.data();
    const char* end = text.data() + text.size();
    const auto [ptr, ec] = std::from_chars(begin, end, value);
    if (ec != std::errc() || ptr != end || !std::isfinite(value)) {
        throw ConfigError("field '" + key + "': expected a finite number, got '" + text + "'");
    }
    return value;
}

int parse_int(const std::string& key, const std::string& text) {
    int value = 0;
    const char* begin = text.data();
    const char* end = text.data() + text.size();
    const auto [ptr, ec] = std::from_chars(begin, end, value);
    if (ec != std::errc() || ptr != end) {
        throw ConfigError("field '" + key + "': expected an integer, got '" + text + "'");
    }
    return value;
}

double parse_positive(const std::string& key, const std::string& text) {
    const double v = parse_double(key, text);
    if (!(v > 0.0)) {
        throw ConfigError("field '" + key + "': must be positive, got '" + text + "'");
    }
    return v;
}

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

int default_n_max(const ExperimentConfig& cfg) {
    const int base = std::max(cfg.lambda, 1);
    return cfg.model == ModelKind::ccqrm ? base + 20 : base;
}

struct InitialSpec {
    enum class Kind { pf_lowest, fock, binomial } kind = Kind::pf_lowest;
    BasisLabel label;
    double eta = 0.5;
};

InitialSpec parse_initial(const std::string& text) {
    InitialSpec spec;
    if (text == "pf_lowest") {
        return spec;
    }
    const auto colon = text.find(':');
    const std::string head = text.substr(0, colon);
    const std::string body = colon == std::string::npos ? "" : text.substr(colon + 1);
    if (head == "fock") {
        spec.kind = InitialSpec::Kind::fock;
        std::vector<std::string> parts;
        std::stringstream ss(body);
        std::string item;
        while (std::getline(ss, item, ',')) {
            parts.push_back(trim(item));
        }
        if (parts.size() != 3 || (parts[0] != "g" && parts[0] != "e")) {
            throw ConfigError("field 'initial_state': expected fock:q,n1,n2 with q in {g,e}, got '" +
                              text + "'");
        }
        spec.label.q = parts[0] == "g" ? Qubit::g : Qubit::e;
        spec.label.n1 = parse_int("initial_state", parts[1]);
        spec.label.n2 = parse_int("initial_state", parts[2]);
        if (spec.label.n1 < 0 || spec.label.n2 < 0) {
            throw ConfigError("field 'initial_state': occupations must be non-negative");
        }
        return spec;
    }
    if (head == "binomial") {
        spec.kind = InitialSpec::Kind::binomial;
        spec.eta = parse_double("initial_state", trim(body));
        if (spec.eta < 0.0 || spec.eta > 1.0) {
            throw ConfigError("field 'initial_state': binomial eta must lie in [0, 1]");
        }
        return spec;
    }
    throw ConfigError("field 'initial_state': expected pf_lowest, fock:q,n1,n2 or binomial:eta, got '" +
                      text + "'");
}

}  // namespace

void apply_setting(ExperimentConfig& cfg, const std::string& raw_key, const std::string& raw_value) {
    const std::string key = trim(raw_key);
    const std::string value = trim(raw_value);
    if (key == "model") {
        if (value == "ccjc") {
            cfg.model = ModelKind::ccjc;
        } else if (value == "ccqrm") {
            cfg.model = ModelKind::ccqrm;
        } else if (value == "schwinger") {
            cfg.model = ModelKind::schwinger;
        } else if (value == "subspace") {
            cfg.model = ModelKind::subspace;
        } else {
            throw ConfigError("field 'model': expected ccjc, ccqrm, schwinger or subspace, got '" +
                              value + "'");
        }
    } else if (key == "omega0") {
        cfg.params.omega0 = parse_double(key, value);
    } else if (key == "omega1") {
        cfg.params.omega1 = parse_double(key, value);
    } else if (key == "omega2") {
        cfg.params.omega2 = parse_double(key, value);
    } else if (key == "g1") {
        cfg.params.g1 = parse_double(key, value);
    } else if (key == "g2") {
        cfg.params.g2 = parse_double(key, value);
    } else if (key == "lambda") {
        cfg.lambda = parse_int(key, value);
    } else if (key == "initial_state") {
        parse_initial(value);
        cfg.initial_state = value;
    } else if (key == "t_start") {
        cfg.t_start = parse_double(key, value);
    } else if (key == "t_end") {
        if (value == "auto") {
            cfg.t_end.reset();
        } else {
            cfg.t_end = parse_double(key, value);
        }
    } else if (key == "n_points") {
        cfg.n_points = parse_int(key, value);
    } else if (key == "n_max_1") {
        if (value == "auto") {
            cfg.n_max_1.reset();
        } else {
            cfg.n_max_1 = parse_int(key, value);
        }
    } else if (key == "n_max_2") {
        if (value == "auto") {
            cfg.n_max_2.reset();
        } else {
            cfg.n_max_2 = parse_int(key, value);
        }
    } else if (key == "tol_algebra") {
        cfg.tolerances.algebra = parse_positive(key, value);
    } else if (key == "tol_unitarity") {
        cfg.tolerances.unitarity = parse_positive(key, value);
    } else if (key == "format") {
        if (value == "csv") {
            cfg.format = OutputFormat::csv;
        } else if (value == "json") {
            cfg.format = OutputFormat::json;
        } else {
            throw ConfigError("field 'format': expected csv or json, got '" + value + "'");
        }
    } else if (key == "out") {
        cfg.out = value;
    } else if (key == "preset") {
        ExperimentConfig base = preset(value);
        base.out = cfg.out;
        base.format = cfg.format;
        cfg = base;
    } else {
        throw ConfigError("unknown configuration key '" + key + "'");
    }
}

void apply_override(ExperimentConfig& cfg, const std::string& assignment) {
    const auto eq = assignment.find('=');
    if (eq == std::string::npos) {
        throw ConfigError("override '" + assignment + "' is not of the form key=value");
    }
    apply_setting(cfg, assignment.substr(0, eq), assignment.substr(eq + 1));
}

void apply_config_text(ExperimentConfig& cfg, const std::string& text) {
    std::stringstream ss(text);
    std::string line;
    int line_no = 0;
    while (std::getline(ss, line)) {
        ++line_no;
        const auto hash = line.find('#');
        const std::string body = trim(hash == std::string::npos ? line : line.substr(0, hash));
        if (body.empty()) {
            continue;
        }
        const auto eq = body.find('=');
        if (eq == std::string::npos) {
            throw ConfigError("config line " + std::to_string(line_no) + ": expected key = value");
        }
        apply_setting(cfg, body.substr(0, eq), body.substr(eq + 1));
    }
}

ExperimentConfig load_config_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) {
        throw ConfigError("cannot read config file '" + path.string() + "'");
    }
    std::stringstream buffer;
    buffer << in.rdbuf();
    ExperimentConfig cfg;
    apply_config_text(cfg, buffer.str());
    return cfg;
}

std::vector<std::string> preset_names() { return {"fig5", "fig6a", "fig6d", "fig7"}; }

ExperimentConfig preset(const std::string& name) {
    ExperimentConfig cfg;
    cfg.preset = name;
    cfg.model = ModelKind::ccjc;
    cfg.lambda = 25;
    cfg.initial_state = "fock:g,0,25";
    cfg.params = ModelParams{1.0, 1.0, 1.0, 1e-3, 1e-3};
    cfg.n_points = 4000;
    // All figure presets share the time axis of the homogeneous resonant run.
    cfg.t_end = 2.0 * predicted_revival_time(25, kCalibratedGEffRatio * 1e-3);
    if (name == "fig5") {
        return cfg;
    }
    if (name == "fig6a") {
        cfg.params.g1 = 1e-3;
        cfg.params.g2 = 0.5e-3;
        return cfg;
    }
    if (name == "fig6d") {
        cfg.params.g1 = 0.5e-3;
        cfg.params.g2 = 1e-3;
        return cfg;
    }
    if (name == "fig7") {
        cfg.params.omega2 = 1.001;
        return cfg;
    }
    throw ConfigError("unknown preset '" + name + "'");
}

double effective_coupling(const ExperimentConfig& cfg) {
    return effective_coupling(cfg.params, kCalibratedGEffRatio);
}

ExperimentConfig resolve(const ExperimentConfig& cfg) {
    ExperimentConfig r = cfg;
    try {
        derive(r.params);
    } catch (const InvalidParameters& e) {
        throw ConfigError(std::string("field 'params': ") + e.what());
    }
    if (r.lambda < 0) {
        throw ConfigError("field 'lambda': must be >= 0");
    }
    if (!r.n_max_1) {
        r.n_max_1 = default_n_max(r);
    }
    if (!r.n_max_2) {
        r.n_max_2 = default_n_max(r);
    }
    if (*r.n_max_1 < 1 || *r.n_max_2 < 1) {
        throw ConfigError("field 'n_max': truncation must be >= 1");
    }
    if (!r.t_end) {
        r.t_end = r.t_start + 2.0 * predicted_revival_time(std::max(r.lambda, 1), effective_coupling(r));
    }
    if (!(*r.t_end > r.t_start)) {
        throw ConfigError("field 't_end': must exceed t_start");
    }
    if (r.n_points < 2) {
        throw ConfigError("field 'n_points': must be >= 2");
    }
    const InitialSpec spec = parse_initial(r.initial_state);
    if (spec.kind == InitialSpec::Kind::fock && r.model != ModelKind::subspace &&
        (spec.label.n1 > *r.n_max_1 || spec.label.n2 > *r.n_max_2)) {
        throw ConfigError("field 'initial_state': occupation exceeds the truncation");
    }
    if (spec.kind != InitialSpec::Kind::fock && r.model != ModelKind::subspace &&
        (*r.n_max_1 < r.lambda || *r.n_max_2 < r.lambda)) {
        throw ConfigError("field 'n_max': truncation below lambda cannot hold the initial state");
    }
    if (r.model == ModelKind::subspace && spec.kind == InitialSpec::Kind::fock) {
        const auto& l = spec.label;
        if (l.n1 + l.n2 + (l.q == Qubit::e ? 1 : 0) != r.lambda) {
            throw ConfigError("field 'initial_state': excitation number differs from lambda for model=subspace");
        }
    }
    return r;
}

std::vector<std::pair<std::string, std::string>> config_echo(const ExperimentConfig& r) {
    std::vector<std::pair<std::string, std::string>> out;
    if (!r.preset.empty()) {
        out.emplace_back("preset", r.preset);
    }
    out.emplace_back("model", to_string(r.model));
    out.emplace_back("omega0", fmt(r.params.omega0));
    out.emplace_back("omega1", fmt(r.params.omega1));
    out.emplace_back("omega2", fmt(r.params.omega2));
    out.emplace_back("g1", fmt(r.params.g1));
    out.emplace_back("g2", fmt(r.params.g2));
    out.emplace_back("lambda", std::to_string(r.lambda));
    out.emplace_back("initial_state", r.initial_state);
    out.emplace_back("t_start", fmt(r.t_start));
    out.emplace_back("t_end", r.t_end ? fmt(*r.t_end) : "auto");
    out.emplace_back("n_points", std::to_string(r.n_points));
    out.emplace_back("n_max_1", r.n_max_1 ? std::to_string(*r.n_max_1) : "auto");
    out.emplace_back("n_max_2", r.n_max_2 ? std::to_string(*r.n_max_2) : "auto");
    out.emplace_back("tol_algebra", fmt(r.tolerances.algebra));
    out.emplace_back("tol_unitarity", fmt(r.tolerances.unitarity));
    out.emplace_back("format", to_string(r.format));
    return out;
}

std::string dump_config(const ExperimentConfig& cfg) {
    std::ostringstream os;
    for (const auto& [key, value] : config_echo(cfg)) {
        if (key == "preset") {
            continue;
        }
        os << key << " = " << value << "\n";
    }
    return os.str();
}

TimeGrid time_grid(const ExperimentConfig& r) {
    TimeGrid grid{r.t_start, r.t_end.value_or(r.t_start + 1.0), r.n_points};
    grid.validate();
    return grid;
}

namespace {

// Lab-frame (ccJC picture) initial vector on the given space.
ComplexVector lab_initial(const InitialSpec& spec, const ExperimentConfig& r, const FockSpace& space) {
    switch (spec.kind) {
        case InitialSpec::Kind::pf_lowest:
            return space.basis_state({0, r.lambda, Qubit::g});
        case InitialSpec::Kind::fock:
            return space.basis_state(spec.label);
        case InitialSpec::Kind::binomial: {
            ComplexVector psi_d = ComplexVector::Zero(static_cast<Eigen::Index>(space.dim()));
            const ComplexVector field = binomial_field(r.lambda, spec.eta);
            const FockSpace small({std::max(r.lambda, 1), std::max(r.lambda, 1), false});
            for (std::size_t i = 0; i < small.dim(); ++i) {
                BasisLabel l = small.label(i);
                if (l.n1 > space.config().n_max_1 || l.n2 > space.config().n_max_2) {
                    continue;
                }
                l.q = Qubit::g;
                psi_d[static_cast<Eigen::Index>(space.index(l))] = field[static_cast<Eigen::Index>(i)];
            }
            return schwinger_frame_unitary(r.params, space).adjoint() * psi_d;
        }
    }
    return {};
}

ComplexVector model_initial(const ExperimentConfig& r, const FockSpace& space) {
    const InitialSpec spec = parse_initial(r.initial_state);
    const ComplexVector lab = lab_initial(spec, r, space);
    switch (r.model) {
        case ModelKind::schwinger:
            return schwinger_frame_unitary(r.params, space) * lab;
        case ModelKind::ccqrm:
            return phase_rotation(space, 2, std::numbers::pi / 2.0) * lab;
        default:
            return lab;
    }
}

ComplexVector subspace_initial(const ExperimentConfig& r, const PFSubspace& s) {
    const int n_max = std::max(r.lambda, 1);
    const FockSpace space({n_max, n_max, true});
    const ComplexVector fg = fg_unitary(space) * lab_initial(parse_initial(r.initial_state), r, space);
    ComplexVector psi(s.dim());
    for (int i = 0; i < s.dim(); ++i) {
        BasisLabel l = s.embedding()[static_cast<std::size_t>(i)];
        l.q = fg_qubit(r.lambda);
        psi[i] = fg[static_cast<Eigen::Index>(space.index(l))];
    }
    if (std::abs(psi.norm() - 1.0) > r.tolerances.unitarity) {
        throw ConfigError("field 'initial_state': state is not contained in the lambda=" +
                          std::to_string(r.lambda) + " subspace");
    }
    return psi;
}

}  // namespace

Trajectory simulate(const ExperimentConfig& cfg) {
    const ExperimentConfig r = resolve(cfg);
    const TimeGrid grid = time_grid(r);
    EvolveOptions options;
    options.tolerances = r.tolerances;

    if (r.model == ModelKind::subspace) {
        const PFSubspace s = build_subspace(r.lambda, derive(r.params));
        return evolve_subspace(s, subspace_initial(r, s), grid, options);
    }
    const FockSpace space({*r.n_max_1, *r.n_max_2, true});
    Operator h;
    switch (r.model) {
        case ModelKind::ccjc:
            h = build_ccjc(r.params, space);
            break;
        case ModelKind::schwinger:
            h = build_schwinger(r.params, space);
            break;
        default:
            h = build_ccqrm(r.params, space);
            break;
    }
    return evolve_full(h, space, model_initial(r, space), grid, options);
}

RevivalReport run_revival(const ExperimentConfig& cfg) {
    const ExperimentConfig r = resolve(cfg);
    const Trajectory traj = simulate(r);
    RevivalReport report;
    report.lambda = r.lambda;
    report.g_eff = effective_coupling(r);
    report.window = 10.0 * rabi_period(r.lambda, report.g_eff);
    report.predicted = predicted_revival_time(std::max(r.lambda, 1), report.g_eff);
    report.result = revival_detect(traj, {report.window});
    if (report.result.status == RevivalStatus::revival) {
        report.deviation = std::abs(report.result.t_revival - report.predicted) / report.predicted;
    }
    report.max_n1 = *std::max_element(traj.n1.begin(), traj.n1.end());
    return report;
}

std::string format_revival(const RevivalReport& report) {
    const auto& res = report.result;
    std::ostringstream os;
    os << "status=" << to_string(res.status) << " lambda=" << report.lambda
       << " g_eff=" << fmt(report.g_eff) << " t_revival=" << fmt(res.t_revival)
       << " predicted=" << fmt(report.predicted) << " deviation=" << fmt(report.deviation)
       << " amplitude=" << fmt(res.amplitude) << " ratio=" << fmt(res.ratio)
       << " completeness=" << fmt(res.completeness) << " collapse_time=" << fmt(res.collapse_time)
       << " max_n1=" << fmt(report.max_n1)
       << " low_confidence=" << (res.low_confidence ? "true" : "false");
    return os.str();
}

std::vector<SweepJob> run_sweep(const ExperimentConfig& base, const std::string& key,
                                const std::vector<std::string>& values,
                                const std::filesystem::path& out_dir, int max_parallel) {
    std::filesystem::create_directories(out_dir);
    std::vector<SweepJob> jobs(values.size());
    const std::string stem = base.preset.empty() ? std::string("run") : base.preset;
    const std::string ext = base.format == OutputFormat::csv ? ".csv" : ".json";
    for (std::size_t i = 0; i < values.size(); ++i) {
        jobs[i].value = values[i];
        jobs[i].output = out_dir / (stem + "_" + key + "_" + std::to_string(i) + ext);
    }
    const std::size_t parallel = max_parallel > 0
                                     ? static_cast<std::size_t>(max_parallel)
                                     : std::max(1u, std::thread::hardware_concurrency());

    auto run_one = [&](std::size_t i) {
        SweepJob& job = jobs[i];
        try {
            ExperimentConfig cfg = base;
            apply_setting(cfg, key, job.value);
            const ExperimentConfig r = resolve(cfg);
            const Trajectory traj = simulate(r);
            std::ofstream out(job.output, std::ios::binary);
            if (!out) {
                throw ConfigError("cannot write '" + job.output.string() + "'");
            }
            write_trajectory(out, r, traj, r.format);
            job.ok = true;
        } catch (const std::exception& e) {
            job.error = e.what();
        }
    };

    for (std::size_t start = 0; start < jobs.size(); start += parallel) {
        std::vector<std::future<void>> batch;
        for (std::size_t i = start; i < std::min(jobs.size(), start + parallel); ++i) {
            batch.push_back(std::async(std::launch::async, run_one, i));
        }
        for (auto& f : batch) {
            f.get();
        }
    }
    return jobs;
}

int exit_code_for(const std::exception& e) {
    if (dynamic_cast<const VerificationFailure*>(&e) != nullptr) {
        return kExitVerificationFailure;
    }
    if (dynamic_cast<const ConfigError*>(&e) != nullptr ||
        dynamic_cast<const InvalidParameters*>(&e) != nullptr ||
        dynamic_cast<const ArgumentError*>(&e) != nullptr) {
        return kExitInvalidConfig;
    }
    return kExitNumericalContract;
}

}  // namespace pfsim
