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

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numbers>
#include <ostream>

#include <nlohmann/json.hpp>
#include <spdlog/spdlog.h>

#include "pfsim/errors.hpp"
#include "pfsim/experiment.hpp"
#include "pfsim/parafermi.hpp"

namespace pfsim {

namespace {

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

// Non-finite residuals are mapped to the largest double so that the JSON
// stays valid and the entry still fails.
double finite_or_max(double v) {
    return std::isfinite(v) ? std::abs(v) : std::numeric_limits<double>::max();
}

struct NamedParams {
    std::string name;
    ModelParams params;
};

std::vector<NamedParams> frame_parameter_sets() {
    return {
        {"symmetric_resonant", ModelParams{1.0, 1.0, 1.0, 1e-3, 1e-3}},
        {"g1_eq_2g2", ModelParams{1.0, 1.0, 1.0, 1e-3, 0.5e-3}},
        {"detuned_omega2", ModelParams{1.0, 1.0, 1.001, 1e-3, 1e-3}},
    };
}

class ReportBuilder {
   public:
    explicit ReportBuilder(VerificationReport& r) : r_(r) {}

    void add(const std::string& group, const std::string& name, const std::string& label,
             double residual, double tolerance, bool informational = false) {
        CheckEntry e;
        e.group = group;
        e.name = name;
        e.case_label = label;
        e.residual = finite_or_max(residual);
        e.tolerance = tolerance;
        e.pass = e.residual <= tolerance;
        e.informational = informational;
        r_.checks.push_back(std::move(e));
    }

   private:
    VerificationReport& r_;
};

void verify_algebra_group(ReportBuilder& b, int lambda_max, const Tolerances& tol) {
    // Detuned, inhomogeneous couplings so that every term of H_lambda is active.
    const ModelParams p{1.0, 1.0004, 0.9991, 1e-3, 0.6e-3};
    const DerivedParams d = derive(p);
    for (int lambda = 1; lambda <= lambda_max; ++lambda) {
        const std::string label = "lambda=" + std::to_string(lambda);
        const PFSubspace s = build_subspace(lambda, d);
        const AlgebraReport a = verify_algebra(s, tol);
        for (const auto& id : a.identities) {
            b.add("algebra", id.name, label, id.residual, id.tolerance, id.informational);
        }
        double sz_res = std::numeric_limits<double>::infinity();
        double sz_spec = std::numeric_limits<double>::infinity();
        try {
            const Operator sz = sigma_z_from_pf(s, tol);
            sz_res = frobenius(sigma_z_projected(s) - sz);
            const RealVector ev = spectrum(sz, tol);
            sz_spec = 0.0;
            for (Eigen::Index i = 0; i < ev.size(); ++i) {
                sz_spec = std::max(sz_spec, std::abs(std::abs(ev[i]) - 1.0));
            }
        } catch (const VerificationFailure& e) {
            spdlog::debug("sigma_z reconstruction failed at {}: {}", label, e.what());
        }
        b.add("algebra", "sigma_z_projected - ({I+,I-} - (2 lambda + 1))", label, sz_res, tol.algebra);
        b.add("algebra", "sigma_z spectrum in {-1,+1}", label, sz_spec, tol.sigma_z_spectrum);

        const double block = frobenius(s.H() - project_fg_block(s, p));
        b.add("algebra", "H_lambda - projected FG block", label, block, tol.algebra);
        const double literal = frobenius(h_lambda_literal(s) - project_fg_block(s, p));
        b.add("algebra", "H_lambda with (-1)^lambda R constant - projected FG block", label, literal,
              tol.algebra, true);
    }
}

double schwinger_relation_residual(const ModelParams& p, const FockSpace& space) {
    const Operator w = schwinger_frame_unitary(p, space);
    const Operator lhs = w * build_ccjc(p, space) * w.adjoint();
    const Operator rhs = build_schwinger(p, space);
    std::vector<std::size_t> idx;
    for (int k = 0; k <= space.max_complete_excitation(); ++k) {
        const auto block = space.excitation_block(k);
        idx.insert(idx.end(), block.begin(), block.end());
    }
    const double scale = std::max(frobenius(rhs), 1.0);
    return frobenius(restrict_to(lhs, idx) - restrict_to(rhs, idx)) / scale;
}

double rwa_rotation_residual(const ModelParams& p, const FockSpace& space) {
    const Operator r = phase_rotation(space, 2, std::numbers::pi / 2.0);
    const Operator h_jc = build_ccjc(p, space);
    const double scale = std::max(frobenius(h_jc), 1.0);
    return frobenius(r.adjoint() * build_ccqrm_rwa(p, space) * r - h_jc) / scale;
}

void verify_frames_group(ReportBuilder& b, VerificationReport& report, const VerifyOptions& opt) {
    const Tolerances& tol = opt.tolerances;
    const int n = opt.frames_truncation;
    const FockSpace space({n, n, true}, opt.limits);
    std::string composition;
    for (const auto& [name, p] : frame_parameter_sets()) {
        try {
            const FgReport fg = fg_transform_check(p, space, tol);
            b.add("frames", "FG off-block residual", name, fg.off_block_residual, tol.unitarity);
            b.add("frames", "FG blocks - H_+/H_-", name, fg.block_residual, tol.unitarity);
            b.add("frames", "FG unitarity", name, fg.unitarity_defect, tol.unitarity);
            b.add("frames", "spec(H_+) u spec(H_-) = spec(H_ccJC)", name, fg.spectral_residual,
                  tol.spectral);
            if (composition.empty()) {
                composition = fg.selected;
            } else if (composition != fg.selected) {
                composition += "," + fg.selected;
            }
        } catch (const VerificationFailure& e) {
            b.add("frames", "FG off-block residual", name, std::numeric_limits<double>::infinity(),
                  tol.unitarity);
            report.labels["fg_failure_" + name] = e.what();
        }
        double iso = 0.0;
        for (double v : frame_isospectrality(p, space, tol)) {
            iso = std::max(iso, v);
        }
        b.add("frames", "per-block spec(H_ccJC) = spec(H_D)", name, iso, tol.spectral);
        b.add("frames", "W H_ccJC W^dagger - H_D", name, schwinger_relation_residual(p, space),
              tol.unitarity);
        b.add("frames", "R^dagger H_rwa R - H_ccJC", name, rwa_rotation_residual(p, space),
              tol.algebra);
    }
    report.labels["fg_composition"] = composition;
}

void verify_closedform_group(ReportBuilder& b, VerificationReport& report, int lambda_max,
                             const VerifyOptions& opt) {
    const Tolerances& tol = opt.tolerances;
    if (lambda_max > opt.limits.closed_form_lambda_max) {
        throw ConfigError("field 'lambda_max': closed-form checks are limited to lambda <= " +
                          std::to_string(opt.limits.closed_form_lambda_max));
    }
    const double coupling = 1e-3;
    const GEffCalibration cal = calibrate_g_eff(coupling);
    report.values["g_eff_ratio"] = cal.ratio;
    report.values["g_eff_calibration_residual"] = cal.residual;
    b.add("closedform", "calibrated g_eff ratio - frozen ratio", "lambda=1",
          std::abs(cal.ratio - kCalibratedGEffRatio), 1e-6);

    const ModelParams p{1.0, 1.0, 1.0, coupling, coupling};
    const double g_eff = effective_coupling(p, cal.ratio);
    report.values["g_eff"] = g_eff;
    double min_fidelity = 1.0;
    double min_binomial = 1.0;
    for (int lambda : {1, 2, 3, 5, 10}) {
        if (lambda > lambda_max) {
            continue;
        }
        const std::string label = "lambda=" + std::to_string(lambda);
        const PFSubspace s = build_subspace(lambda, derive(p));
        const TimeGrid grid{0.0, 2.0 * predicted_revival_time(lambda, g_eff), 50};
        EvolveOptions eo;
        eo.keep_snapshots = true;
        eo.tolerances = tol;
        const Trajectory traj = evolve_subspace(s, s.lowest(), grid, eo);
        double worst = 0.0;
        double norm_dev = 0.0;
        for (std::size_t i = 0; i < traj.size(); ++i) {
            const ComplexVector cf = closed_form_psi(lambda, g_eff, traj.times[i], tol);
            norm_dev = std::max(norm_dev, std::abs(cf.norm() - 1.0));
            worst = std::max(worst, 1.0 - fidelity(cf, traj.snapshots[i]));
        }
        min_fidelity = std::min(min_fidelity, 1.0 - worst);
        b.add("closedform", "closed-form infidelity (max over 50 times)", label, worst,
              tol.closed_form_fidelity);
        b.add("closedform", "closed-form norm deviation", label, norm_dev, tol.closed_form_norm);

        const double bf = fidelity(frame_rotated_lowest(lambda), binomial_state(lambda, 0.5));
        min_binomial = std::min(min_binomial, bf);
        b.add("closedform", "binomial(1/2) infidelity", label, 1.0 - bf, tol.binomial_fidelity);
    }
    report.values["closed_form_min_fidelity"] = min_fidelity;
    report.values["binomial_min_fidelity"] = min_binomial;
}

}  // namespace

void write_trajectory(std::ostream& os, const ExperimentConfig& resolved, const Trajectory& traj,
                      OutputFormat format) {
    if (format == OutputFormat::csv) {
        for (const auto& [key, value] : config_echo(resolved)) {
            os << "# " << key << " = " << value << '\n';
        }
        os << "t,n1,n2,I3,sigma_z,norm\n";
        for (std::size_t i = 0; i < traj.size(); ++i) {
            os << fmt(traj.times[i]) << ',' << fmt(traj.n1[i]) << ',' << fmt(traj.n2[i]) << ','
               << fmt(traj.I3[i]) << ',' << fmt(traj.sigma_z[i]) << ',' << fmt(traj.norm[i]) << '\n';
        }
        return;
    }
    // Numbers go through the same 17-digit formatting as CSV so both outputs
    // round-trip identically.
    auto column = [](const std::vector<double>& v) {
        nlohmann::ordered_json arr = nlohmann::ordered_json::array();
        for (double x : v) {
            arr.push_back(nlohmann::ordered_json::parse(fmt(x)));
        }
        return arr;
    };
    nlohmann::ordered_json j;
    nlohmann::ordered_json cfg = nlohmann::ordered_json::object();
    for (const auto& [key, value] : config_echo(resolved)) {
        cfg[key] = value;
    }
    j["config"] = cfg;
    j["t"] = column(traj.times);
    j["n1"] = column(traj.n1);
    j["n2"] = column(traj.n2);
    j["I3"] = column(traj.I3);
    j["sigma_z"] = column(traj.sigma_z);
    j["norm"] = column(traj.norm);
    os << j.dump(1) << '\n';
}

VerifyScope parse_scope(const std::string& text) {
    if (text == "algebra") {
        return VerifyScope::algebra;
    }
    if (text == "frames") {
        return VerifyScope::frames;
    }
    if (text == "closedform") {
        return VerifyScope::closedform;
    }
    if (text == "all") {
        return VerifyScope::all;
    }
    throw ConfigError("field 'scope': expected algebra, frames, closedform or all, got '" + text + "'");
}

const char* to_string(VerifyScope scope) {
    switch (scope) {
        case VerifyScope::algebra:
            return "algebra";
        case VerifyScope::frames:
            return "frames";
        case VerifyScope::closedform:
            return "closedform";
        case VerifyScope::all:
            return "all";
    }
    return "unknown";
}

bool VerificationReport::passed() const {
    return std::all_of(checks.begin(), checks.end(),
                       [](const CheckEntry& c) { return c.pass || c.informational; });
}

const CheckEntry* VerificationReport::worst() const {
    const CheckEntry* worst_entry = nullptr;
    double worst_ratio = -1.0;
    const bool ok = passed();
    for (const auto& c : checks) {
        if (c.informational || (!ok && c.pass)) {
            continue;
        }
        const double ratio = c.tolerance > 0.0 ? c.residual / c.tolerance : c.residual;
        if (ratio > worst_ratio) {
            worst_ratio = ratio;
            worst_entry = &c;
        }
    }
    return worst_entry;
}

VerificationReport run_verify(VerifyScope scope, int lambda_max, const VerifyOptions& options) {
    if (lambda_max < 0) {
        throw ConfigError("field 'lambda_max': must be >= 0");
    }
    VerificationReport report;
    report.scope = scope;
    report.lambda_max = lambda_max;
    ReportBuilder b(report);
    const bool all = scope == VerifyScope::all;
    if (all || scope == VerifyScope::closedform) {
        const int lm = lambda_max == 0 ? 10 : lambda_max;
        // Validate the ceiling before spending time on the other groups.
        if (lm > options.limits.closed_form_lambda_max) {
            throw ConfigError("field 'lambda_max': closed-form checks are limited to lambda <= " +
                              std::to_string(options.limits.closed_form_lambda_max));
        }
    }
    if (all || scope == VerifyScope::algebra) {
        verify_algebra_group(b, lambda_max == 0 ? 8 : lambda_max, options.tolerances);
        report.labels["p_identification"] = "p = lambda (2p + 1 = dim); p = 2 lambda reported as informational";
    }
    if (all || scope == VerifyScope::frames) {
        verify_frames_group(b, report, options);
    }
    if (all || scope == VerifyScope::closedform) {
        verify_closedform_group(b, report, lambda_max == 0 ? 10 : lambda_max, options);
    }
    return report;
}

void write_report(std::ostream& os, const VerificationReport& report) {
    nlohmann::ordered_json j;
    j["scope"] = to_string(report.scope);
    j["lambda_max"] = report.lambda_max;
    j["passed"] = report.passed();
    if (const CheckEntry* w = report.worst()) {
        j["worst"] = {{"group", w->group}, {"name", w->name}, {"case", w->case_label},
                      {"residual", w->residual}, {"tolerance", w->tolerance}};
    }
    nlohmann::ordered_json values = nlohmann::ordered_json::object();
    for (const auto& [k, v] : report.values) {
        values[k] = v;
    }
    j["values"] = values;
    nlohmann::ordered_json labels = nlohmann::ordered_json::object();
    for (const auto& [k, v] : report.labels) {
        labels[k] = v;
    }
    j["identifications"] = labels;
    nlohmann::ordered_json checks = nlohmann::ordered_json::array();
    for (const auto& c : report.checks) {
        checks.push_back({{"group", c.group},
                          {"name", c.name},
                          {"case", c.case_label},
                          {"residual", c.residual},
                          {"tolerance", c.tolerance},
                          {"pass", c.pass},
                          {"informational", c.informational}});
    }
    j["checks"] = checks;
    os << j.dump(2) << '\n';
}

}  // namespace pfsim
