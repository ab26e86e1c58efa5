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

#include <filesystem>
#include <fstream>
#include <sstream>

#include <gtest/gtest.h>
#include <nlohmann/json.hpp>

#include "pfsim/errors.hpp"
#include "pfsim/experiment.hpp"

namespace pfsim {
namespace {

ExperimentConfig small_config() {
    ExperimentConfig cfg;
    cfg.lambda = 3;
    cfg.initial_state = "pf_lowest";
    cfg.t_end = 4000.0;
    cfg.n_points = 9;
    return cfg;
}

TEST(Presets, FigureParameters) {
    const ExperimentConfig f5 = preset("fig5");
    EXPECT_EQ(f5.lambda, 25);
    EXPECT_EQ(f5.model, ModelKind::ccjc);
    EXPECT_EQ(f5.initial_state, "fock:g,0,25");
    EXPECT_DOUBLE_EQ(f5.params.g1, 1e-3);
    EXPECT_DOUBLE_EQ(f5.params.g2, 1e-3);
    const ExperimentConfig f6a = preset("fig6a");
    EXPECT_DOUBLE_EQ(f6a.params.g1, 2.0 * f6a.params.g2);
    const ExperimentConfig f6d = preset("fig6d");
    EXPECT_DOUBLE_EQ(2.0 * f6d.params.g1, f6d.params.g2);
    EXPECT_DOUBLE_EQ(f6d.params.g2, 1e-3);
    EXPECT_DOUBLE_EQ(preset("fig7").params.omega2, 1.001);
    EXPECT_THROW(preset("fig9"), ConfigError);
    EXPECT_EQ(preset_names().size(), 4u);
}

TEST(Config, OverridesAndErrors) {
    ExperimentConfig cfg;
    apply_override(cfg, "g1=2e-3");
    apply_override(cfg, " model = subspace ");
    EXPECT_DOUBLE_EQ(cfg.params.g1, 2e-3);
    EXPECT_EQ(cfg.model, ModelKind::subspace);
    EXPECT_THROW(apply_override(cfg, "g1"), ConfigError);
    EXPECT_THROW(apply_override(cfg, "bogus=1"), ConfigError);
    EXPECT_THROW(apply_override(cfg, "g1=abc"), ConfigError);
    EXPECT_THROW(apply_override(cfg, "lambda=2.5"), ConfigError);
    EXPECT_THROW(apply_override(cfg, "initial_state=fock:x,0,1"), ConfigError);
    EXPECT_THROW(apply_override(cfg, "initial_state=binomial:2"), ConfigError);
    EXPECT_THROW(apply_override(cfg, "tol_algebra=-1"), ConfigError);
    try {
        apply_override(cfg, "omega2=nope");
        FAIL();
    } catch (const ConfigError& e) {
        EXPECT_NE(std::string(e.what()).find("omega2"), std::string::npos);
    }
}

TEST(Config, TextRoundTrip) {
    ExperimentConfig cfg;
    apply_config_text(cfg, "# comment\nlambda = 4   # trailing\n\ng2 = 3e-4\nt_end = auto\n");
    EXPECT_EQ(cfg.lambda, 4);
    EXPECT_DOUBLE_EQ(cfg.params.g2, 3e-4);
    EXPECT_THROW(apply_config_text(cfg, "lambda 4\n"), ConfigError);

    const ExperimentConfig fig = resolve(preset("fig6a"));
    ExperimentConfig reread;
    apply_config_text(reread, dump_config(fig));
    EXPECT_EQ(config_echo(resolve(reread)).size() + 1, config_echo(fig).size());
    EXPECT_EQ(dump_config(resolve(reread)), dump_config(fig));
}

TEST(Resolve, Defaults) {
    ExperimentConfig cfg;
    cfg.lambda = 6;
    const ExperimentConfig r = resolve(cfg);
    EXPECT_EQ(*r.n_max_1, 6);
    EXPECT_EQ(*r.n_max_2, 6);
    EXPECT_NEAR(*r.t_end, 2.0 * predicted_revival_time(6, 1e-3), 1e-9);
    cfg.model = ModelKind::ccqrm;
    EXPECT_EQ(*resolve(cfg).n_max_1, 26);
}

TEST(Resolve, Invariants) {
    ExperimentConfig cfg = small_config();
    cfg.model = ModelKind::subspace;
    cfg.initial_state = "fock:g,1,1";
    EXPECT_THROW(resolve(cfg), ConfigError);
    cfg.initial_state = "fock:e,1,1";
    EXPECT_NO_THROW(resolve(cfg));
    cfg = small_config();
    cfg.params.g1 = 0.0;
    cfg.params.g2 = 0.0;
    EXPECT_THROW(resolve(cfg), ConfigError);
    cfg = small_config();
    cfg.t_end = -1.0;
    EXPECT_THROW(resolve(cfg), ConfigError);
    cfg = small_config();
    cfg.initial_state = "fock:g,9,0";
    EXPECT_THROW(resolve(cfg), ConfigError);
}

TEST(Simulate, ModelsAgreeOnSigmaZ) {
    ExperimentConfig cfg = small_config();
    cfg.params = {1.0, 1.0, 1.0, 1e-3, 0.5e-3};
    for (const char* state : {"pf_lowest", "binomial:0.5", "fock:e,1,1"}) {
        cfg.initial_state = state;
        cfg.model = ModelKind::ccjc;
        const Trajectory jc = simulate(cfg);
        for (ModelKind m : {ModelKind::subspace, ModelKind::schwinger}) {
            cfg.model = m;
            const Trajectory other = simulate(cfg);
            for (std::size_t i = 0; i < jc.size(); ++i) {
                EXPECT_NEAR(other.sigma_z[i], jc.sigma_z[i], 1e-12) << state << " " << to_string(m);
            }
        }
    }
}

TEST(Simulate, SubspaceRejectsForeignState) {
    ExperimentConfig cfg = small_config();
    cfg.model = ModelKind::subspace;
    cfg.initial_state = "binomial:0.5";
    EXPECT_NO_THROW(simulate(cfg));
}

TEST(Output, CsvIsDeterministicAndEchoesConfig) {
    ExperimentConfig cfg = resolve(small_config());
    std::ostringstream a, b;
    write_trajectory(a, cfg, simulate(cfg), OutputFormat::csv);
    write_trajectory(b, cfg, simulate(cfg), OutputFormat::csv);
    EXPECT_EQ(a.str(), b.str());
    const std::string text = a.str();
    EXPECT_NE(text.find("# lambda = 3\n"), std::string::npos);
    EXPECT_NE(text.find("# n_max_1 = 3\n"), std::string::npos);
    EXPECT_NE(text.find("\nt,n1,n2,I3,sigma_z,norm\n"), std::string::npos);
    EXPECT_EQ(text.find('\r'), std::string::npos);
    int rows = 0;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        rows += (line[0] != '#' && line[0] != 't') ? 1 : 0;
    }
    EXPECT_EQ(rows, 9);
}

TEST(Output, JsonParses) {
    ExperimentConfig cfg = resolve(small_config());
    std::ostringstream os;
    write_trajectory(os, cfg, simulate(cfg), OutputFormat::json);
    const auto j = nlohmann::json::parse(os.str());
    EXPECT_EQ(j["t"].size(), 9u);
    EXPECT_EQ(j["config"]["lambda"], "3");
    EXPECT_NEAR(j["norm"][0].get<double>(), 1.0, 1e-12);
}

TEST(Verify, AlgebraAndFramesPass) {
    const VerificationReport a = run_verify(VerifyScope::algebra, 4);
    EXPECT_TRUE(a.passed());
    const VerificationReport f = run_verify(VerifyScope::frames, 0);
    EXPECT_TRUE(f.passed());
    EXPECT_EQ(f.labels.at("fg_composition"), "U");
    for (const auto& c : a.checks) {
        EXPECT_GE(c.residual, 0.0);
        EXPECT_TRUE(std::isfinite(c.residual));
    }
    std::ostringstream os;
    write_report(os, a);
    const auto j = nlohmann::json::parse(os.str());
    EXPECT_TRUE(j["passed"].get<bool>());
    EXPECT_EQ(j["checks"].size(), a.checks.size());
}

TEST(Verify, TightToleranceFailsAndNamesWorst) {
    VerifyOptions opt;
    opt.tolerances.algebra = 1e-30;
    const VerificationReport r = run_verify(VerifyScope::algebra, 2, opt);
    EXPECT_FALSE(r.passed());
    ASSERT_NE(r.worst(), nullptr);
    EXPECT_FALSE(r.worst()->pass);
}

TEST(Verify, ClosedFormCeiling) {
    EXPECT_THROW(run_verify(VerifyScope::closedform, 13), ConfigError);
    EXPECT_THROW(parse_scope("everything"), ConfigError);
    const VerificationReport r = run_verify(VerifyScope::closedform, 3);
    EXPECT_TRUE(r.passed());
    EXPECT_GT(r.values.at("closed_form_min_fidelity"), 1.0 - 1e-9);
}

TEST(ExitCodes, Mapping) {
    EXPECT_EQ(exit_code_for(VerificationFailure("x")), kExitVerificationFailure);
    EXPECT_EQ(exit_code_for(ConfigError("x")), kExitInvalidConfig);
    EXPECT_EQ(exit_code_for(InvalidParameters("x")), kExitInvalidConfig);
    EXPECT_EQ(exit_code_for(ContractError("x")), kExitNumericalContract);
}

TEST(Sweep, IsolatedOutputs) {
    const auto dir = std::filesystem::temp_directory_path() / "pfsim_sweep_test";
    std::filesystem::remove_all(dir);
    const auto jobs = run_sweep(small_config(), "g2", {"1e-3", "5e-4", "bad"}, dir, 2);
    ASSERT_EQ(jobs.size(), 3u);
    EXPECT_TRUE(jobs[0].ok);
    EXPECT_TRUE(jobs[1].ok);
    EXPECT_FALSE(jobs[2].ok);
    EXPECT_NE(jobs[0].output, jobs[1].output);
    EXPECT_TRUE(std::filesystem::exists(jobs[0].output));
    std::ifstream in(jobs[1].output);
    std::stringstream text;
    text << in.rdbuf();
    EXPECT_NE(text.str().find("# g2 = 0.00050000000000000001"), std::string::npos);
    std::filesystem::remove_all(dir);
}

}  // namespace
}  // namespace pfsim
