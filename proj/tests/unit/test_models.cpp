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

#include <cmath>
#include <numbers>

#include <gtest/gtest.h>

#include "../support/oracles.hpp"
#include "pfsim/errors.hpp"
#include "pfsim/models.hpp"

namespace pfsim {
namespace {

TEST(Derive, HandComputedValues) {
    const DerivedParams d = derive({1.0, 0.999, 1.002, 1e-3, 2e-3});
    EXPECT_NEAR(d.delta1, 1e-3, 1e-15);
    EXPECT_NEAR(d.delta2, -2e-3, 1e-15);
    EXPECT_NEAR(d.g, std::sqrt(5e-6), 1e-15);
    EXPECT_NEAR(d.Omega1, -1.4e-3, 1e-15);
    EXPECT_NEAR(d.Omega2, 4e-4, 1e-15);
    EXPECT_NEAR(d.gamma, 1.2e-3, 1e-15);
    EXPECT_NEAR(d.eps_plus, -5e-4, 1e-15);
    EXPECT_NEAR(d.eps_minus, 1.5e-3, 1e-15);
    EXPECT_NEAR(d.gamma_plus, 3e-3 / (2.0 * std::numbers::sqrt2), 1e-15);
    EXPECT_NEAR(d.gamma_minus, -1e-3 / (2.0 * std::numbers::sqrt2), 1e-15);
}

TEST(Derive, RejectsInvalidParameters) {
    EXPECT_THROW(derive({1.0, 1.0, 1.0, 0.0, 0.0}), InvalidParameters);
    EXPECT_THROW(derive({-1.0, 1.0, 1.0, 1e-3, 1e-3}), InvalidParameters);
    EXPECT_THROW(derive({1.0, 1.0, NAN, 1e-3, 1e-3}), InvalidParameters);
}

TEST(Builders, RequireQubit) {
    const FockSpace f({2, 2, false});
    const ModelParams p;
    EXPECT_THROW(build_ccjc(p, f), ContractError);
    EXPECT_THROW(build_ccqrm(p, f), ContractError);
    EXPECT_THROW(build_schwinger(p, f), ContractError);
}

TEST(Builders, Hermitian) {
    const FockSpace s({3, 3, true});
    const ModelParams p{1.0, 1.0004, 0.9991, 1e-3, 0.6e-3};
    for (const Operator& h : {build_ccjc(p, s), build_ccqrm(p, s), build_ccqrm_rwa(p, s), build_schwinger(p, s)}) {
        EXPECT_LT(hermiticity_defect(h), 1e-14);
    }
}

TEST(Ccjc, SingleExcitationAnalyticSpectrum) {
    // Resonance: the one-excitation block {|g,1,0>, |g,0,1>, |e,0,0>} has
    // eigenvalues 0 and +-sqrt(g1^2 + g2^2).
    const double g1 = 1e-3, g2 = 0.4e-3;
    const FockSpace s({2, 2, true});
    const Operator h = build_ccjc({1.0, 1.0, 1.0, g1, g2}, s);
    const auto ev = oracle::hermitian_eigenvalues(restrict_to(h, s.excitation_block(1)));
    const double g = std::hypot(g1, g2);
    ASSERT_EQ(ev.size(), 3u);
    EXPECT_NEAR(ev[0], -g, 1e-15);
    EXPECT_NEAR(ev[1], 0.0, 1e-15);
    EXPECT_NEAR(ev[2], g, 1e-15);
}

TEST(Ccjc, ConservesExcitation) {
    const FockSpace s({3, 3, true});
    const Operator h = build_ccjc({1.0, 1.001, 0.998, 1e-3, 2e-3}, s);
    EXPECT_LT(commutator(h, s.total_excitation()).norm(), 1e-15);
}

TEST(Frames, RotatingFrameRelation) {
    const FockSpace s({3, 3, true});
    const ModelParams p{1.0, 1.0002, 0.9993, 1e-3, 0.7e-3};
    const Operator r = phase_rotation(s, 2, std::numbers::pi / 2.0);
    EXPECT_LT((r.adjoint() * build_ccqrm_rwa(p, s) * r - build_ccjc(p, s)).norm(), 1e-15);
}

TEST(Frames, SchwingerFrameOnCompleteBlocks) {
    const FockSpace s({4, 4, true});
    for (const ModelParams& p : {ModelParams{1.0, 1.0, 1.0, 1e-3, 1e-3}, ModelParams{1.0, 1.0, 1.001, 1e-3, 0.5e-3}}) {
        const Operator w = schwinger_frame_unitary(p, s);
        EXPECT_LT(unitarity_defect(w), 1e-12);
        const Operator lhs = w * build_ccjc(p, s) * w.adjoint();
        const Operator rhs = build_schwinger(p, s);
        for (int k = 0; k <= s.max_complete_excitation(); ++k) {
            const auto idx = s.excitation_block(k);
            EXPECT_LT((restrict_to(lhs, idx) - restrict_to(rhs, idx)).norm(), 1e-15) << "k=" << k;
        }
    }
}

TEST(Frames, BeamSplitterMixesSinglePhoton) {
    const FockSpace f({1, 1, false});
    const Operator bs = beam_splitter(f, std::numbers::pi / 4.0);
    const ComplexVector out = bs * f.basis_state({1, 0, std::nullopt});
    EXPECT_NEAR(std::abs(out[static_cast<Eigen::Index>(f.index({1, 0, std::nullopt}))]), 1.0 / std::numbers::sqrt2, 1e-14);
    EXPECT_NEAR(std::abs(out[static_cast<Eigen::Index>(f.index({0, 1, std::nullopt}))]), 1.0 / std::numbers::sqrt2, 1e-14);
}

TEST(Fg, UnitaryAloneBlockDiagonalizes) {
    const FockSpace s({5, 5, true});
    const FgReport rep = fg_transform_check({1.0, 1.0, 1.001, 1e-3, 0.5e-3}, s);
    EXPECT_TRUE(rep.passed);
    EXPECT_EQ(rep.selected, "U");
    EXPECT_LT(rep.off_block_residual, 1e-12);
    EXPECT_LT(rep.block_residual, 1e-12);
    EXPECT_LT(rep.spectral_residual, 1e-12);
    EXPECT_EQ(rep.tried.size(), 5u);
    // U is an involution.
    const Operator u = fg_unitary(s);
    EXPECT_LT((u * u - s.identity()).norm(), 1e-15);
}

TEST(Fg, BlocksRequireFieldSpace) {
    EXPECT_THROW(fg_blocks(ModelParams{}, FockSpace({2, 2, true})), ContractError);
}

TEST(Frames, Isospectrality) {
    const FockSpace s({4, 4, true});
    for (double v : frame_isospectrality({1.0, 1.0, 1.001, 1e-3, 0.5e-3}, s)) {
        EXPECT_LT(v, 1e-12);
    }
}

}  // namespace
}  // namespace pfsim
