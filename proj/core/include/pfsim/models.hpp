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

#include <string>
#include <utility>
#include <vector>

#include "pfsim/fock.hpp"
#include "pfsim/numerics.hpp"

namespace pfsim {

// Frequencies and couplings in units of the qubit frequency omega0.
struct ModelParams {
    double omega0 = 1.0;
    double omega1 = 1.0;
    double omega2 = 1.0;
    double g1 = 1e-3;
    double g2 = 1e-3;

    // Throws InvalidParameters when a frequency is non-positive, a coupling is
    // negative, or both couplings vanish.
    void validate() const;
};

struct DerivedParams {
    double delta1 = 0.0;  // omega0 - omega1
    double delta2 = 0.0;  // omega0 - omega2
    double Omega1 = 0.0;  // Schwinger-frame mode frequencies
    double Omega2 = 0.0;
    double gamma = 0.0;   // beam-splitter coupling
    double g = 0.0;       // sqrt(g1^2 + g2^2)
    double eps_plus = 0.0;
    double eps_minus = 0.0;
    double gamma_plus = 0.0;
    double gamma_minus = 0.0;
};

DerivedParams derive(const ModelParams& p);

// Lab-frame cross-cavity Rabi model: the qubit couples to mode 1 through
// sigma_x and to mode 2 through sigma_y.
Operator build_ccqrm(const ModelParams& p, const FockSpace& space);

// Rotating-wave counterpart in the frame rotating at omega0, before the mode-2
// phase rotation: the mode-2 coupling keeps its sigma_y phase,
// g2 (i a2^dagger sigma_- - i a2 sigma_+).
Operator build_ccqrm_rwa(const ModelParams& p, const FockSpace& space);

// Cross-cavity Jaynes-Cummings Hamiltonian (rotating frame).
Operator build_ccjc(const ModelParams& p, const FockSpace& space);

// Schwinger-frame Hamiltonian: only mode 1 couples to the qubit, mode 2 joins
// through a beam splitter.
Operator build_schwinger(const ModelParams& p, const FockSpace& space);

// exp(i angle a_j^dagger a_j).
Operator phase_rotation(const FockSpace& space, int mode, double angle);

// exp(theta (a1^dagger a2 - a2^dagger a1)); a2^dagger -> cos(theta) a2^dagger + sin(theta) a1^dagger.
Operator beam_splitter(const FockSpace& space, double theta);

// Unitary W with W H_ccJC W^dagger = H_D on every excitation-complete block:
// a beam splitter at theta = atan2(g2, g1) followed by exp(i pi a2^dagger a2).
Operator schwinger_frame_unitary(const ModelParams& p, const FockSpace& space);

// Parity-deformed blocks (H_+, H_-) acting on the two-mode space only.
std::pair<Operator, Operator> fg_blocks(const ModelParams& p, const FockSpace& field_space);

// U = 1/2 [(1 - Pi_12) (x) 1 + (1 + Pi_12) (x) sigma_x]. Hermitian and unitary.
Operator fg_unitary(const FockSpace& space);

// exp(-i angle sigma_y) on the qubit factor.
Operator qubit_rotation_y(const FockSpace& space, double angle);

struct FgCandidate {
    std::string name;
    double off_block_residual = 0.0;
    double block_residual = 0.0;  // max of ||H_e - H_+||, ||H_g - H_-||
};

struct FgReport {
    std::vector<FgCandidate> tried;
    std::string selected;  // empty when no candidate passes
    double off_block_residual = 0.0;
    double block_residual = 0.0;
    double unitarity_defect = 0.0;
    double spectral_residual = 0.0;  // spectrum(H_+) u spectrum(H_-) vs spectrum(H_ccJC)
    bool passed = false;
};

// Tries the plausible compositions of U with the pi/4 sigma_y rotation and
// reports the one that block-diagonalizes H_ccJC into H_+ (x) |e><e| +
// H_- (x) |g><g|. Throws VerificationFailure naming the best candidate when
// none passes.
FgReport fg_transform_check(const ModelParams& p, const FockSpace& space, const Tolerances& tol = {});

// Per excitation block k = 0..max_complete_excitation: largest eigenvalue
// mismatch between H_ccJC and H_D restricted to the block.
std::vector<double> frame_isospectrality(const ModelParams& p, const FockSpace& space,
                                         const Tolerances& tol = {});

}  // namespace pfsim
