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
#include <vector>

#include "pfsim/fock.hpp"
#include "pfsim/models.hpp"
#include "pfsim/numerics.hpp"

namespace pfsim {

// Which picture a state vector is written in.
enum class Frame {
    lab,        // mode1 (x) mode2 (x) qubit, ccJC rotating frame
    fg,         // after the FG unitary U
    schwinger,  // after the Schwinger-frame beam splitter
    subspace,   // |lambda; m> basis, ascending m
};

const char* to_string(Frame frame);

struct State {
    ComplexVector amplitudes;
    Frame frame = Frame::lab;
};

// Fidelity between two states written in the same frame. Throws ArgumentError
// on a frame mismatch.
double fidelity(const State& a, const State& b);

// Generating function h(k) = (2k - 1 + e^{i pi k}) / 4. Evaluated from the
// complex exponential and cross-checked against floor(k/2).
long h(long k);

struct PFLabel {
    int lambda = 0;
    int m = 0;
};

// Two-mode occupations (h(lambda + m), h(lambda - m)) for a pF label.
BasisLabel fock_embedding(const PFLabel& label);

// FG-frame qubit level attached to the subspace: H_+ (even lambda) lives on
// |e>, H_- (odd lambda) on |g>.
Qubit fg_qubit(int lambda);

class PFSubspace {
   public:
    int lambda() const { return lambda_; }
    int dim() const { return 2 * lambda_ + 1; }

    const Operator& I3() const { return i3_; }
    const Operator& Iplus() const { return iplus_; }
    const Operator& Iminus() const { return iminus_; }
    const Operator& R() const { return r_; }
    const Operator& H() const { return h_; }
    const DerivedParams& params() const { return params_; }

    // Embedded two-mode labels, index i <-> m = i - lambda.
    const std::vector<BasisLabel>& embedding() const { return embedding_; }
    // Total photon number n1 + n2 per basis state (lambda or lambda - 1).
    int photons(int index) const;
    // Isometry from the subspace into the two-mode space with n_max = lambda.
    const ComplexMatrix& isometry() const { return isometry_; }

    ComplexVector lowest() const;  // |lambda; -lambda>

   private:
    friend PFSubspace build_subspace(int lambda, const DerivedParams& params);

    int lambda_ = 0;
    DerivedParams params_;
    Operator i3_, iplus_, iminus_, r_, h_;
    std::vector<BasisLabel> embedding_;
    ComplexMatrix isometry_;
};

// Projects the Fock-space definitions of I3, I+, I-, R onto the embedded
// basis and assembles H_lambda. Throws ContractError if an operator leaks
// out of the subspace.
PFSubspace build_subspace(int lambda, const DerivedParams& params);

// H_lambda exactly as the closed operator expression with the (-1)^lambda R
// constant term. It agrees with the projected block only for even lambda or
// eps_plus = 0; kept for the verification report.
Operator h_lambda_literal(const PFSubspace& s);

// Projection of H_+ (even lambda) or H_- (odd lambda) onto the subspace.
Operator project_fg_block(const PFSubspace& s, const ModelParams& p);

struct IdentityResidual {
    std::string name;
    double residual = 0.0;
    double tolerance = 0.0;
    bool pass = false;
    bool informational = false;  // recorded but excluded from the verdict
};

struct AlgebraReport {
    int lambda = 0;
    std::vector<IdentityResidual> identities;
    bool passed() const;
    double worst() const;  // largest non-informational residual
};

AlgebraReport verify_algebra(const PFSubspace& s, const Tolerances& tol = {});

// sigma_z = {I+, I-} - (2 lambda + 1). Throws VerificationFailure when an
// eigenvalue lies outside {-1, +1} by more than tol.sigma_z_spectrum.
Operator sigma_z_from_pf(const PFSubspace& s, const Tolerances& tol = {});

// Lab-frame sigma_z projected onto the subspace via the FG embedding.
Operator sigma_z_projected(const PFSubspace& s);

// Two-mode binomial state sum_k sqrt(C(lambda,k) (1-eta)^(lambda-k) eta^k) |lambda-k, k>
// tensored with the qubit ground state, in the Schwinger frame on a space
// with n_max_1 = n_max_2 = lambda.
State binomial_state(int lambda, double eta);

// Field part of binomial_state on the two-mode space.
ComplexVector binomial_field(int lambda, double eta);

// Maps a subspace vector to the full FG-frame vector on n_max = lambda.
State embed_fg(const PFSubspace& s, const ComplexVector& psi);
// U applied to an FG-frame state (U is its own inverse).
State fg_to_lab(const State& fg);
// Lab-frame state to the Schwinger frame at a 50:50 beam splitter.
State lab_to_schwinger_balanced(const State& lab, int lambda);

// exp(pi/4 (a1^dagger a2 - a2^dagger a1)) U^dagger |lambda; -lambda>.
State frame_rotated_lowest(int lambda);

}  // namespace pfsim
