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

#include <complex>
#include <string>

#include <Eigen/Dense>

#include "pfsim/tolerances.hpp"

namespace pfsim {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;

// All Hamiltonians, ladder, parity and Pauli operators are dense square
// complex matrices.
using Operator = ComplexMatrix;

struct EigenDecomposition {
    RealVector eigenvalues;     // ascending
    ComplexMatrix eigenvectors; // columns, unitary
};

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b, const Limits& limits = {});

ComplexMatrix commutator(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexMatrix anticommutator(const ComplexMatrix& a, const ComplexMatrix& b);

ComplexMatrix dagger(const ComplexMatrix& a);

double frobenius(const ComplexMatrix& a);

// ||A - A^dagger||_F / ||A||_F, or the absolute norm when A is zero.
double hermiticity_defect(const ComplexMatrix& a);

// ||U^dagger U - I||_F.
double unitarity_defect(const ComplexMatrix& u);

// Symmetrizes as (H + H^dagger)/2 before decomposing. Throws ContractError
// naming the relative defect when it exceeds tol.hermiticity.
EigenDecomposition eigh(const ComplexMatrix& h, const Tolerances& tol = {});

// exp(-i H t) built from the spectral decomposition.
ComplexMatrix propagator(const ComplexMatrix& h, double t, const Tolerances& tol = {});
ComplexMatrix propagator(const EigenDecomposition& eig, double t);

// exp(i * angle * D) for a Hermitian generator D.
ComplexMatrix unitary_from_generator(const ComplexMatrix& generator, double angle,
                                     const Tolerances& tol = {});

// Sorted eigenvalues of a Hermitian matrix.
RealVector spectrum(const ComplexMatrix& h, const Tolerances& tol = {});

// Largest absolute difference between two sorted spectra; infinity when the
// sizes differ.
double spectral_distance(const RealVector& a, const RealVector& b);

// |<a|b>| / (|a| |b|): overlap with the global phase quotiented out.
double fidelity(const ComplexVector& a, const ComplexVector& b);

// Pauli matrices in the standard {|0>, |1>} matrix form.
ComplexMatrix pauli_x();
ComplexMatrix pauli_y();
ComplexMatrix pauli_z();

}  // namespace pfsim
