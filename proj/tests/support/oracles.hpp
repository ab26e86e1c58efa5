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

// Reference computations for the test suites. Everything here is written
// against plain loops and closed-form results so it shares no code path with
// the library under test.
#pragma once

#include <complex>
#include <vector>

#include <Eigen/Dense>

namespace oracle {

using cd = std::complex<double>;
using Mat = Eigen::MatrixXcd;

Mat kron(const Mat& a, const Mat& b);

// Eigenvalues of a Hermitian matrix by cyclic Jacobi rotations on the real
// symmetric embedding [[Re, -Im], [Im, Re]]. Sorted ascending.
std::vector<double> hermitian_eigenvalues(const Mat& h);

// exp(-i h t) by scaling and squaring of a truncated Taylor series.
Mat expm_minus_i(const Mat& h, double t);

// C(n, k) from Pascal's triangle.
double binomial(int n, int k);

// Floor of k / 2, the photon-number map of the parity-deformed embedding.
int half(int k);

// <lambda; m+1 | I+ | lambda; m> evaluated on the Fock labels directly.
double pf_raise_element(int lambda, int m);

// Lab-frame sigma_z eigenvalue of the embedded state |lambda; m>.
double pf_sigma_z(int lambda, int m);

// <sigma_z>(t) for resonant ccJC started in |g, 0, lambda>: the bright mode
// (g1 a1 + g2 a2)/g carries a binomial photon distribution with p = g2^2/g^2
// and each photon number n contributes a Rabi oscillation at 2 g sqrt(n).
double resonant_sigma_z(int lambda, double g1, double g2, double t);

// Same initial state, <n1>(t). The bright mode b and dark mode d evolve
// independently; n1 follows from <b^dagger b>, <d^dagger d> and <b^dagger d>.
double resonant_n1(int lambda, double g1, double g2, double t);

// Standard deviation about the mean over samples [first, first + count).
double window_rms(const std::vector<double>& x, std::size_t first, std::size_t count);

}  // namespace oracle
