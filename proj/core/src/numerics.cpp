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

#include "pfsim/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include <spdlog/spdlog.h>
#include <unsupported/Eigen/KroneckerProduct>

#include "pfsim/errors.hpp"

namespace pfsim {

namespace {

void require_square_pair(const ComplexMatrix& a, const ComplexMatrix& b, const char* op) {
    if (a.rows() != a.cols() || b.rows() != b.cols() || a.rows() != b.rows()) {
        std::ostringstream msg;
        msg << op << ": operands must be square with equal dimensions, got " << a.rows() << "x"
            << a.cols() << " and " << b.rows() << "x" << b.cols();
        throw ShapeError(msg.str());
    }
}

void require_finite(const ComplexMatrix& m, const char* op) {
    if (!m.allFinite()) {
        throw ContractError(std::string(op) + ": result contains non-finite entries");
    }
}

}  // namespace

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b, const Limits& limits) {
    if (a.size() == 0 || b.size() == 0) {
        throw ShapeError("kron: operands must be nonempty");
    }
    const auto rows = static_cast<std::size_t>(a.rows()) * static_cast<std::size_t>(b.rows());
    const auto cols = static_cast<std::size_t>(a.cols()) * static_cast<std::size_t>(b.cols());
    if (rows > limits.max_dimension || cols > limits.max_dimension) {
        std::ostringstream msg;
        msg << "kron: result " << rows << "x" << cols << " exceeds maximum dimension "
            << limits.max_dimension;
        throw SizeError(msg.str());
    }
    ComplexMatrix out = Eigen::kroneckerProduct(a, b).eval();
    require_finite(out, "kron");
    return out;
}

ComplexMatrix commutator(const ComplexMatrix& a, const ComplexMatrix& b) {
    require_square_pair(a, b, "commutator");
    return a * b - b * a;
}

ComplexMatrix anticommutator(const ComplexMatrix& a, const ComplexMatrix& b) {
    require_square_pair(a, b, "anticommutator");
    return a * b + b * a;
}

ComplexMatrix dagger(const ComplexMatrix& a) { return a.adjoint(); }

double frobenius(const ComplexMatrix& a) { return a.norm(); }

double hermiticity_defect(const ComplexMatrix& a) {
    if (a.rows() != a.cols()) {
        throw ShapeError("hermiticity_defect: matrix must be square");
    }
    const double defect = (a - a.adjoint()).norm();
    const double scale = a.norm();
    return scale > 0.0 ? defect / scale : defect;
}

double unitarity_defect(const ComplexMatrix& u) {
    if (u.rows() != u.cols()) {
        throw ShapeError("unitarity_defect: matrix must be square");
    }
    return (u.adjoint() * u - ComplexMatrix::Identity(u.rows(), u.cols())).norm();
}

EigenDecomposition eigh(const ComplexMatrix& h, const Tolerances& tol) {
    if (h.rows() != h.cols() || h.size() == 0) {
        throw ShapeError("eigh: matrix must be square and nonempty");
    }
    if (!h.allFinite()) {
        throw ContractError("eigh: input contains non-finite entries");
    }
    const double defect = hermiticity_defect(h);
    if (defect > tol.hermiticity) {
        std::ostringstream msg;
        msg << "eigh: input is not Hermitian, relative Frobenius norm ||H - H^dagger|| / ||H|| = "
            << defect << " exceeds " << tol.hermiticity;
        throw ContractError(msg.str());
    }
    spdlog::debug("eigh: symmetrizing {}x{} input (relative defect {:.3e})", h.rows(), h.cols(),
                  defect);
    const ComplexMatrix sym = 0.5 * (h + h.adjoint());

    Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(sym);
    if (solver.info() != Eigen::Success) {
        throw ContractError("eigh: eigensolver failed to converge");
    }
    return {solver.eigenvalues(), solver.eigenvectors()};
}

ComplexMatrix propagator(const EigenDecomposition& eig, double t) {
    if (!std::isfinite(t)) {
        throw ArgumentError("propagator: time must be finite");
    }
    const Eigen::Index n = eig.eigenvalues.size();
    ComplexVector phases(n);
    for (Eigen::Index k = 0; k < n; ++k) {
        phases[k] = std::polar(1.0, -eig.eigenvalues[k] * t);
    }
    return eig.eigenvectors * phases.asDiagonal() * eig.eigenvectors.adjoint();
}

ComplexMatrix propagator(const ComplexMatrix& h, double t, const Tolerances& tol) {
    return propagator(eigh(h, tol), t);
}

ComplexMatrix unitary_from_generator(const ComplexMatrix& generator, double angle,
                                     const Tolerances& tol) {
    // exp(i angle D) = exp(-i D t) with t = -angle.
    return propagator(generator, -angle, tol);
}

RealVector spectrum(const ComplexMatrix& h, const Tolerances& tol) {
    return eigh(h, tol).eigenvalues;
}

double spectral_distance(const RealVector& a, const RealVector& b) {
    if (a.size() != b.size()) {
        return std::numeric_limits<double>::infinity();
    }
    RealVector sa = a;
    RealVector sb = b;
    std::sort(sa.begin(), sa.end());
    std::sort(sb.begin(), sb.end());
    return sa.size() == 0 ? 0.0 : (sa - sb).cwiseAbs().maxCoeff();
}

double fidelity(const ComplexVector& a, const ComplexVector& b) {
    if (a.size() != b.size()) {
        throw ShapeError("fidelity: vectors have different dimensions");
    }
    const double na = a.norm();
    const double nb = b.norm();
    if (na == 0.0 || nb == 0.0) {
        return 0.0;
    }
    return std::abs(a.dot(b)) / (na * nb);
}

ComplexMatrix pauli_x() {
    ComplexMatrix m(2, 2);
    m << 0.0, 1.0, 1.0, 0.0;
    return m;
}

ComplexMatrix pauli_y() {
    ComplexMatrix m(2, 2);
    m << 0.0, Complex(0.0, -1.0), Complex(0.0, 1.0), 0.0;
    return m;
}

ComplexMatrix pauli_z() {
    ComplexMatrix m(2, 2);
    m << 1.0, 0.0, 0.0, -1.0;
    return m;
}

}  // namespace pfsim
