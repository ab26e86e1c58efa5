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

#include "pfsim/fock.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <string>

#include "pfsim/errors.hpp"

namespace pfsim {

namespace {

void check_mode(int mode) {
    if (mode != 1 && mode != 2) {
        throw ArgumentError("mode index must be 1 or 2, got " + std::to_string(mode));
    }
}

ComplexMatrix identity_matrix(std::size_t n) {
    return ComplexMatrix::Identity(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
}

}  // namespace

ComplexMatrix ladder(int n_max) {
    const Eigen::Index d = n_max + 1;
    ComplexMatrix a = ComplexMatrix::Zero(d, d);
    for (Eigen::Index n = 1; n < d; ++n) {
        a(n - 1, n) = std::sqrt(static_cast<double>(n));
    }
    return a;
}

ComplexMatrix restrict_to(const ComplexMatrix& op, const std::vector<std::size_t>& indices) {
    const auto n = static_cast<Eigen::Index>(indices.size());
    ComplexMatrix out(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
        for (Eigen::Index j = 0; j < n; ++j) {
            out(i, j) = op(static_cast<Eigen::Index>(indices[i]),
                           static_cast<Eigen::Index>(indices[j]));
        }
    }
    return out;
}

FockSpace::FockSpace(SpaceConfig cfg, Limits limits) : cfg_(cfg), limits_(limits) {
    if (cfg_.n_max_1 < 1 || cfg_.n_max_2 < 1) {
        std::ostringstream msg;
        msg << "SpaceConfig: n_max_1 and n_max_2 must be >= 1, got " << cfg_.n_max_1 << ", "
            << cfg_.n_max_2;
        throw ArgumentError(msg.str());
    }
    qdim_ = cfg_.include_qubit ? 2 : 1;
    dim_ = static_cast<std::size_t>(cfg_.n_max_1 + 1) * static_cast<std::size_t>(cfg_.n_max_2 + 1) *
           qdim_;
    if (dim_ > limits_.max_dimension) {
        std::ostringstream msg;
        msg << "SpaceConfig: dimension " << dim_ << " exceeds maximum " << limits_.max_dimension;
        throw SizeError(msg.str());
    }
}

std::size_t FockSpace::mode_dim(int mode) const {
    check_mode(mode);
    return static_cast<std::size_t>((mode == 1 ? cfg_.n_max_1 : cfg_.n_max_2) + 1);
}

std::size_t FockSpace::index(const BasisLabel& label) const {
    if (label.n1 < 0 || label.n1 > cfg_.n_max_1 || label.n2 < 0 || label.n2 > cfg_.n_max_2) {
        std::ostringstream msg;
        msg << "basis label (" << label.n1 << ", " << label.n2 << ") outside truncation ("
            << cfg_.n_max_1 << ", " << cfg_.n_max_2 << ")";
        throw ArgumentError(msg.str());
    }
    if (label.q.has_value() != cfg_.include_qubit) {
        throw ArgumentError("basis label qubit component does not match the space configuration");
    }
    const std::size_t field = static_cast<std::size_t>(label.n1) * mode_dim(2) +
                              static_cast<std::size_t>(label.n2);
    const std::size_t q = label.q ? static_cast<std::size_t>(*label.q) : 0;
    return field * qdim_ + q;
}

BasisLabel FockSpace::label(std::size_t index) const {
    if (index >= dim_) {
        throw ArgumentError("basis index " + std::to_string(index) + " out of range");
    }
    BasisLabel out;
    if (cfg_.include_qubit) {
        out.q = static_cast<Qubit>(index % 2);
    }
    const std::size_t field = index / qdim_;
    out.n1 = static_cast<int>(field / mode_dim(2));
    out.n2 = static_cast<int>(field % mode_dim(2));
    return out;
}

ComplexVector FockSpace::basis_state(const BasisLabel& label) const {
    ComplexVector v = ComplexVector::Zero(static_cast<Eigen::Index>(dim_));
    v[static_cast<Eigen::Index>(index(label))] = 1.0;
    return v;
}

Operator FockSpace::identity() const { return identity_matrix(dim_); }

Operator FockSpace::embed_mode(int mode, const ComplexMatrix& local) const {
    check_mode(mode);
    const auto d1 = mode_dim(1);
    const auto d2 = mode_dim(2);
    const ComplexMatrix field = mode == 1 ? kron(local, identity_matrix(d2), limits_)
                                          : kron(identity_matrix(d1), local, limits_);
    return cfg_.include_qubit ? kron(field, identity_matrix(2), limits_) : field;
}

Operator FockSpace::embed_qubit(const ComplexMatrix& local) const {
    if (!cfg_.include_qubit) {
        throw ContractError("qubit operator requested on a space without qubit factor");
    }
    return kron(identity_matrix(mode_dim(1) * mode_dim(2)), local, limits_);
}

Operator FockSpace::field_times_qubit(const ComplexMatrix& field, const ComplexMatrix& qubit) const {
    if (!cfg_.include_qubit) {
        throw ContractError("field (x) qubit operator requested on a space without qubit factor");
    }
    return kron(field, qubit, limits_);
}

Operator FockSpace::annihilation(int mode) const {
    check_mode(mode);
    return embed_mode(mode, ladder(mode == 1 ? cfg_.n_max_1 : cfg_.n_max_2));
}

Operator FockSpace::creation(int mode) const { return annihilation(mode).adjoint(); }

Operator FockSpace::number(int mode) const {
    check_mode(mode);
    const int n_max = mode == 1 ? cfg_.n_max_1 : cfg_.n_max_2;
    ComplexMatrix local = ComplexMatrix::Zero(n_max + 1, n_max + 1);
    for (int n = 0; n <= n_max; ++n) {
        local(n, n) = static_cast<double>(n);
    }
    return embed_mode(mode, local);
}

Operator FockSpace::qubit_pauli(int axis) const {
    if (axis < 1 || axis > 3) {
        throw ArgumentError("Pauli axis must be 1, 2 or 3, got " + std::to_string(axis));
    }
    const ComplexMatrix sp = [] {
        ComplexMatrix m = ComplexMatrix::Zero(2, 2);
        m(1, 0) = 1.0;
        return m;
    }();
    const ComplexMatrix sm = sp.adjoint();
    ComplexMatrix local;
    switch (axis) {
        case 1:
            local = sp + sm;
            break;
        case 2:
            local = Complex(0.0, -1.0) * (sp - sm);
            break;
        default:
            local = sp * sm - sm * sp;
            break;
    }
    return embed_qubit(local);
}

Operator FockSpace::sigma_plus() const {
    ComplexMatrix local = ComplexMatrix::Zero(2, 2);
    local(1, 0) = 1.0;
    return embed_qubit(local);
}

Operator FockSpace::sigma_minus() const { return sigma_plus().adjoint(); }

Operator FockSpace::total_excitation() const {
    if (!cfg_.include_qubit) {
        throw ContractError("total_excitation requires the qubit factor");
    }
    ComplexMatrix n = ComplexMatrix::Zero(static_cast<Eigen::Index>(dim_),
                                          static_cast<Eigen::Index>(dim_));
    for (std::size_t i = 0; i < dim_; ++i) {
        n(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i)) = excitation(i);
    }
    return n;
}

Operator FockSpace::two_mode_parity() const {
    ComplexMatrix p = ComplexMatrix::Zero(static_cast<Eigen::Index>(dim_),
                                          static_cast<Eigen::Index>(dim_));
    for (std::size_t i = 0; i < dim_; ++i) {
        const auto l = label(i);
        p(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i)) =
            (l.n1 + l.n2) % 2 == 0 ? 1.0 : -1.0;
    }
    return p;
}

int FockSpace::excitation(std::size_t index) const {
    const auto l = label(index);
    return l.n1 + l.n2 + (l.q == Qubit::e ? 1 : 0);
}

int FockSpace::max_complete_excitation() const {
    return std::min(cfg_.n_max_1, cfg_.n_max_2);
}

std::vector<std::size_t> FockSpace::excitation_block(int k) const {
    std::vector<std::size_t> out;
    if (k < 0 || k > max_complete_excitation()) {
        return out;
    }
    for (std::size_t i = 0; i < dim_; ++i) {
        if (excitation(i) == k) {
            out.push_back(i);
        }
    }
    return out;
}

FockSpace FockSpace::field_space() const {
    return FockSpace({cfg_.n_max_1, cfg_.n_max_2, false}, limits_);
}

}  // namespace pfsim
