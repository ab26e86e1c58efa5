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

#include <cstddef>
#include <optional>
#include <vector>

#include "pfsim/numerics.hpp"

namespace pfsim {

// Qubit levels. |g> is basis index 0 and the sigma_3 eigenvalue -1.
enum class Qubit : int { g = 0, e = 1 };

struct SpaceConfig {
    int n_max_1 = 1;
    int n_max_2 = 1;
    bool include_qubit = true;
};

struct BasisLabel {
    int n1 = 0;
    int n2 = 0;
    std::optional<Qubit> q;

    friend bool operator==(const BasisLabel&, const BasisLabel&) = default;
};

// Truncated mode1 (x) mode2 (x) qubit Hilbert space. The tensor order is fixed:
// flat index = (n1 * (n_max_2 + 1) + n2) * q_dim + q.
class FockSpace {
   public:
    explicit FockSpace(SpaceConfig cfg, Limits limits = {});

    const SpaceConfig& config() const { return cfg_; }
    std::size_t dim() const { return dim_; }
    std::size_t mode_dim(int mode) const;
    bool has_qubit() const { return cfg_.include_qubit; }

    std::size_t index(const BasisLabel& label) const;
    BasisLabel label(std::size_t index) const;
    ComplexVector basis_state(const BasisLabel& label) const;

    Operator identity() const;
    Operator annihilation(int mode) const;
    Operator creation(int mode) const;
    Operator number(int mode) const;

    // axis 1, 2, 3 -> sigma_x, sigma_y, sigma_z with sigma_3 = |e><e| - |g><g|.
    Operator qubit_pauli(int axis) const;
    Operator sigma_plus() const;   // |e><g|
    Operator sigma_minus() const;  // |g><e|

    // N = n1 + n2 + (sigma_z + 1)/2. Requires the qubit factor.
    Operator total_excitation() const;
    // Pi_12 = exp(i pi (n1 + n2)) acting on the whole space.
    Operator two_mode_parity() const;

    // Embed a single-mode or qubit-local matrix at its tensor slot.
    Operator embed_mode(int mode, const ComplexMatrix& local) const;
    Operator embed_qubit(const ComplexMatrix& local) const;
    // Field operator (x) qubit operator, for operators acting on both factors.
    Operator field_times_qubit(const ComplexMatrix& field, const ComplexMatrix& qubit) const;

    // Excitation number of a basis index: n1 + n2 (+1 if the qubit is excited).
    int excitation(std::size_t index) const;
    // Indices of the excitation-k block, in ascending flat order. Empty when the
    // block is not fully contained in the truncation.
    std::vector<std::size_t> excitation_block(int k) const;
    // Largest k for which excitation_block(k) is complete.
    int max_complete_excitation() const;

    // The same field truncation without the qubit factor.
    FockSpace field_space() const;

   private:
    SpaceConfig cfg_;
    Limits limits_;
    std::size_t dim_;
    std::size_t qdim_;
};

// Single-mode ladder a|n> = sqrt(n)|n-1> on {0..n_max}.
ComplexMatrix ladder(int n_max);

// Restrict an operator to the given basis indices (rows and columns).
ComplexMatrix restrict_to(const ComplexMatrix& op, const std::vector<std::size_t>& indices);

}  // namespace pfsim
