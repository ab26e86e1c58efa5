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

namespace pfsim {

// Every numerical threshold used by the library lives here. Defaults are the
// values the verification suites are pinned to; the CLI may override them.
struct Tolerances {
    double algebra = 1e-12;           // operator identities in the pF subspace
    double hermiticity = 1e-10;       // relative Frobenius norm of H - H^dagger
    double unitarity = 1e-10;         // ||U^dagger U - I||_F and state norm drift
    double spectral = 1e-10;          // eigenvalue multiset comparisons
    double conservation = 1e-10;      // drift of <N> along trajectories
    double closed_form_fidelity = 1e-9;
    double binomial_fidelity = 1e-10;
    double closed_form_norm = 1e-6;   // larger deviation means a transcription error
    double sigma_z_spectrum = 1e-10;  // eigenvalues of the reconstructed sigma_z
};

struct Limits {
    std::size_t max_dimension = 8192;
    int closed_form_lambda_max = 12;
};

}  // namespace pfsim
