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

#include "pfsim/models.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numbers>
#include <sstream>

#include "pfsim/errors.hpp"

namespace pfsim {

void ModelParams::validate() const {
    std::ostringstream msg;
    if (!(omega0 > 0.0) || !(omega1 > 0.0) || !(omega2 > 0.0)) {
        msg << "frequencies must be positive (omega0=" << omega0 << ", omega1=" << omega1
            << ", omega2=" << omega2 << ")";
        throw InvalidParameters(msg.str());
    }
    if (!(g1 >= 0.0) || !(g2 >= 0.0)) {
        msg << "couplings must be non-negative (g1=" << g1 << ", g2=" << g2 << ")";
        throw InvalidParameters(msg.str());
    }
    if (g1 == 0.0 && g2 == 0.0) {
        throw InvalidParameters("g = sqrt(g1^2 + g2^2) vanishes; derived parameters undefined");
    }
}

DerivedParams derive(const ModelParams& p) {
    p.validate();
    DerivedParams d;
    d.delta1 = p.omega0 - p.omega1;
    d.delta2 = p.omega0 - p.omega2;
    const double g_sq = p.g1 * p.g1 + p.g2 * p.g2;
    d.g = std::sqrt(g_sq);
    d.Omega1 = (d.delta1 * p.g1 * p.g1 + d.delta2 * p.g2 * p.g2) / g_sq;
    d.Omega2 = (d.delta1 * p.g2 * p.g2 + d.delta2 * p.g1 * p.g1) / g_sq;
    d.gamma = (p.omega2 - p.omega1) * p.g1 * p.g2 / g_sq;
    d.eps_plus = 0.5 * (d.delta1 + d.delta2);
    d.eps_minus = 0.5 * (d.delta1 - d.delta2);
    const double scale = std::pow(2.0, -1.5);
    d.gamma_plus = scale * (p.g1 + p.g2);
    d.gamma_minus = scale * (p.g1 - p.g2);
    return d;
}

namespace {

void require_qubit(const FockSpace& space, const char* who) {
    if (!space.has_qubit()) {
        throw ContractError(std::string(who) + ": space configuration must include the qubit");
    }
}

ComplexMatrix local_sigma_plus() {
    ComplexMatrix sp = ComplexMatrix::Zero(2, 2);
    sp(1, 0) = 1.0;
    return sp;
}

// Field operator (x) qubit operator, assembled factor-wise so that no
// full-space matrix products are formed.
Operator field_qubit(const FockSpace& space, const ComplexMatrix& field, const ComplexMatrix& qubit) {
    return space.field_times_qubit(field, qubit);
}

// Jaynes-Cummings coupling a^dagger sigma_- + a sigma_+ for one mode.
Operator jc_coupling(const FockSpace& space, int mode) {
    const Operator a = space.field_space().annihilation(mode);
    const ComplexMatrix sp = local_sigma_plus();
    return field_qubit(space, a.adjoint(), sp.adjoint()) + field_qubit(space, a, sp);
}

// a1^dagger a2 + a2^dagger a1 (sign = +1) or a1^dagger a2 - a2^dagger a1 (sign = -1).
Operator mode_exchange(const FockSpace& space, double sign) {
    const FockSpace field = space.has_qubit() ? space.field_space() : space;
    const Operator a1 = field.annihilation(1);
    const Operator a2 = field.annihilation(2);
    const Operator k = a1.adjoint() * a2 + sign * (a2.adjoint() * a1);
    return space.has_qubit() ? field_qubit(space, k, ComplexMatrix::Identity(2, 2)) : k;
}

}  // namespace

Operator build_ccqrm(const ModelParams& p, const FockSpace& space) {
    p.validate();
    require_qubit(space, "build_ccqrm");
    const FockSpace field = space.field_space();
    const Operator x1 = field.annihilation(1) + field.creation(1);
    const Operator x2 = field.annihilation(2) + field.creation(2);
    Operator h = 0.5 * p.omega0 * space.qubit_pauli(3);
    h += p.omega1 * space.number(1) + p.omega2 * space.number(2);
    h += p.g1 * field_qubit(space, x1, pauli_x());
    h += p.g2 * field_qubit(space, x2, pauli_y());
    return h;
}

Operator build_ccqrm_rwa(const ModelParams& p, const FockSpace& space) {
    require_qubit(space, "build_ccqrm_rwa");
    const DerivedParams d = derive(p);
    const Operator a2 = space.field_space().annihilation(2);
    const ComplexMatrix sp = local_sigma_plus();
    const Complex i(0.0, 1.0);
    Operator h = d.delta1 * space.number(1) + d.delta2 * space.number(2);
    h += p.g1 * jc_coupling(space, 1);
    h += p.g2 * (field_qubit(space, i * a2.adjoint(), sp.adjoint()) - field_qubit(space, i * a2, sp));
    return h;
}

Operator build_ccjc(const ModelParams& p, const FockSpace& space) {
    require_qubit(space, "build_ccjc");
    const DerivedParams d = derive(p);
    Operator h = d.delta1 * space.number(1) + d.delta2 * space.number(2);
    h += p.g1 * jc_coupling(space, 1) + p.g2 * jc_coupling(space, 2);
    return h;
}

Operator build_schwinger(const ModelParams& p, const FockSpace& space) {
    require_qubit(space, "build_schwinger");
    const DerivedParams d = derive(p);
    Operator h = d.Omega1 * space.number(1) + d.Omega2 * space.number(2);
    h += d.g * jc_coupling(space, 1);
    h += d.gamma * mode_exchange(space, 1.0);
    return h;
}

Operator phase_rotation(const FockSpace& space, int mode, double angle) {
    const Operator n = space.number(mode);
    Operator u = Operator::Zero(n.rows(), n.cols());
    for (Eigen::Index k = 0; k < n.rows(); ++k) {
        u(k, k) = std::polar(1.0, angle * n(k, k).real());
    }
    return u;
}

Operator beam_splitter(const FockSpace& space, double theta) {
    // K = a1^dagger a2 - a2^dagger a1 is anti-Hermitian; exp(theta K) =
    // exp(i theta D) with the Hermitian D = -i K. The qubit factor is idle.
    const FockSpace field = space.has_qubit() ? space.field_space() : space;
    const Operator generator = Complex(0.0, -1.0) * mode_exchange(field, -1.0);
    const Operator u = unitary_from_generator(generator, theta);
    return space.has_qubit() ? field_qubit(space, u, ComplexMatrix::Identity(2, 2)) : u;
}

Operator schwinger_frame_unitary(const ModelParams& p, const FockSpace& space) {
    p.validate();
    const double theta = std::atan2(p.g2, p.g1);
    return phase_rotation(space, 2, std::numbers::pi) * beam_splitter(space, theta);
}

std::pair<Operator, Operator> fg_blocks(const ModelParams& p, const FockSpace& field_space) {
    if (field_space.has_qubit()) {
        throw ContractError("fg_blocks: expects the two-mode space without qubit factor");
    }
    const DerivedParams d = derive(p);
    const Operator id = field_space.identity();
    const Operator parity = field_space.two_mode_parity();
    const Operator free = d.delta1 * field_space.number(1) + d.delta2 * field_space.number(2);

    auto block = [&](double sign) {
        Operator h = free;
        const double g[2] = {p.g1, p.g2};
        for (int mode = 1; mode <= 2; ++mode) {
            const Operator a = field_space.annihilation(mode);
            h += 0.5 * g[mode - 1] *
                 (a.adjoint() * (id - sign * parity) + a * (id + sign * parity));
        }
        return h;
    };
    return {block(+1.0), block(-1.0)};
}

Operator fg_unitary(const FockSpace& space) {
    require_qubit(space, "fg_unitary");
    const FockSpace field = space.field_space();
    const Operator id = field.identity();
    const Operator parity = field.two_mode_parity();
    const ComplexMatrix qid = ComplexMatrix::Identity(2, 2);
    return 0.5 * (space.field_times_qubit(id - parity, qid) +
                  space.field_times_qubit(id + parity, pauli_x()));
}

Operator qubit_rotation_y(const FockSpace& space, double angle) {
    const ComplexMatrix local =
        std::cos(angle) * ComplexMatrix::Identity(2, 2) - Complex(0.0, std::sin(angle)) * pauli_y();
    return space.embed_qubit(local);
}

namespace {

// Split an operator on field (x) qubit into its qubit blocks <q|H|q'>.
ComplexMatrix qubit_block(const Operator& h, Qubit row, Qubit col) {
    const Eigen::Index n = h.rows() / 2;
    ComplexMatrix out(n, n);
    const auto r = static_cast<Eigen::Index>(row);
    const auto c = static_cast<Eigen::Index>(col);
    for (Eigen::Index i = 0; i < n; ++i) {
        for (Eigen::Index j = 0; j < n; ++j) {
            out(i, j) = h(2 * i + r, 2 * j + c);
        }
    }
    return out;
}

}  // namespace

FgReport fg_transform_check(const ModelParams& p, const FockSpace& space, const Tolerances& tol) {
    require_qubit(space, "fg_transform_check");
    const Operator h = build_ccjc(p, space);
    const auto [h_plus, h_minus] = fg_blocks(p, space.field_space());
    const Operator u = fg_unitary(space);
    const Operator ry = qubit_rotation_y(space, std::numbers::pi / 4.0);

    struct Composition {
        const char* name;
        Operator transform;
    };
    const std::vector<Composition> candidates = {
        {"U", u},
        {"U*Ry(pi/4)", u * ry},
        {"Ry(pi/4)*U", ry * u},
        {"U*Ry(pi/4)^dagger", u * ry.adjoint()},
        {"Ry(pi/4)^dagger*U", ry.adjoint() * u},
    };

    FgReport report;
    report.unitarity_defect = unitarity_defect(u);
    const double scale = std::max(h.norm(), 1.0);
    const FgCandidate* best = nullptr;
    for (const auto& c : candidates) {
        const Operator hf = c.transform * h * c.transform.adjoint();
        FgCandidate entry{c.name, 0.0, 0.0};
        entry.off_block_residual =
            std::max(qubit_block(hf, Qubit::g, Qubit::e).norm(), qubit_block(hf, Qubit::e, Qubit::g).norm()) /
            scale;
        entry.block_residual = std::max((qubit_block(hf, Qubit::e, Qubit::e) - h_plus).norm(),
                                        (qubit_block(hf, Qubit::g, Qubit::g) - h_minus).norm()) /
                               scale;
        report.tried.push_back(entry);
    }
    for (const auto& c : report.tried) {
        if (best == nullptr || std::max(c.off_block_residual, c.block_residual) <
                                   std::max(best->off_block_residual, best->block_residual)) {
            best = &c;
        }
    }
    report.off_block_residual = best->off_block_residual;
    report.block_residual = best->block_residual;

    RealVector joint(h.rows());
    const RealVector sp = spectrum(h_plus, tol);
    const RealVector sm = spectrum(h_minus, tol);
    joint << sp, sm;
    report.spectral_residual = spectral_distance(joint, spectrum(h, tol));

    const bool ok = best->off_block_residual < tol.spectral && best->block_residual < tol.spectral &&
                    report.unitarity_defect < tol.unitarity;
    if (!ok) {
        std::ostringstream msg;
        msg << "FG transform check failed; best composition " << best->name
            << " leaves off-block residual " << best->off_block_residual << " and block residual "
            << best->block_residual;
        throw VerificationFailure(msg.str());
    }
    // Report the first passing composition in the order tried.
    for (const auto& c : report.tried) {
        if (c.off_block_residual < tol.spectral && c.block_residual < tol.spectral) {
            report.selected = c.name;
            report.off_block_residual = c.off_block_residual;
            report.block_residual = c.block_residual;
            break;
        }
    }
    report.passed = report.spectral_residual < tol.spectral;
    return report;
}

std::vector<double> frame_isospectrality(const ModelParams& p, const FockSpace& space,
                                         const Tolerances& tol) {
    const Operator hjc = build_ccjc(p, space);
    const Operator hd = build_schwinger(p, space);
    std::vector<double> out;
    for (int k = 0; k <= space.max_complete_excitation(); ++k) {
        const auto idx = space.excitation_block(k);
        out.push_back(spectral_distance(spectrum(restrict_to(hjc, idx), tol),
                                        spectrum(restrict_to(hd, idx), tol)));
    }
    return out;
}

}  // namespace pfsim
