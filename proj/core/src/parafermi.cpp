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

#include "pfsim/parafermi.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <sstream>

#include "pfsim/errors.hpp"

namespace pfsim {

const char* to_string(Frame frame) {
    switch (frame) {
        case Frame::lab:
            return "lab";
        case Frame::fg:
            return "fg";
        case Frame::schwinger:
            return "schwinger";
        case Frame::subspace:
            return "subspace";
    }
    return "unknown";
}

double fidelity(const State& a, const State& b) {
    if (a.frame != b.frame) {
        throw ArgumentError(std::string("fidelity: frame mismatch (") + to_string(a.frame) + " vs " +
                            to_string(b.frame) + ")");
    }
    return fidelity(a.amplitudes, b.amplitudes);
}

long h(long k) {
    if (k < 0) {
        throw ArgumentError("h(k) requires k >= 0, got " + std::to_string(k));
    }
    const std::complex<double> phase = std::exp(std::complex<double>(0.0, std::numbers::pi * k));
    const double value = (2.0 * static_cast<double>(k) - 1.0 + phase.real()) / 4.0;
    const long rounded = std::lround(value);
    if (std::abs(value - static_cast<double>(rounded)) > 1e-6 || rounded != k / 2) {
        std::ostringstream msg;
        msg << "h(" << k << ") = " << value << " disagrees with floor(k/2) = " << k / 2;
        throw ContractError(msg.str());
    }
    return rounded;
}

BasisLabel fock_embedding(const PFLabel& label) {
    if (label.lambda < 0 || std::abs(label.m) > label.lambda) {
        std::ostringstream msg;
        msg << "invalid pF label (lambda=" << label.lambda << ", m=" << label.m << ")";
        throw ArgumentError(msg.str());
    }
    return {static_cast<int>(h(label.lambda + label.m)), static_cast<int>(h(label.lambda - label.m)),
            std::nullopt};
}

Qubit fg_qubit(int lambda) { return lambda % 2 == 0 ? Qubit::e : Qubit::g; }

int PFSubspace::photons(int index) const {
    const auto& l = embedding_.at(static_cast<std::size_t>(index));
    return l.n1 + l.n2;
}

ComplexVector PFSubspace::lowest() const {
    ComplexVector v = ComplexVector::Zero(dim());
    v[0] = 1.0;
    return v;
}

namespace {

FockSpace field_space_for(int lambda) {
    const int n_max = std::max(lambda, 1);
    return FockSpace({n_max, n_max, false});
}

FockSpace full_space_for(int lambda) {
    const int n_max = std::max(lambda, 1);
    return FockSpace({n_max, n_max, true});
}

double leakage(const Operator& op, const ComplexMatrix& iso) {
    const ComplexMatrix projected = iso.adjoint() * op * iso;
    return (op * iso - iso * projected).norm();
}

}  // namespace

PFSubspace build_subspace(int lambda, const DerivedParams& params) {
    if (lambda < 0) {
        throw ArgumentError("build_subspace: lambda must be >= 0");
    }
    PFSubspace s;
    s.lambda_ = lambda;
    s.params_ = params;

    const FockSpace field = field_space_for(lambda);
    const int d = 2 * lambda + 1;
    s.isometry_ = ComplexMatrix::Zero(static_cast<Eigen::Index>(field.dim()), d);
    for (int i = 0; i < d; ++i) {
        const BasisLabel label = fock_embedding({lambda, i - lambda});
        s.embedding_.push_back(label);
        s.isometry_(static_cast<Eigen::Index>(field.index(label)), i) = 1.0;
    }

    const double sign = lambda % 2 == 0 ? 1.0 : -1.0;
    const Operator id = field.identity();
    const Operator parity = field.two_mode_parity();
    const Operator a1 = field.annihilation(1);
    const Operator a2 = field.annihilation(2);
    const double inv_sqrt2 = 1.0 / std::numbers::sqrt2;

    const Operator i3 = field.number(1) - field.number(2);
    const Operator iplus =
        inv_sqrt2 * (a1.adjoint() * (id - sign * parity) + a2 * (id + sign * parity));
    const Operator iminus =
        inv_sqrt2 * (a1 * (id + sign * parity) + a2.adjoint() * (id - sign * parity));
    Operator r = Operator::Zero(i3.rows(), i3.cols());
    for (Eigen::Index k = 0; k < i3.rows(); ++k) {
        r(k, k) = std::exp(Complex(0.0, std::numbers::pi * (i3(k, k).real() + lambda)));
    }

    const ComplexMatrix& iso = s.isometry_;
    for (const Operator* op : {&i3, &iplus, &iminus, static_cast<const Operator*>(&r)}) {
        const double leak = leakage(*op, iso);
        if (leak > 1e-12) {
            std::ostringstream msg;
            msg << "build_subspace: operator leaks out of the lambda=" << lambda
                << " subspace (residual " << leak << ")";
            throw ContractError(msg.str());
        }
    }
    s.i3_ = iso.adjoint() * i3 * iso;
    s.iplus_ = iso.adjoint() * iplus * iso;
    s.iminus_ = iso.adjoint() * iminus * iso;
    // R is diagonal with entries exp(i pi integer); drop the rounding in the
    // imaginary part so R^2 = I holds exactly.
    s.r_ = (iso.adjoint() * r * iso).real().array().round().matrix().cast<Complex>();

    const Operator ident = Operator::Identity(d, d);
    s.h_ = params.eps_plus * (static_cast<double>(lambda) * ident - 0.5 * (ident - s.r_)) +
           params.eps_minus * s.i3_ + params.gamma_plus * (s.iplus_ + s.iminus_) -
           params.gamma_minus * (s.iplus_ - s.iminus_) * s.r_;
    return s;
}

Operator h_lambda_literal(const PFSubspace& s) {
    const auto& p = s.params();
    const int d = s.dim();
    const double sign = s.lambda() % 2 == 0 ? 1.0 : -1.0;
    const Operator ident = Operator::Identity(d, d);
    return p.eps_plus * (static_cast<double>(s.lambda()) * ident - 0.5 * (ident - sign * s.R())) +
           p.eps_minus * s.I3() + p.gamma_plus * (s.Iplus() + s.Iminus()) -
           p.gamma_minus * (s.Iplus() - s.Iminus()) * s.R();
}

Operator project_fg_block(const PFSubspace& s, const ModelParams& p) {
    const auto [h_plus, h_minus] = fg_blocks(p, field_space_for(s.lambda()));
    const Operator& block = s.lambda() % 2 == 0 ? h_plus : h_minus;
    return s.isometry().adjoint() * block * s.isometry();
}

bool AlgebraReport::passed() const {
    return std::all_of(identities.begin(), identities.end(),
                       [](const IdentityResidual& r) { return r.informational || r.pass; });
}

double AlgebraReport::worst() const {
    double w = 0.0;
    for (const auto& r : identities) {
        if (!r.informational) {
            w = std::max(w, r.residual);
        }
    }
    return w;
}

AlgebraReport verify_algebra(const PFSubspace& s, const Tolerances& tol) {
    AlgebraReport report;
    report.lambda = s.lambda();
    const int d = s.dim();
    const int lambda = s.lambda();
    const Operator ident = Operator::Identity(d, d);

    auto add = [&](std::string name, double residual, bool informational = false) {
        report.identities.push_back(
            {std::move(name), residual, tol.algebra, residual < tol.algebra, informational});
    };

    add("[I3,I+] - I+", (commutator(s.I3(), s.Iplus()) - s.Iplus()).norm());
    add("[I3,I-] + I-", (commutator(s.I3(), s.Iminus()) + s.Iminus()).norm());
    add("{R,I+}", anticommutator(s.R(), s.Iplus()).norm());
    add("{R,I-}", anticommutator(s.R(), s.Iminus()).norm());
    add("R^2 - I", (s.R() * s.R() - ident).norm());
    add("I- - I+^dagger", (s.Iminus() - s.Iplus().adjoint()).norm());

    Operator i3_diag = Operator::Zero(d, d);
    for (int i = 0; i < d; ++i) {
        i3_diag(i, i) = static_cast<double>(i - lambda);
    }
    add("I3 - diag(m)", (s.I3() - i3_diag).norm());

    // [I+, I-] = 2 I3 (-1)^(I3 + p) for both identifications of p.
    auto sign_operator = [&](int p) {
        Operator out = Operator::Zero(d, d);
        for (int i = 0; i < d; ++i) {
            out(i, i) = ((i - lambda + p) % 2 == 0) ? 1.0 : -1.0;
        }
        return out;
    };
    const Operator comm = commutator(s.Iplus(), s.Iminus());
    add("[I+,I-] - 2 I3 (-1)^(I3+p), p=lambda",
        (comm - 2.0 * s.I3() * sign_operator(lambda)).norm());
    add("[I+,I-] - 2 I3 (-1)^(I3+p), p=2 lambda",
        (comm - 2.0 * s.I3() * sign_operator(2 * lambda)).norm(), true);
    add("R - (-1)^(I3+lambda)", (s.R() - sign_operator(lambda)).norm());

    const ComplexVector low = s.lowest();
    add("I- I+ |lambda;-lambda> - 2 lambda |lambda;-lambda>",
        (s.Iminus() * s.Iplus() * low - 2.0 * lambda * low).norm());

    add("H_lambda - H^dagger_lambda", (s.H() - s.H().adjoint()).norm());
    return report;
}

Operator sigma_z_from_pf(const PFSubspace& s, const Tolerances& tol) {
    const int d = s.dim();
    const Operator sz = anticommutator(s.Iplus(), s.Iminus()) -
                        static_cast<double>(d) * Operator::Identity(d, d);
    const RealVector ev = spectrum(sz, tol);
    for (Eigen::Index i = 0; i < ev.size(); ++i) {
        const double dist = std::min(std::abs(ev[i] - 1.0), std::abs(ev[i] + 1.0));
        if (dist > tol.sigma_z_spectrum) {
            std::ostringstream msg;
            msg << "sigma_z_from_pf: eigenvalue " << ev[i] << " lies outside {-1, +1} (lambda="
                << s.lambda() << ")";
            throw VerificationFailure(msg.str());
        }
    }
    return sz;
}

Operator sigma_z_projected(const PFSubspace& s) {
    const FockSpace space = full_space_for(s.lambda());
    const int d = s.dim();
    ComplexMatrix lab_vectors(static_cast<Eigen::Index>(space.dim()), d);
    for (int i = 0; i < d; ++i) {
        ComplexVector e = ComplexVector::Zero(d);
        e[i] = 1.0;
        lab_vectors.col(i) = fg_to_lab(embed_fg(s, e)).amplitudes;
    }
    return lab_vectors.adjoint() * space.qubit_pauli(3) * lab_vectors;
}

ComplexVector binomial_field(int lambda, double eta) {
    if (lambda < 0) {
        throw ArgumentError("binomial_field: lambda must be >= 0");
    }
    if (!(eta >= 0.0 && eta <= 1.0)) {
        throw ArgumentError("binomial_field: eta must lie in [0, 1]");
    }
    const FockSpace field = field_space_for(lambda);
    ComplexVector v = ComplexVector::Zero(static_cast<Eigen::Index>(field.dim()));
    for (int k = 0; k <= lambda; ++k) {
        // log-space binomial weight avoids overflow for large lambda
        const double log_c = std::lgamma(lambda + 1.0) - std::lgamma(k + 1.0) -
                             std::lgamma(lambda - k + 1.0);
        double weight = 0.0;
        const bool zero_q = (lambda - k > 0 && eta == 1.0);
        const bool zero_p = (k > 0 && eta == 0.0);
        if (!zero_q && !zero_p) {
            const double log_w = log_c + (lambda - k > 0 ? (lambda - k) * std::log1p(-eta) : 0.0) +
                                 (k > 0 ? k * std::log(eta) : 0.0);
            weight = std::exp(0.5 * log_w);
        }
        v[static_cast<Eigen::Index>(field.index({lambda - k, k, std::nullopt}))] = weight;
    }
    return v;
}

State binomial_state(int lambda, double eta) {
    const ComplexVector field = binomial_field(lambda, eta);
    ComplexVector ground = ComplexVector::Zero(2);
    ground[static_cast<Eigen::Index>(Qubit::g)] = 1.0;
    return {kron(field, ground), Frame::schwinger};
}

State embed_fg(const PFSubspace& s, const ComplexVector& psi) {
    if (psi.size() != s.dim()) {
        throw ShapeError("embed_fg: vector dimension does not match the subspace");
    }
    const FockSpace space = full_space_for(s.lambda());
    ComplexVector out = ComplexVector::Zero(static_cast<Eigen::Index>(space.dim()));
    const Qubit q = fg_qubit(s.lambda());
    for (int i = 0; i < s.dim(); ++i) {
        BasisLabel label = s.embedding()[static_cast<std::size_t>(i)];
        label.q = q;
        out[static_cast<Eigen::Index>(space.index(label))] = psi[i];
    }
    return {out, Frame::fg};
}

State fg_to_lab(const State& fg) {
    if (fg.frame != Frame::fg) {
        throw ArgumentError("fg_to_lab: state is not in the FG frame");
    }
    const auto dim = static_cast<std::size_t>(fg.amplitudes.size());
    // Recover n_max from dim = (n+1)^2 * 2.
    const int n_max = static_cast<int>(std::lround(std::sqrt(static_cast<double>(dim / 2)))) - 1;
    const FockSpace space({n_max, n_max, true});
    if (space.dim() != dim) {
        throw ShapeError("fg_to_lab: state dimension is not a symmetric two-mode space");
    }
    return {fg_unitary(space) * fg.amplitudes, Frame::lab};
}

State lab_to_schwinger_balanced(const State& lab, int lambda) {
    if (lab.frame != Frame::lab) {
        throw ArgumentError("lab_to_schwinger_balanced: state is not in the lab frame");
    }
    const FockSpace space = full_space_for(lambda);
    return {beam_splitter(space, std::numbers::pi / 4.0) * lab.amplitudes, Frame::schwinger};
}

State frame_rotated_lowest(int lambda) {
    const PFSubspace s = build_subspace(lambda, DerivedParams{});
    return lab_to_schwinger_balanced(fg_to_lab(embed_fg(s, s.lowest())), lambda);
}

}  // namespace pfsim
