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

#include "pfsim/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "pfsim/errors.hpp"

namespace pfsim {

void TimeGrid::validate() const {
    if (!std::isfinite(t_start) || !std::isfinite(t_end) || !(t_end > t_start)) {
        std::ostringstream msg;
        msg << "TimeGrid: require finite t_end > t_start, got [" << t_start << ", " << t_end << "]";
        throw ArgumentError(msg.str());
    }
    if (n_points < 2) {
        throw ArgumentError("TimeGrid: n_points must be >= 2, got " + std::to_string(n_points));
    }
}

double TimeGrid::step() const { return (t_end - t_start) / static_cast<double>(n_points - 1); }

std::vector<double> TimeGrid::times() const {
    validate();
    std::vector<double> out(static_cast<std::size_t>(n_points));
    const double dt = step();
    for (int i = 0; i < n_points; ++i) {
        out[static_cast<std::size_t>(i)] = t_start + dt * i;
    }
    out.back() = t_end;
    return out;
}

namespace {

void require_normalized(const ComplexVector& psi0, const Tolerances& tol) {
    if (std::abs(psi0.norm() - 1.0) > tol.unitarity) {
        std::ostringstream msg;
        msg << "initial state is not normalized (|psi0| = " << psi0.norm() << ")";
        throw ContractError(msg.str());
    }
}

void check_norm(double norm, double t, const Tolerances& tol) {
    if (std::abs(norm - 1.0) > tol.unitarity) {
        std::ostringstream msg;
        msg << "norm drift " << std::abs(norm - 1.0) << " at t = " << t << " exceeds "
            << tol.unitarity;
        throw ContractError(msg.str());
    }
}

double weighted(const ComplexVector& psi, const RealVector& diag) {
    return (psi.cwiseAbs2().array() * diag.array()).sum();
}

// Connected components of the sparsity graph of h. A Hermitian matrix is
// block diagonal over these index sets, so each block diagonalizes alone.
std::vector<std::vector<Eigen::Index>> coupled_blocks(const Operator& h) {
    const Eigen::Index n = h.rows();
    std::vector<Eigen::Index> parent(static_cast<std::size_t>(n));
    for (Eigen::Index i = 0; i < n; ++i) {
        parent[static_cast<std::size_t>(i)] = i;
    }
    auto find = [&](Eigen::Index i) {
        while (parent[static_cast<std::size_t>(i)] != i) {
            auto& p = parent[static_cast<std::size_t>(i)];
            p = parent[static_cast<std::size_t>(p)];
            i = p;
        }
        return i;
    };
    for (Eigen::Index j = 0; j < n; ++j) {
        for (Eigen::Index i = 0; i < j; ++i) {
            if (h(i, j) != Complex(0.0, 0.0) || h(j, i) != Complex(0.0, 0.0)) {
                parent[static_cast<std::size_t>(find(i))] = find(j);
            }
        }
    }
    std::vector<std::vector<Eigen::Index>> blocks;
    std::vector<Eigen::Index> slot(static_cast<std::size_t>(n), -1);
    for (Eigen::Index i = 0; i < n; ++i) {
        const Eigen::Index root = find(i);
        auto& s = slot[static_cast<std::size_t>(root)];
        if (s < 0) {
            s = static_cast<Eigen::Index>(blocks.size());
            blocks.emplace_back();
        }
        blocks[static_cast<std::size_t>(s)].push_back(i);
    }
    return blocks;
}

// Spectral propagation restricted to the eigencomponents the initial state
// actually populates. Only the blocks of h that psi0 touches are diagonalized.
class SpectralPropagator {
   public:
    SpectralPropagator(const Operator& h, const ComplexVector& psi0, const Tolerances& tol) {
        const double defect = hermiticity_defect(h);
        if (defect > tol.hermiticity) {
            std::ostringstream msg;
            msg << "Hamiltonian is not Hermitian (relative defect " << defect << ")";
            throw ContractError(msg.str());
        }
        std::vector<ComplexVector> cols;
        std::vector<double> energies;
        std::vector<Complex> coeffs;
        for (const auto& block : coupled_blocks(h)) {
            const auto m = static_cast<Eigen::Index>(block.size());
            ComplexVector local(m);
            for (Eigen::Index a = 0; a < m; ++a) {
                local[a] = psi0[block[static_cast<std::size_t>(a)]];
            }
            if (local.norm() == 0.0) {
                continue;
            }
            ComplexMatrix sub(m, m);
            for (Eigen::Index a = 0; a < m; ++a) {
                for (Eigen::Index b = 0; b < m; ++b) {
                    sub(a, b) = h(block[static_cast<std::size_t>(a)], block[static_cast<std::size_t>(b)]);
                }
            }
            const EigenDecomposition eig = eigh(sub, tol);
            const ComplexVector c = eig.eigenvectors.adjoint() * local;
            for (Eigen::Index k = 0; k < m; ++k) {
                if (std::abs(c[k]) <= 1e-15) {
                    continue;
                }
                ComplexVector col = ComplexVector::Zero(h.rows());
                for (Eigen::Index a = 0; a < m; ++a) {
                    col[block[static_cast<std::size_t>(a)]] = eig.eigenvectors(a, k);
                }
                cols.push_back(std::move(col));
                energies.push_back(eig.eigenvalues[k]);
                coeffs.push_back(c[k]);
            }
        }
        const auto n = static_cast<Eigen::Index>(cols.size());
        vectors_.resize(h.rows(), n);
        energies_.resize(n);
        coeffs_.resize(n);
        for (Eigen::Index j = 0; j < n; ++j) {
            vectors_.col(j) = cols[static_cast<std::size_t>(j)];
            energies_[j] = energies[static_cast<std::size_t>(j)];
            coeffs_[j] = coeffs[static_cast<std::size_t>(j)];
        }
    }

    ComplexVector at(double t) const {
        ComplexVector phased(coeffs_.size());
        for (Eigen::Index j = 0; j < coeffs_.size(); ++j) {
            phased[j] = coeffs_[j] * std::polar(1.0, -energies_[j] * t);
        }
        return vectors_ * phased;
    }

   private:
    ComplexMatrix vectors_;
    RealVector energies_;
    ComplexVector coeffs_;
};

RealVector diagonal_of(const Operator& op) { return op.diagonal().real(); }

}  // namespace

Trajectory evolve_subspace(const PFSubspace& s, const ComplexVector& psi0, const TimeGrid& grid,
                           const EvolveOptions& options) {
    if (psi0.size() != s.dim()) {
        std::ostringstream msg;
        msg << "evolve_subspace: initial state has dimension " << psi0.size() << ", subspace has "
            << s.dim();
        throw ShapeError(msg.str());
    }
    const auto& tol = options.tolerances;
    require_normalized(psi0, tol);

    const int d = s.dim();
    const RealVector i3 = diagonal_of(s.I3());
    const RealVector sz = diagonal_of(sigma_z_from_pf(s, tol));
    RealVector n1(d), n2(d);
    for (int i = 0; i < d; ++i) {
        n1[i] = 0.5 * (s.photons(i) + i3[i]);
        n2[i] = 0.5 * (s.photons(i) - i3[i]);
    }

    const SpectralPropagator prop(s.H(), psi0, tol);
    Trajectory traj;
    traj.times = grid.times();
    for (const double t : traj.times) {
        const ComplexVector psi = prop.at(t);
        const double norm = psi.norm();
        if (options.check_norm) {
            check_norm(norm, t, tol);
        }
        traj.norm.push_back(norm);
        traj.n1.push_back(weighted(psi, n1));
        traj.n2.push_back(weighted(psi, n2));
        traj.I3.push_back(weighted(psi, i3));
        traj.sigma_z.push_back(weighted(psi, sz));
        traj.excitation.push_back(static_cast<double>(s.lambda()) * norm * norm);
        if (options.keep_snapshots) {
            traj.snapshots.push_back(psi);
        }
    }
    return traj;
}

Trajectory evolve_full(const Operator& h, const FockSpace& space, const ComplexVector& psi0,
                       const TimeGrid& grid, const EvolveOptions& options) {
    if (h.rows() != static_cast<Eigen::Index>(space.dim()) || h.cols() != h.rows()) {
        throw ShapeError("evolve_full: Hamiltonian does not match the space dimension");
    }
    if (psi0.size() != h.rows()) {
        throw ShapeError("evolve_full: initial state does not match the space dimension");
    }
    const auto& tol = options.tolerances;
    require_normalized(psi0, tol);

    const RealVector n1 = diagonal_of(space.number(1));
    const RealVector n2 = diagonal_of(space.number(2));
    const RealVector i3 = n1 - n2;
    const bool has_qubit = space.has_qubit();
    const RealVector sz = has_qubit ? diagonal_of(space.qubit_pauli(3)) : RealVector();
    const RealVector nt = has_qubit ? diagonal_of(space.total_excitation()) : RealVector();

    const SpectralPropagator prop(h, psi0, tol);
    Trajectory traj;
    traj.times = grid.times();
    for (const double t : traj.times) {
        const ComplexVector psi = prop.at(t);
        const double norm = psi.norm();
        if (options.check_norm) {
            check_norm(norm, t, tol);
        }
        traj.norm.push_back(norm);
        traj.n1.push_back(weighted(psi, n1));
        traj.n2.push_back(weighted(psi, n2));
        traj.I3.push_back(weighted(psi, i3));
        if (has_qubit) {
            traj.sigma_z.push_back(weighted(psi, sz));
            traj.excitation.push_back(weighted(psi, nt));
        }
        if (options.keep_snapshots) {
            traj.snapshots.push_back(psi);
        }
    }
    return traj;
}

namespace {

double binom(int n, int k) {
    if (k < 0 || n < 0 || k > n) {
        return 0.0;
    }
    k = std::min(k, n - k);
    double out = 1.0;
    for (int i = 1; i <= k; ++i) {
        out = out * static_cast<double>(n - k + i) / static_cast<double>(i);
    }
    return out;
}

}  // namespace

ComplexVector closed_form_psi(int lambda, double g_eff, double t, const Tolerances& tol) {
    if (lambda < 1) {
        throw ArgumentError("closed_form_psi: lambda must be >= 1");
    }
    const int d = 2 * lambda + 1;
    ComplexVector psi = ComplexVector::Zero(d);
    // ket |lambda, mu> -> |lambda; -mu> -> index lambda - mu
    auto slot = [lambda](int mu) { return static_cast<Eigen::Index>(lambda - mu); };
    const double norm_2 = std::pow(2.0, -lambda);
    const Complex minus_i(0.0, -1.0);

    for (int k = 0; k <= lambda; ++k) {
        const double freq = g_eff * t * std::sqrt(2.0 * (lambda - k));
        const double sin_t = std::sin(freq);
        const double cos_t = std::cos(freq);

        for (int p = 0; p <= lambda - k - 1; ++p) {
            for (int q = 0; q <= k; ++q) {
                const double sign = q % 2 == 0 ? 1.0 : -1.0;
                const double root = std::sqrt(binom(lambda, k) * binom(lambda - 1, k) /
                                              binom(lambda - 1, p + q));
                const double c = sign * norm_2 * binom(lambda - k - 1, p) * binom(k, q) * root;
                psi[slot(lambda - 1 - 2 * (p + q))] += minus_i * c * std::numbers::sqrt2 * sin_t;
            }
        }
        for (int r = 0; r <= lambda - k; ++r) {
            for (int s = 0; s <= k; ++s) {
                const double sign = s % 2 == 0 ? 1.0 : -1.0;
                const double c = sign * norm_2 * binom(lambda, k) * binom(lambda - k, r) *
                                 binom(k, s) / std::sqrt(binom(lambda, r + s));
                psi[slot(lambda - 2 * (r + s))] += c * cos_t;
            }
        }
    }

    const double norm = psi.norm();
    if (std::abs(norm - 1.0) > tol.closed_form_norm) {
        std::ostringstream msg;
        msg << "closed_form_psi: norm " << norm << " at lambda=" << lambda << ", t=" << t
            << " signals a transcription error";
        throw ContractError(msg.str());
    }
    return psi;
}

GEffCalibration calibrate_g_eff(double coupling) {
    if (!(coupling > 0.0)) {
        throw InvalidParameters("calibrate_g_eff: coupling must be positive");
    }
    ModelParams p;
    p.g1 = coupling;
    p.g2 = coupling;
    const DerivedParams d = derive(p);
    const PFSubspace s = build_subspace(1, d);
    const EigenDecomposition eig = eigh(s.H());

    const double period = 2.0 * std::numbers::pi / d.g;
    std::vector<double> times;
    std::vector<ComplexVector> reference;
    for (int k = 1; k <= 32; ++k) {
        const double t = period * k / 16.0;
        times.push_back(t);
        reference.push_back(propagator(eig, t) * s.lowest());
    }
    // Loose norm tolerance: off-optimum trial values are still valid states.
    Tolerances loose;
    loose.closed_form_norm = 1.0;
    auto objective = [&](double g_trial) {
        double acc = 0.0;
        for (std::size_t i = 0; i < times.size(); ++i) {
            const double f = fidelity(closed_form_psi(1, g_trial, times[i], loose), reference[i]);
            acc += (1.0 - f) * (1.0 - f);
        }
        return acc;
    };

    // coarse scan over [0.05 g, 3 g], then golden-section refinement
    const int steps = 3000;
    const double lo = 0.05 * d.g;
    const double hi = 3.0 * d.g;
    const double dx = (hi - lo) / steps;
    double best_x = lo;
    double best_f = objective(lo);
    for (int i = 1; i <= steps; ++i) {
        const double x = lo + dx * i;
        const double f = objective(x);
        if (f < best_f) {
            best_f = f;
            best_x = x;
        }
    }
    double a = best_x - dx;
    double b = best_x + dx;
    const double phi = 0.5 * (std::sqrt(5.0) - 1.0);
    double c = b - phi * (b - a);
    double e = a + phi * (b - a);
    double fc = objective(c);
    double fe = objective(e);
    for (int it = 0; it < 200 && (b - a) > 1e-15 * d.g; ++it) {
        if (fc < fe) {
            b = e;
            e = c;
            fe = fc;
            c = b - phi * (b - a);
            fc = objective(c);
        } else {
            a = c;
            c = e;
            fc = fe;
            e = a + phi * (b - a);
            fe = objective(e);
        }
    }
    GEffCalibration out;
    out.g_eff = 0.5 * (a + b);
    out.coupling = coupling;
    out.ratio = out.g_eff / coupling;
    out.residual = objective(out.g_eff);
    return out;
}

double effective_coupling(const ModelParams& p, double calibrated_ratio) {
    return calibrated_ratio * std::sqrt(0.5 * (p.g1 * p.g1 + p.g2 * p.g2));
}

double predicted_revival_time(int lambda, double g_eff) {
    return std::numbers::pi * std::sqrt(static_cast<double>(lambda)) / g_eff;
}

double rabi_period(int lambda, double g_eff) {
    return std::numbers::pi / (g_eff * std::sqrt(static_cast<double>(std::max(lambda, 1))));
}

const char* to_string(RevivalStatus status) {
    switch (status) {
        case RevivalStatus::revival:
            return "revival";
        case RevivalStatus::no_collapse:
            return "no_collapse";
        case RevivalStatus::no_revival:
            return "no_revival";
    }
    return "unknown";
}

std::vector<double> windowed_rms(const std::vector<double>& series, std::size_t samples) {
    std::vector<double> out;
    if (samples < 2 || series.size() < samples) {
        return out;
    }
    // Two passes per window: O(n * samples), but free of the cancellation
    // that running sums of x and x^2 suffer on nearly constant input.
    const double n = static_cast<double>(samples);
    for (std::size_t i = 0; i + samples <= series.size(); ++i) {
        double mean = 0.0;
        for (std::size_t k = i; k < i + samples; ++k) {
            mean += series[k];
        }
        mean /= n;
        double var = 0.0;
        for (std::size_t k = i; k < i + samples; ++k) {
            var += (series[k] - mean) * (series[k] - mean);
        }
        out.push_back(std::sqrt(var / n));
    }
    return out;
}

RevivalResult revival_detect(const Trajectory& traj, const RevivalOptions& options) {
    RevivalResult out;
    if (traj.size() < 2 || traj.sigma_z.size() != traj.size()) {
        throw ArgumentError("revival_detect: trajectory lacks a <sigma_z> series");
    }
    if (!(options.window > 0.0)) {
        throw ArgumentError("revival_detect: window must be positive");
    }
    const double dt = traj.times[1] - traj.times[0];
    const auto samples = static_cast<std::size_t>(std::max(2.0, std::round(options.window / dt)));
    if (traj.size() < 2 * samples) {
        out.low_confidence = true;
        return out;
    }
    const std::vector<double> rms = windowed_rms(traj.sigma_z, samples);
    const double half = 0.5 * static_cast<double>(samples - 1) * dt;
    auto center = [&](std::size_t i) { return traj.times[i] + half; };

    out.reference = rms.front();
    if (out.reference < 1e-12) {
        return out;
    }
    const double collapse_level = options.collapse_fraction * out.reference;
    const double revival_level = options.revival_fraction * out.reference;

    const auto collapse = std::find_if(rms.begin(), rms.end(),
                                       [&](double v) { return v < collapse_level; });
    if (collapse == rms.end()) {
        out.status = RevivalStatus::no_collapse;
        const auto peak = std::max_element(rms.begin() + 1, rms.end());
        out.amplitude = *peak;
        out.t_revival = center(static_cast<std::size_t>(peak - rms.begin()));
        out.ratio = out.amplitude / out.reference;
        out.completeness = out.amplitude * std::numbers::sqrt2;
        return out;
    }
    const auto ic = static_cast<std::size_t>(collapse - rms.begin());
    out.collapse_time = center(ic);

    const auto rise = std::find_if(collapse, rms.end(), [&](double v) { return v >= revival_level; });
    out.collapse_floor = *std::min_element(collapse, rise) / out.reference;
    if (rise == rms.end()) {
        out.status = RevivalStatus::no_revival;
        return out;
    }
    const auto fall = std::find_if(rise, rms.end(), [&](double v) { return v < revival_level; });
    const auto peak = std::max_element(rise, fall);
    const auto ip = static_cast<std::size_t>(peak - rms.begin());

    out.status = RevivalStatus::revival;
    out.t_revival = center(ip);
    out.amplitude = *peak;
    out.ratio = out.amplitude / out.reference;
    out.completeness = out.amplitude * std::numbers::sqrt2;
    // The hump must be resolved: separated from the collapse by at least one
    // window and closed before the trajectory ends.
    out.low_confidence = fall == rms.end() || (ip - ic) < samples;
    return out;
}

}  // namespace pfsim
