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

#include <optional>
#include <string>
#include <vector>

#include "pfsim/fock.hpp"
#include "pfsim/models.hpp"
#include "pfsim/numerics.hpp"
#include "pfsim/parafermi.hpp"

namespace pfsim {

struct TimeGrid {
    double t_start = 0.0;
    double t_end = 1.0;
    int n_points = 2;

    void validate() const;
    double step() const;
    std::vector<double> times() const;
};

struct Trajectory {
    std::vector<double> times;
    std::vector<double> n1;
    std::vector<double> n2;
    std::vector<double> I3;
    std::vector<double> sigma_z;
    std::vector<double> norm;
    std::vector<double> excitation;  // <N>, empty for evolutions that do not track it
    std::vector<ComplexVector> snapshots;

    std::size_t size() const { return times.size(); }
};

struct EvolveOptions {
    bool keep_snapshots = false;
    // Throw ContractError when the norm drifts by more than tol.unitarity.
    bool check_norm = true;
    Tolerances tolerances;
};

// Exact propagation inside the (2 lambda + 1)-dimensional subspace under H_lambda.
Trajectory evolve_subspace(const PFSubspace& s, const ComplexVector& psi0, const TimeGrid& grid,
                           const EvolveOptions& options = {});

// Spectral propagation in the full truncated space. Observables use the lab
// operators of `space`; <N> is tracked when the space carries a qubit.
Trajectory evolve_full(const Operator& h, const FockSpace& space, const ComplexVector& psi0,
                       const TimeGrid& grid, const EvolveOptions& options = {});

// State amplitudes in the pF basis built term by term from the closed-form
// double and triple binomial sums (resonant, homogeneous coupling). The kets
// |lambda, mu> of the sums are read as |lambda; -mu>, which makes t = 0 the
// lowest state |lambda; -lambda>. Throws ContractError if the assembled norm
// deviates from 1 by more than tol.closed_form_norm.
ComplexVector closed_form_psi(int lambda, double g_eff, double t, const Tolerances& tol = {});

struct GEffCalibration {
    double g_eff = 0.0;
    double coupling = 0.0;  // g1 = g2 of the reference run
    double ratio = 0.0;     // g_eff / coupling
    double residual = 0.0;  // sum of squared infidelities at the optimum
};

// Least-squares fit of the closed-form frequency scale against propagation at
// lambda = 1, resonance and g1 = g2 = coupling.
GEffCalibration calibrate_g_eff(double coupling);

// g_eff for arbitrary couplings: the homogeneous coupling with the same
// g1^2 + g2^2, scaled by the calibrated ratio.
double effective_coupling(const ModelParams& p, double calibrated_ratio);

// pi sqrt(lambda) / g_eff.
double predicted_revival_time(int lambda, double g_eff);
// Period of <sigma_z> oscillations at the mean photon number: pi / (g_eff sqrt(lambda)).
double rabi_period(int lambda, double g_eff);

enum class RevivalStatus { revival, no_collapse, no_revival };
const char* to_string(RevivalStatus status);

struct RevivalResult {
    RevivalStatus status = RevivalStatus::no_revival;
    double t_revival = 0.0;
    double amplitude = 0.0;      // windowed RMS of <sigma_z> at the revival peak
    double reference = 0.0;      // windowed RMS of the first window
    double ratio = 0.0;          // amplitude / reference
    double completeness = 0.0;   // amplitude * sqrt(2): 1 for a full-swing oscillation
    double collapse_time = 0.0;
    double collapse_floor = 0.0; // minimum RMS after collapse / reference
    bool low_confidence = false;
};

struct RevivalOptions {
    double window = 0.0;            // sliding window length in time units
    double collapse_fraction = 0.2;
    double revival_fraction = 0.4;
};

// Sliding-window RMS (standard deviation about the window mean) of a series;
// element i covers samples [i, i + samples).
std::vector<double> windowed_rms(const std::vector<double>& series, std::size_t samples);

// Locates the first revival of <sigma_z> after a collapse.
RevivalResult revival_detect(const Trajectory& traj, const RevivalOptions& options);

}  // namespace pfsim
