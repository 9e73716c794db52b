// Copyright 2026 The dqdsim Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef DQD_EVOLVE_H
#define DQD_EVOLVE_H

#include <initializer_list>
#include <string>
#include <vector>

#include "dqd/device.h"
#include "dqd/hilbert.h"

namespace dqd {

/// Step control for scheduled evolution.
struct PropagatorConfig {
    double dt = 1e-2;
    /// Re-run every evolution at dt/2 and fail if the two results differ by more than `tolerance`.
    bool richardson_check = false;
    double tolerance = 1e-9;

    /// dt = 1e-2 / max(energies): one hundredth of the fastest time scale among the given
    /// tunneling and Coulomb energies. Non-positive entries are ignored.
    static PropagatorConfig for_energies(std::initializer_list<double> energies);

    std::vector<std::string> problems() const;
};

inline constexpr double kDegeneracyTolerance = 1e-10;

struct GroundState {
    double energy = 0;
    StateVector state;
    /// E1 - E0 (0 for a one-dimensional space).
    double gap = 0;
    /// Number of eigenvalues within kDegeneracyTolerance of E0.
    std::size_t multiplicity = 1;
    bool degenerate() const {
        return multiplicity > 1;
    }
};

/// Lowest eigenpair of a Hermitian matrix, phase fixed so the largest amplitude is real positive.
/// A degenerate ground level is reported through `multiplicity`, never resolved.
/// Throws PreconditionError for non-Hermitian input.
GroundState ground_state(const Matrix &h);

/// Population of `state` in the lowest eigenspace of `h` (all eigenvectors within
/// kDegeneracyTolerance of E0).
double ground_manifold_overlap(const Matrix &h, const StateVector &state);

/// exp(-i h duration) |state>, via eigendecomposition.
StateVector evolve_static(const StateVector &state, const Matrix &h, double duration);

/// Evolution from t0 to t1 under the graph's time-dependent Hamiltonian. Each step applies the
/// exact exponential of the Hamiltonian sampled at the step midpoint (second order in dt, unitary
/// to roundoff). Jumps of sudden steps may sit at t0 or t1 but not strictly inside.
StateVector evolve_scheduled(const StateVector &state, const DeviceGraph &g, double t0, double t1,
                             const PropagatorConfig &cfg);

/// Same stepping applied to every column of `columns` at once.
Matrix evolve_scheduled_columns(const Matrix &columns, const HamiltonianModel &model, double t0, double t1,
                                const PropagatorConfig &cfg);

struct RampDiagnostics {
    std::vector<double> sample_times;
    std::vector<double> gaps;
    double initial_gap = 0;
    double final_gap = 0;
    double min_gap = 0;
    double min_gap_time = 0;
    double initial_ground_overlap = 0;
    double final_ground_overlap = 0;
    std::vector<std::string> warnings;
};

struct RampResult {
    StateVector state;
    RampDiagnostics diagnostics;
};

/// evolve_scheduled over [t0, t1] with the instantaneous spectrum sampled at `samples` + 1
/// equally spaced times (samples >= 64 is enforced). Warns when the start state is not close to
/// the instantaneous ground state. t0 == t1 returns the state unchanged.
RampResult adiabatic_ramp(const StateVector &state, const DeviceGraph &g, double t0, double t1,
                          const PropagatorConfig &cfg, std::size_t samples = 64);

}  // namespace dqd

#endif
