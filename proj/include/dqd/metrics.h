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

#ifndef DQD_METRICS_H
#define DQD_METRICS_H

#include <span>

#include "dqd/device.h"
#include "dqd/hilbert.h"

namespace dqd {

/// Wootters concurrence of a two-qubit state. Throws DimensionError otherwise.
double concurrence(const DensityMatrix &rho);

/// Base-2 von Neumann entropy.
double von_neumann_entropy(const DensityMatrix &rho);

/// Entropy of the reduced state on `partition`. Throws PreconditionError for an empty partition.
double entanglement_entropy(const StateVector &state, std::span<const QubitId> partition);

/// Half the trace norm of a - b.
double trace_distance(const DensityMatrix &a, const DensityMatrix &b);

/// E1(t) - E0(t) of the device Hamiltonian; 0 when the ground level is degenerate.
double instantaneous_gap(const DeviceGraph &g, double t);

/// Least-squares fit of p(t) = offset + amplitude * sin^2(Omega t).
///
/// `frequency` is the angular frequency of the population signal, 2 * Omega, since
/// sin^2(Omega t) = (1 - cos(2 Omega t)) / 2. A two-level system coupled with strength Omega
/// (amplitudes cos(Omega t), i sin(Omega t)) therefore has rabi_rate() == Omega.
struct RabiFit {
    double frequency = 0;
    double amplitude = 0;
    double offset = 0;
    double rms_residual = 0;
    /// False when the data carries no resolvable oscillation (flat series, or the sin^2 term
    /// explains less than half of the variance).
    bool oscillatory = false;

    double rabi_rate() const {
        return frequency / 2;
    }
};

/// Needs at least 16 samples, sorted by time, spanning at least one period of the signal.
/// Throws PreconditionError for too few samples or mismatched lengths.
RabiFit fit_oscillation(std::span<const double> times, std::span<const double> values);

}  // namespace dqd

#endif
