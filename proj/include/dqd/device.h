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

#ifndef DQD_DEVICE_H
#define DQD_DEVICE_H

#include <array>
#include <string>
#include <vector>

#include "dqd/hilbert.h"
#include "dqd/schedule.h"

namespace dqd {

/// 1-based dot label. DQD k owns dots 2k+1 (odd) and 2k+2 (even).
struct DotId {
    int label = 1;
    constexpr DotId() = default;
    constexpr explicit DotId(int l) : label(l) {
    }
    friend constexpr bool operator==(DotId, DotId) = default;
};

constexpr QubitId dqd_of(DotId dot) {
    return QubitId(static_cast<std::size_t>((dot.label - 1) / 2));
}
/// Logical level whose projector equals this dot's occupation number: 1 for odd dots, 0 for even.
constexpr int occupied_level(DotId dot) {
    return dot.label % 2 == 1 ? 1 : 0;
}
constexpr DotId odd_dot(QubitId q) {
    return DotId(static_cast<int>(2 * q.index + 1));
}
constexpr DotId even_dot(QubitId q) {
    return DotId(static_cast<int>(2 * q.index + 2));
}

/// -w(t) (e^{-i phase} a_odd^+ a_even + h.c.) + epsilon (n_odd + n_even) on one DQD.
/// In the logical basis this is -w(t) (e^{-i phase} |1><0| + e^{i phase} |0><1|) + epsilon.
struct TunnelTerm {
    QubitId dqd;
    Schedule amplitude;
    double phase = 0;
    double epsilon = 0;

    friend bool operator==(const TunnelTerm &, const TunnelTerm &) = default;
};

/// U(t) n_i n_j between dots of two different DQDs.
struct CoulombLink {
    DotId dot_i;
    DotId dot_j;
    Schedule strength;

    friend bool operator==(const CoulombLink &, const CoulombLink &) = default;
};

struct DeviceGraph {
    std::size_t num_dqds = 0;
    std::vector<TunnelTerm> tunnel_terms;
    std::vector<CoulombLink> coulomb_links;

    DeviceGraph &add_tunneling(QubitId dqd, Schedule amplitude, double phase = 0, double epsilon = 0);
    DeviceGraph &add_coulomb(DotId a, DotId b, Schedule strength);
    /// Links (odd_a, even_b) and (even_a, odd_b) with a shared schedule: the pair
    /// n_odd(a) n_even(b) + n_even(a) n_odd(b) that penalizes disagreeing logical values.
    DeviceGraph &add_disagreement_links(QubitId a, QubitId b, const Schedule &strength);

    friend bool operator==(const DeviceGraph &, const DeviceGraph &) = default;
};

/// Every problem found; empty means valid.
std::vector<std::string> validate(const DeviceGraph &g);
/// Throws DeviceError listing every problem.
void validate_or_throw(const DeviceGraph &g);

/// A Coulomb link mapped to the logical space. The dot occupation n of an odd dot is the projector
/// onto logical |1> of its DQD; of an even dot, onto logical |0>.
struct CompiledCoulomb {
    /// qubits[0] is the least significant local qubit of operator_at().
    std::array<QubitId, 2> qubits;
    std::array<int, 2> levels;
    Schedule strength;

    /// U(t) * P_{levels[0]} (x) P_{levels[1]}, a 4x4 diagonal matrix.
    Matrix operator_at(double t) const;
    /// 1 if `basis_index` occupies both linked dots, else 0.
    double occupancy(std::size_t basis_index) const;
};

/// Throws DeviceError when both dots belong to the same DQD.
CompiledCoulomb compile_coulomb(const CoulombLink &link);

/// Device graph compiled for repeated evaluation: a real diagonal (Coulomb + epsilon) plus one
/// complex tunneling coefficient per DQD.
class HamiltonianModel {
   public:
    /// Validates the graph; throws DeviceError.
    explicit HamiltonianModel(DeviceGraph g);

    /// The Hamiltonian at one instant.
    struct Snapshot {
        Eigen::VectorXd diagonal;
        /// Coefficient of |1><0| on each qubit, -w e^{-i phase}; its conjugate multiplies |0><1|.
        std::vector<Complex> hop;

        /// Gershgorin bound on the spectral radius.
        double norm_bound() const;
    };

    std::size_t num_qubits() const {
        return graph_.num_dqds;
    }
    std::size_t dim() const {
        return std::size_t{1} << graph_.num_dqds;
    }
    const DeviceGraph &graph() const {
        return graph_;
    }

    Snapshot at(double t) const;
    /// Same as at(t), reusing the buffers of `s`.
    void at(double t, Snapshot &s) const;
    Matrix dense(double t) const;
    static Matrix dense(const Snapshot &s);

    /// out = H(s) * in, column by column.
    static void apply(const Snapshot &s, const Matrix &in, Matrix &out);

    /// Sorted, deduplicated jump times of all schedules.
    std::vector<double> discontinuities() const;

    /// Upper bound on ||dH/dt|| away from jumps.
    double slope_bound() const;

   private:
    DeviceGraph graph_;
    std::vector<CompiledCoulomb> links_;
    /// occupancy_[l][i] = 1 if basis state i occupies both dots of link l.
    std::vector<Eigen::VectorXd> occupancy_;
};

/// Dense 2^N x 2^N Hamiltonian of `g` at time t.
Matrix hamiltonian_at(const DeviceGraph &g, double t);

}  // namespace dqd

#endif
