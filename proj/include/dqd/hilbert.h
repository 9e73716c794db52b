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

#ifndef DQD_HILBERT_H
#define DQD_HILBERT_H

#include <Eigen/Dense>
#include <complex>
#include <cstdint>
#include <optional>
#include <random>
#include <span>
#include <variant>
#include <vector>

#include "dqd/errors.h"

/// Logical Hilbert space of N charge qubits.
///
/// Each double quantum dot (DQD) holds exactly one excess electron, so it is a two-level system.
/// DQD k consists of dots 2k+1 (odd, "upper") and 2k+2 (even). Logical |1> of DQD k means the
/// electron sits on the odd dot; logical |0> means it sits on the even dot.
///
/// Basis indices are little-endian: qubit 0 is the least significant bit. The amplitude of
/// |b_{N-1} ... b_1 b_0> lives at index sum_k b_k 2^k.
namespace dqd {

using Complex = std::complex<double>;
using Amplitudes = Eigen::VectorXcd;
using Matrix = Eigen::MatrixXcd;

inline constexpr double kNormTolerance = 1e-9;
inline constexpr double kCollapseThreshold = 1e-14;

/// Index of a DQD (equivalently, of a logical qubit) inside a device.
struct QubitId {
    std::size_t index = 0;
    constexpr QubitId() = default;
    constexpr explicit QubitId(std::size_t i) : index(i) {
    }
    friend constexpr bool operator==(QubitId, QubitId) = default;
    friend constexpr auto operator<=>(QubitId, QubitId) = default;
};

/// Packs `bits` (bits[k] is qubit k) into a basis index. Throws DimensionError when
/// bits.size() != num_qubits and PreconditionError when an entry is not 0 or 1.
std::size_t basis_index(std::span<const int> bits, std::size_t num_qubits);

/// Inverse of basis_index.
std::vector<int> basis_bits(std::size_t index, std::size_t num_qubits);

/// Number of qubits n with 2^n == dim. Throws DimensionError if dim is not a power of two.
std::size_t qubit_count_for_dim(std::size_t dim);

/// A normalized pure state.
class StateVector {
   public:
    /// Takes ownership of `amplitudes`, which must have power-of-two length and unit norm
    /// (within kNormTolerance).
    explicit StateVector(Amplitudes amplitudes);
    /// The one-qubit state |0>.
    StateVector();

    static StateVector basis(std::size_t num_qubits, std::size_t index);
    /// Rescales a nonzero vector to unit norm.
    static StateVector normalized(Amplitudes amplitudes);

    std::size_t num_qubits() const {
        return num_qubits_;
    }
    std::size_t dim() const {
        return static_cast<std::size_t>(amplitudes_.size());
    }
    const Amplitudes &amplitudes() const {
        return amplitudes_;
    }
    Complex operator[](std::size_t i) const {
        return amplitudes_[static_cast<Eigen::Index>(i)];
    }
    double norm() const {
        return amplitudes_.norm();
    }

    /// Same ray, with the largest-magnitude amplitude made real and positive. Ties go to the
    /// lowest index (magnitudes within 1e-12 count as tied).
    StateVector with_fixed_phase() const;

   private:
    Amplitudes amplitudes_;
    std::size_t num_qubits_;
};

/// |high> (x) |low>: `low` occupies qubits [0, low.num_qubits()), `high` the ones above.
StateVector tensor(const StateVector &low, const StateVector &high);

/// Hermitian, positive semidefinite, unit trace.
class DensityMatrix {
   public:
    /// Validates Hermiticity (1e-12), trace (kNormTolerance) and spectrum (>= -1e-12).
    explicit DensityMatrix(Matrix rho);
    static DensityMatrix pure(const StateVector &state);

    const Matrix &matrix() const {
        return rho_;
    }
    std::size_t num_qubits() const {
        return num_qubits_;
    }
    std::size_t dim() const {
        return static_cast<std::size_t>(rho_.rows());
    }
    Complex trace() const {
        return rho_.trace();
    }
    double purity() const;
    /// Ascending.
    Eigen::VectorXd eigenvalues() const;
    /// Eigenvector of the largest eigenvalue, phase fixed as in StateVector::with_fixed_phase.
    StateVector dominant_state() const;

   private:
    Matrix rho_;
    std::size_t num_qubits_;
};

/// (I (x) ... (x) op (x) ... (x) I) amps. Local bit b of `op` acts on targets[b], so targets[0] is
/// the least significant local qubit. Works on unnormalized vectors; norm is preserved iff `op`
/// is unitary. Throws DimensionError on size mismatch and PreconditionError on repeated targets.
Amplitudes apply_local(const Amplitudes &amps, const Matrix &op, std::span<const QubitId> targets);

/// Normalized overload; `op` must be unitary (to 1e-10), otherwise PreconditionError.
StateVector apply_local(const StateVector &state, const Matrix &op, std::span<const QubitId> targets);

/// Reduced state on `keep` (keep[0] is the least significant local qubit).
DensityMatrix partial_trace(const StateVector &state, std::span<const QubitId> keep);

struct DeterministicBranch {};
struct Sampled {
    std::uint64_t seed = 0;
};
using MeasureMode = std::variant<DeterministicBranch, Sampled>;

/// Outcome of a projective charge measurement on one DQD.
struct MeasurementResult {
    double p0 = 0;
    double p1 = 0;
    /// Renormalized post-measurement states. Empty when the branch probability is below
    /// kCollapseThreshold.
    std::optional<StateVector> collapsed0;
    std::optional<StateVector> collapsed1;
    /// Set only in sampled mode.
    std::optional<int> outcome;

    double probability(int bit) const {
        return bit == 0 ? p0 : p1;
    }
    /// Throws DegenerateBranchError for an empty branch.
    const StateVector &collapsed(int bit) const;
};

MeasurementResult measure_qubit(const StateVector &state, QubitId qubit, MeasureMode mode = DeterministicBranch{});

/// Draws 0 with probability p0 from `rng` (one uniform variate per draw).
int draw_outcome(double p0, std::mt19937_64 &rng);

/// `shots` independent draws of qubit `qubit` from a generator seeded with `seed`.
std::vector<int> sample_qubit(const StateVector &state, QubitId qubit, std::size_t shots, std::uint64_t seed);

/// |<a|b>|^2.
double fidelity(const StateVector &a, const StateVector &b);
/// <b|rho|b>.
double fidelity(const DensityMatrix &rho, const StateVector &b);

namespace ops {
Matrix identity2();
Matrix pauli_x();
Matrix pauli_y();
Matrix pauli_z();
/// |0><0| and |1><1|.
Matrix proj0();
Matrix proj1();
/// diag(1, e^{i theta}).
Matrix phase(double theta);
/// a (x) b with `a` on the least significant local qubit.
Matrix kron_local(const Matrix &low, const Matrix &high);
}  // namespace ops

}  // namespace dqd

#endif
