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

#include "dqd/hilbert.h"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <string>

namespace dqd {

std::size_t basis_index(std::span<const int> bits, std::size_t num_qubits) {
    if (bits.size() != num_qubits) {
        throw DimensionError(
            "basis_index: expected " + std::to_string(num_qubits) + " bits, got " + std::to_string(bits.size()));
    }
    std::size_t index = 0;
    for (std::size_t k = 0; k < bits.size(); k++) {
        if (bits[k] != 0 && bits[k] != 1) {
            throw PreconditionError("basis_index: bit " + std::to_string(k) + " is not 0 or 1");
        }
        index |= static_cast<std::size_t>(bits[k]) << k;
    }
    return index;
}

std::vector<int> basis_bits(std::size_t index, std::size_t num_qubits) {
    std::vector<int> bits(num_qubits);
    for (std::size_t k = 0; k < num_qubits; k++) {
        bits[k] = static_cast<int>((index >> k) & 1u);
    }
    return bits;
}

std::size_t qubit_count_for_dim(std::size_t dim) {
    if (dim == 0 || (dim & (dim - 1)) != 0) {
        throw DimensionError("dimension " + std::to_string(dim) + " is not a power of two");
    }
    std::size_t n = 0;
    while ((std::size_t{1} << n) < dim) {
        n++;
    }
    return n;
}

namespace {

std::size_t largest_amplitude_index(const Amplitudes &v) {
    double best = -1;
    std::size_t best_index = 0;
    for (Eigen::Index i = 0; i < v.size(); i++) {
        double m = std::abs(v[i]);
        if (m > best + 1e-12) {
            best = m;
            best_index = static_cast<std::size_t>(i);
        }
    }
    return best_index;
}

Amplitudes fix_phase(Amplitudes v) {
    Complex pivot = v[static_cast<Eigen::Index>(largest_amplitude_index(v))];
    if (std::abs(pivot) > 0) {
        v *= std::conj(pivot) / std::abs(pivot);
    }
    return v;
}

void check_targets(std::span<const QubitId> targets, std::size_t num_qubits) {
    for (std::size_t a = 0; a < targets.size(); a++) {
        if (targets[a].index >= num_qubits) {
            throw DimensionError(
                "qubit " + std::to_string(targets[a].index) + " out of range for " + std::to_string(num_qubits) +
                " qubits");
        }
        for (std::size_t b = a + 1; b < targets.size(); b++) {
            if (targets[a] == targets[b]) {
                throw PreconditionError("repeated target qubit " + std::to_string(targets[a].index));
            }
        }
    }
}

}  // namespace

StateVector::StateVector() : amplitudes_(Amplitudes::Unit(2, 0)), num_qubits_(1) {
}

StateVector::StateVector(Amplitudes amplitudes)
    : amplitudes_(std::move(amplitudes)), num_qubits_(qubit_count_for_dim(static_cast<std::size_t>(amplitudes_.size()))) {
    double n = amplitudes_.norm();
    if (!(std::abs(n - 1.0) <= kNormTolerance)) {
        throw PreconditionError("state vector is not normalized (norm " + std::to_string(n) + ")");
    }
}

StateVector StateVector::basis(std::size_t num_qubits, std::size_t index) {
    std::size_t dim = std::size_t{1} << num_qubits;
    if (index >= dim) {
        throw DimensionError("basis index out of range");
    }
    Amplitudes v = Amplitudes::Zero(static_cast<Eigen::Index>(dim));
    v[static_cast<Eigen::Index>(index)] = 1.0;
    return StateVector(std::move(v));
}

StateVector StateVector::normalized(Amplitudes amplitudes) {
    double n = amplitudes.norm();
    if (!(n > 0) || !std::isfinite(n)) {
        throw PreconditionError("cannot normalize a zero or non-finite vector");
    }
    amplitudes /= n;
    return StateVector(std::move(amplitudes));
}

StateVector StateVector::with_fixed_phase() const {
    return StateVector(fix_phase(amplitudes_));
}

StateVector tensor(const StateVector &low, const StateVector &high) {
    Amplitudes out(static_cast<Eigen::Index>(low.dim() * high.dim()));
    for (std::size_t h = 0; h < high.dim(); h++) {
        for (std::size_t l = 0; l < low.dim(); l++) {
            out[static_cast<Eigen::Index>(h * low.dim() + l)] = high[h] * low[l];
        }
    }
    return StateVector::normalized(std::move(out));
}

DensityMatrix::DensityMatrix(Matrix rho) : rho_(std::move(rho)), num_qubits_(0) {
    if (rho_.rows() != rho_.cols()) {
        throw DimensionError("density matrix must be square");
    }
    num_qubits_ = qubit_count_for_dim(static_cast<std::size_t>(rho_.rows()));
    double scale = std::max(1.0, rho_.cwiseAbs().maxCoeff());
    if ((rho_ - rho_.adjoint()).cwiseAbs().maxCoeff() > 1e-12 * scale) {
        throw PreconditionError("density matrix is not Hermitian");
    }
    rho_ = 0.5 * (rho_ + rho_.adjoint()).eval();
    if (std::abs(rho_.trace() - Complex(1.0)) > kNormTolerance) {
        throw PreconditionError("density matrix trace is not 1");
    }
    if (eigenvalues().minCoeff() < -1e-12) {
        throw PreconditionError("density matrix has a negative eigenvalue");
    }
}

DensityMatrix DensityMatrix::pure(const StateVector &state) {
    return DensityMatrix(state.amplitudes() * state.amplitudes().adjoint());
}

double DensityMatrix::purity() const {
    return (rho_ * rho_).trace().real();
}

Eigen::VectorXd DensityMatrix::eigenvalues() const {
    Eigen::SelfAdjointEigenSolver<Matrix> solver(rho_, Eigen::EigenvaluesOnly);
    return solver.eigenvalues();
}

StateVector DensityMatrix::dominant_state() const {
    Eigen::SelfAdjointEigenSolver<Matrix> solver(rho_);
    Amplitudes v = solver.eigenvectors().col(rho_.cols() - 1);
    return StateVector::normalized(fix_phase(std::move(v)));
}

Amplitudes apply_local(const Amplitudes &amps, const Matrix &op, std::span<const QubitId> targets) {
    std::size_t n = qubit_count_for_dim(static_cast<std::size_t>(amps.size()));
    check_targets(targets, n);
    std::size_t m = targets.size();
    std::size_t local_dim = std::size_t{1} << m;
    if (static_cast<std::size_t>(op.rows()) != local_dim || static_cast<std::size_t>(op.cols()) != local_dim) {
        throw DimensionError(
            "operator is " + std::to_string(op.rows()) + "x" + std::to_string(op.cols()) + " but " +
            std::to_string(m) + " targets need " + std::to_string(local_dim));
    }

    std::vector<std::size_t> offsets(local_dim, 0);
    std::size_t target_mask = 0;
    for (std::size_t j = 0; j < local_dim; j++) {
        for (std::size_t b = 0; b < m; b++) {
            if ((j >> b) & 1u) {
                offsets[j] |= std::size_t{1} << targets[b].index;
            }
        }
    }
    for (const auto &t : targets) {
        target_mask |= std::size_t{1} << t.index;
    }

    Amplitudes out(amps.size());
    Amplitudes gathered(static_cast<Eigen::Index>(local_dim));
    for (std::size_t base = 0; base < static_cast<std::size_t>(amps.size()); base++) {
        if (base & target_mask) {
            continue;
        }
        for (std::size_t j = 0; j < local_dim; j++) {
            gathered[static_cast<Eigen::Index>(j)] = amps[static_cast<Eigen::Index>(base | offsets[j])];
        }
        Amplitudes result = op * gathered;
        for (std::size_t j = 0; j < local_dim; j++) {
            out[static_cast<Eigen::Index>(base | offsets[j])] = result[static_cast<Eigen::Index>(j)];
        }
    }
    return out;
}

StateVector apply_local(const StateVector &state, const Matrix &op, std::span<const QubitId> targets) {
    if (op.rows() == op.cols()) {
        Matrix gram = op.adjoint() * op;
        if (!gram.isApprox(Matrix::Identity(op.rows(), op.cols()), 1e-10)) {
            throw PreconditionError("apply_local on a StateVector requires a unitary operator");
        }
    }
    return StateVector::normalized(apply_local(state.amplitudes(), op, targets));
}

DensityMatrix partial_trace(const StateVector &state, std::span<const QubitId> keep) {
    if (keep.empty()) {
        throw PreconditionError("partial_trace: keep set is empty");
    }
    std::size_t n = state.num_qubits();
    check_targets(keep, n);

    std::size_t keep_mask = 0;
    for (const auto &k : keep) {
        keep_mask |= std::size_t{1} << k.index;
    }
    std::vector<std::size_t> env_qubits;
    for (std::size_t q = 0; q < n; q++) {
        if (!((keep_mask >> q) & 1u)) {
            env_qubits.push_back(q);
        }
    }

    auto kept_dim = static_cast<Eigen::Index>(std::size_t{1} << keep.size());
    auto env_dim = static_cast<Eigen::Index>(std::size_t{1} << env_qubits.size());
    Matrix psi(kept_dim, env_dim);
    for (std::size_t i = 0; i < state.dim(); i++) {
        std::size_t a = 0;
        for (std::size_t b = 0; b < keep.size(); b++) {
            a |= ((i >> keep[b].index) & 1u) << b;
        }
        std::size_t e = 0;
        for (std::size_t b = 0; b < env_qubits.size(); b++) {
            e |= ((i >> env_qubits[b]) & 1u) << b;
        }
        psi(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(e)) = state[i];
    }
    Matrix rho = psi * psi.adjoint();
    // Absorb the (sub-1e-9) normalization slack of the input.
    rho /= rho.trace().real();
    return DensityMatrix(std::move(rho));
}

const StateVector &MeasurementResult::collapsed(int bit) const {
    const auto &branch = bit == 0 ? collapsed0 : collapsed1;
    if (!branch) {
        throw DegenerateBranchError(
            "branch " + std::to_string(bit) + " has probability " + std::to_string(probability(bit)) +
            ", below the collapse threshold");
    }
    return *branch;
}

int draw_outcome(double p0, std::mt19937_64 &rng) {
    std::uniform_real_distribution<double> uniform(0.0, 1.0);
    return uniform(rng) < p0 ? 0 : 1;
}

MeasurementResult measure_qubit(const StateVector &state, QubitId qubit, MeasureMode mode) {
    if (qubit.index >= state.num_qubits()) {
        throw DimensionError("measure_qubit: qubit out of range");
    }
    std::size_t bit = std::size_t{1} << qubit.index;
    Amplitudes branch0 = Amplitudes::Zero(state.amplitudes().size());
    Amplitudes branch1 = Amplitudes::Zero(state.amplitudes().size());
    for (std::size_t i = 0; i < state.dim(); i++) {
        auto &dst = (i & bit) ? branch1 : branch0;
        dst[static_cast<Eigen::Index>(i)] = state[i];
    }

    MeasurementResult r;
    double n0 = branch0.squaredNorm();
    double n1 = branch1.squaredNorm();
    r.p0 = n0 / (n0 + n1);
    r.p1 = n1 / (n0 + n1);
    if (r.p0 >= kCollapseThreshold) {
        r.collapsed0 = StateVector::normalized(std::move(branch0));
    }
    if (r.p1 >= kCollapseThreshold) {
        r.collapsed1 = StateVector::normalized(std::move(branch1));
    }
    if (const auto *s = std::get_if<Sampled>(&mode)) {
        std::mt19937_64 rng(s->seed);
        r.outcome = draw_outcome(r.p0, rng);
        r.collapsed(*r.outcome);
    }
    return r;
}

std::vector<int> sample_qubit(const StateVector &state, QubitId qubit, std::size_t shots, std::uint64_t seed) {
    auto m = measure_qubit(state, qubit);
    std::mt19937_64 rng(seed);
    std::vector<int> outcomes(shots);
    for (auto &o : outcomes) {
        o = draw_outcome(m.p0, rng);
    }
    return outcomes;
}

double fidelity(const StateVector &a, const StateVector &b) {
    if (a.dim() != b.dim()) {
        throw DimensionError("fidelity: dimension mismatch");
    }
    return std::clamp(std::norm(a.amplitudes().dot(b.amplitudes())), 0.0, 1.0);
}

double fidelity(const DensityMatrix &rho, const StateVector &b) {
    if (rho.dim() != b.dim()) {
        throw DimensionError("fidelity: dimension mismatch");
    }
    Complex v = b.amplitudes().dot(rho.matrix() * b.amplitudes());
    return std::clamp(v.real(), 0.0, 1.0);
}

namespace ops {

Matrix identity2() {
    return Matrix::Identity(2, 2);
}

Matrix pauli_x() {
    Matrix m(2, 2);
    m << 0, 1, 1, 0;
    return m;
}

Matrix pauli_y() {
    Matrix m(2, 2);
    m << 0, Complex(0, -1), Complex(0, 1), 0;
    return m;
}

Matrix pauli_z() {
    Matrix m(2, 2);
    m << 1, 0, 0, -1;
    return m;
}

Matrix proj0() {
    Matrix m = Matrix::Zero(2, 2);
    m(0, 0) = 1;
    return m;
}

Matrix proj1() {
    Matrix m = Matrix::Zero(2, 2);
    m(1, 1) = 1;
    return m;
}

Matrix phase(double theta) {
    Matrix m = Matrix::Zero(2, 2);
    m(0, 0) = 1;
    m(1, 1) = std::polar(1.0, theta);
    return m;
}

Matrix kron_local(const Matrix &low, const Matrix &high) {
    Matrix out(low.rows() * high.rows(), low.cols() * high.cols());
    for (Eigen::Index hr = 0; hr < high.rows(); hr++) {
        for (Eigen::Index hc = 0; hc < high.cols(); hc++) {
            out.block(hr * low.rows(), hc * low.cols(), low.rows(), low.cols()) = high(hr, hc) * low;
        }
    }
    return out;
}

}  // namespace ops

}  // namespace dqd
