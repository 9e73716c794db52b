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

#include "dqd/evolve.h"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <limits>

namespace dqd {

namespace {

constexpr Complex kMinusI(0, -1);

// Above this value of dt * ||H|| a step falls back to a dense eigendecomposition.
constexpr double kTaylorRadius = 1.0;
constexpr int kMaxTaylorTerms = 40;

void check_hermitian(const Matrix &h) {
    if (h.rows() != h.cols()) {
        throw DimensionError("Hamiltonian must be square");
    }
    double scale = std::max(1.0, h.cwiseAbs().maxCoeff());
    if ((h - h.adjoint()).cwiseAbs().maxCoeff() > 1e-10 * scale) {
        throw PreconditionError("Hamiltonian is not Hermitian");
    }
}

Matrix exp_minus_i(const Matrix &h, double duration) {
    Eigen::SelfAdjointEigenSolver<Matrix> solver(h);
    Eigen::VectorXcd phases(h.rows());
    for (Eigen::Index i = 0; i < h.rows(); i++) {
        phases[i] = std::polar(1.0, -solver.eigenvalues()[i] * duration);
    }
    const Matrix &v = solver.eigenvectors();
    return v * phases.asDiagonal() * v.adjoint();
}

// columns <- exp(-i H(s) h) columns.
void step(const HamiltonianModel::Snapshot &s, double h, Matrix &columns, Matrix &term, Matrix &scratch) {
    if (h * s.norm_bound() > kTaylorRadius) {
        columns = exp_minus_i(HamiltonianModel::dense(s), h) * columns;
        return;
    }
    term = columns;
    double floor = std::numeric_limits<double>::epsilon() * 0.05 * columns.norm();
    for (int k = 1; k <= kMaxTaylorTerms; k++) {
        HamiltonianModel::apply(s, term, scratch);
        term = scratch * (kMinusI * (h / k));
        columns += term;
        if (term.norm() <= floor) {
            break;
        }
    }
}

Matrix run_steps(const Matrix &columns, const HamiltonianModel &model, double t0, double t1, double dt) {
    auto n = static_cast<long>(std::ceil((t1 - t0) / dt - 1e-9));
    n = std::max(n, 1L);
    double h = (t1 - t0) / static_cast<double>(n);
    Matrix state = columns;
    Matrix term(columns.rows(), columns.cols());
    Matrix scratch(columns.rows(), columns.cols());
    HamiltonianModel::Snapshot snapshot;
    for (long k = 0; k < n; k++) {
        double mid = t0 + (static_cast<double>(k) + 0.5) * h;
        model.at(mid, snapshot);
        step(snapshot, h, state, term, scratch);
    }
    return state;
}

}  // namespace

PropagatorConfig PropagatorConfig::for_energies(std::initializer_list<double> energies) {
    double fastest = 0;
    for (double e : energies) {
        if (e > 0 && std::isfinite(e)) {
            fastest = std::max(fastest, e);
        }
    }
    PropagatorConfig cfg;
    cfg.dt = fastest > 0 ? 1e-2 / fastest : 1e-2;
    return cfg;
}

std::vector<std::string> PropagatorConfig::problems() const {
    std::vector<std::string> out;
    if (!(dt > 0) || !std::isfinite(dt)) {
        out.emplace_back("dt must be positive");
    }
    if (!(tolerance > 0)) {
        out.emplace_back("tolerance must be positive");
    }
    return out;
}

GroundState ground_state(const Matrix &h) {
    check_hermitian(h);
    Eigen::SelfAdjointEigenSolver<Matrix> solver(h);
    const auto &e = solver.eigenvalues();
    GroundState g{e[0], StateVector::normalized(solver.eigenvectors().col(0)).with_fixed_phase(), 0, 1};
    if (e.size() > 1) {
        g.gap = e[1] - e[0];
    }
    g.multiplicity = 0;
    for (Eigen::Index i = 0; i < e.size(); i++) {
        if (e[i] - e[0] <= kDegeneracyTolerance) {
            g.multiplicity++;
        }
    }
    return g;
}

double ground_manifold_overlap(const Matrix &h, const StateVector &state) {
    check_hermitian(h);
    if (static_cast<std::size_t>(h.rows()) != state.dim()) {
        throw DimensionError("ground_manifold_overlap: dimension mismatch");
    }
    Eigen::SelfAdjointEigenSolver<Matrix> solver(h);
    const auto &e = solver.eigenvalues();
    double total = 0;
    for (Eigen::Index i = 0; i < e.size() && e[i] - e[0] <= kDegeneracyTolerance; i++) {
        total += std::norm(solver.eigenvectors().col(i).dot(state.amplitudes()));
    }
    return std::min(total, 1.0);
}

StateVector evolve_static(const StateVector &state, const Matrix &h, double duration) {
    check_hermitian(h);
    if (static_cast<std::size_t>(h.rows()) != state.dim()) {
        throw DimensionError("evolve_static: Hamiltonian and state dimensions differ");
    }
    return StateVector(exp_minus_i(h, duration) * state.amplitudes());
}

Matrix evolve_scheduled_columns(const Matrix &columns, const HamiltonianModel &model, double t0, double t1,
                                const PropagatorConfig &cfg) {
    if (auto p = cfg.problems(); !p.empty()) {
        throw PreconditionError("invalid propagator config: " + p.front());
    }
    if (!(t1 > t0)) {
        throw PreconditionError("evolve_scheduled requires t0 < t1");
    }
    if (static_cast<std::size_t>(columns.rows()) != model.dim()) {
        throw DimensionError("evolve_scheduled: state and device dimensions differ");
    }
    for (double jump : model.discontinuities()) {
        if (jump > t0 && jump < t1) {
            throw PreconditionError(
                "sudden step at t=" + std::to_string(jump) + " lies inside the integration segment; split the "
                "evolution at the switch");
        }
    }

    Matrix coarse = run_steps(columns, model, t0, t1, cfg.dt);
    if (cfg.richardson_check) {
        Matrix fine = run_steps(columns, model, t0, t1, cfg.dt / 2);
        double diff = (coarse - fine).norm();
        if (diff > cfg.tolerance) {
            throw ConvergenceError(
                "step refinement changed the state by " + std::to_string(diff) + " (tolerance " +
                std::to_string(cfg.tolerance) + "); reduce dt");
        }
        return fine;
    }
    return coarse;
}

StateVector evolve_scheduled(const StateVector &state, const DeviceGraph &g, double t0, double t1,
                             const PropagatorConfig &cfg) {
    HamiltonianModel model(g);
    Matrix out = evolve_scheduled_columns(state.amplitudes(), model, t0, t1, cfg);
    return StateVector(out.col(0));
}

RampResult adiabatic_ramp(const StateVector &state, const DeviceGraph &g, double t0, double t1,
                          const PropagatorConfig &cfg, std::size_t samples) {
    HamiltonianModel model(g);
    if (state.dim() != model.dim()) {
        throw DimensionError("adiabatic_ramp: state and device dimensions differ");
    }
    if (t1 < t0) {
        throw PreconditionError("adiabatic_ramp requires t0 <= t1");
    }
    samples = std::max<std::size_t>(samples, 64);
    if (t1 == t0) {
        samples = 0;
    }

    RampDiagnostics diag;
    diag.min_gap = std::numeric_limits<double>::infinity();
    auto sample_at = [&](double t) {
        Eigen::SelfAdjointEigenSolver<Matrix> solver(model.dense(t), Eigen::EigenvaluesOnly);
        double gap = solver.eigenvalues().size() > 1 ? solver.eigenvalues()[1] - solver.eigenvalues()[0] : 0.0;
        diag.sample_times.push_back(t);
        diag.gaps.push_back(gap);
        if (gap < diag.min_gap) {
            diag.min_gap = gap;
            diag.min_gap_time = t;
        }
    };

    diag.initial_ground_overlap = ground_manifold_overlap(model.dense(t0), state);
    if (diag.initial_ground_overlap < 0.99) {
        diag.warnings.push_back(
            "ramp starts with ground-state population " + std::to_string(diag.initial_ground_overlap) +
            "; the adiabatic theorem does not apply");
    }

    Matrix columns = state.amplitudes();
    sample_at(t0);
    for (std::size_t k = 1; k <= samples; k++) {
        double a = t0 + (t1 - t0) * static_cast<double>(k - 1) / static_cast<double>(samples);
        double b = k == samples ? t1 : t0 + (t1 - t0) * static_cast<double>(k) / static_cast<double>(samples);
        columns = evolve_scheduled_columns(columns, model, a, b, cfg);
        sample_at(b);
    }

    StateVector out(columns.col(0));
    diag.initial_gap = diag.gaps.front();
    diag.final_gap = diag.gaps.back();
    diag.final_ground_overlap = ground_manifold_overlap(model.dense(t1), out);
    return RampResult{std::move(out), std::move(diag)};
}

}  // namespace dqd
