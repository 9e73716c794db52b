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

#include "dqd/metrics.h"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>
#include <algorithm>
#include <boost/math/tools/minima.hpp>
#include <cmath>
#include <numbers>
#include <vector>

#include "dqd/evolve.h"

namespace dqd {

namespace {

struct LinearFit {
    double offset = 0;
    double amplitude = 0;
    double rss = 0;
};

// Best offset + amplitude * sin^2(omega t) for a fixed omega.
LinearFit fit_at(double omega, std::span<const double> t, std::span<const double> y) {
    double n = static_cast<double>(t.size());
    double sx = 0, sxx = 0, sy = 0, sxy = 0;
    for (std::size_t i = 0; i < t.size(); i++) {
        double s = std::sin(omega * t[i]);
        double x = s * s;
        sx += x;
        sxx += x * x;
        sy += y[i];
        sxy += x * y[i];
    }
    LinearFit f;
    double det = n * sxx - sx * sx;
    if (std::abs(det) < 1e-14 * n * n) {
        f.offset = sy / n;
        f.amplitude = 0;
    } else {
        f.amplitude = (n * sxy - sx * sy) / det;
        f.offset = (sy - f.amplitude * sx) / n;
    }
    for (std::size_t i = 0; i < t.size(); i++) {
        double s = std::sin(omega * t[i]);
        double r = y[i] - f.offset - f.amplitude * s * s;
        f.rss += r * r;
    }
    return f;
}

}  // namespace

double concurrence(const DensityMatrix &rho) {
    if (rho.num_qubits() != 2) {
        throw DimensionError("concurrence is defined for two qubits");
    }
    // With rho = sum_i v_i v_i^dagger, the spin-flip spectrum sqrt(eig(rho rho~)) equals the
    // singular values of tau_ij = v_i^T (Y x Y) v_j.
    Eigen::SelfAdjointEigenSolver<Matrix> solver(rho.matrix());
    Matrix v = solver.eigenvectors() * solver.eigenvalues().cwiseMax(0.0).cwiseSqrt().cast<Complex>().asDiagonal();
    Matrix yy = ops::kron_local(ops::pauli_y(), ops::pauli_y());
    Matrix tau = v.transpose() * yy * v;
    Eigen::JacobiSVD<Matrix> svd(tau);
    std::vector<double> lambda(svd.singularValues().data(), svd.singularValues().data() + 4);
    std::sort(lambda.rbegin(), lambda.rend());
    return std::clamp(lambda[0] - lambda[1] - lambda[2] - lambda[3], 0.0, 1.0);
}

double von_neumann_entropy(const DensityMatrix &rho) {
    double s = 0;
    auto ev = rho.eigenvalues();
    for (Eigen::Index i = 0; i < ev.size(); i++) {
        if (ev[i] > 1e-15) {
            s -= ev[i] * std::log2(ev[i]);
        }
    }
    return std::max(s, 0.0);
}

double entanglement_entropy(const StateVector &state, std::span<const QubitId> partition) {
    if (partition.empty()) {
        throw PreconditionError("entanglement_entropy: empty partition");
    }
    return von_neumann_entropy(partial_trace(state, partition));
}

double trace_distance(const DensityMatrix &a, const DensityMatrix &b) {
    if (a.dim() != b.dim()) {
        throw DimensionError("trace_distance: dimension mismatch");
    }
    Eigen::SelfAdjointEigenSolver<Matrix> solver(a.matrix() - b.matrix(), Eigen::EigenvaluesOnly);
    return 0.5 * solver.eigenvalues().cwiseAbs().sum();
}

double instantaneous_gap(const DeviceGraph &g, double t) {
    auto gs = ground_state(hamiltonian_at(g, t));
    return gs.degenerate() ? 0.0 : gs.gap;
}

RabiFit fit_oscillation(std::span<const double> times, std::span<const double> values) {
    if (times.size() != values.size()) {
        throw PreconditionError("fit_oscillation: times and values differ in length");
    }
    if (times.size() < 16) {
        throw PreconditionError("fit_oscillation needs at least 16 samples");
    }
    double span = times.back() - times.front();
    if (!(span > 0)) {
        throw PreconditionError("fit_oscillation: samples must span a positive time interval");
    }
    double min_step = span;
    for (std::size_t i = 1; i < times.size(); i++) {
        min_step = std::min(min_step, times[i] - times[i - 1]);
    }
    if (!(min_step > 0)) {
        throw PreconditionError("fit_oscillation: times must be strictly increasing");
    }

    double mean = 0;
    for (double v : values) {
        mean += v;
    }
    mean /= static_cast<double>(values.size());
    double tss = 0;
    for (double v : values) {
        tss += (v - mean) * (v - mean);
    }

    // sin^2(Omega t) repeats with period pi / Omega; scan from half a period over the span up to
    // the sampling limit, on a grid fine enough that the phase at the last sample moves < 0.05.
    const double pi = std::numbers::pi;
    double lo = pi / (2 * span);
    double hi = pi / (2 * min_step);
    double step = 0.05 / std::max(std::abs(times.back()), span);
    double best_omega = lo;
    double best_rss = fit_at(lo, times, values).rss;
    for (double omega = lo; omega <= hi; omega += step) {
        double rss = fit_at(omega, times, values).rss;
        if (rss < best_rss) {
            best_rss = rss;
            best_omega = omega;
        }
    }
    auto objective = [&](double omega) {
        return fit_at(omega, times, values).rss;
    };
    auto [omega, rss] = boost::math::tools::brent_find_minima(
        objective, std::max(lo, best_omega - step), std::min(hi, best_omega + step), 52);
    if (rss > best_rss) {
        omega = best_omega;
    }

    // Brent resolves omega only to about sqrt(machine epsilon); finish with Gauss-Newton steps on
    // all three parameters.
    auto f = fit_at(omega, times, values);
    for (int iter = 0; iter < 5; iter++) {
        auto n = static_cast<Eigen::Index>(times.size());
        Eigen::MatrixXd jac(n, 3);
        Eigen::VectorXd res(n);
        for (Eigen::Index i = 0; i < n; i++) {
            double t = times[static_cast<std::size_t>(i)];
            double s = std::sin(omega * t);
            jac(i, 0) = 1;
            jac(i, 1) = s * s;
            jac(i, 2) = f.amplitude * t * std::sin(2 * omega * t);
            res[i] = values[static_cast<std::size_t>(i)] - f.offset - f.amplitude * s * s;
        }
        Eigen::Vector3d delta = jac.colPivHouseholderQr().solve(res);
        double trial = omega + delta[2];
        if (!std::isfinite(trial) || trial <= 0) {
            break;
        }
        auto g = fit_at(trial, times, values);
        if (!(g.rss < f.rss)) {
            break;
        }
        omega = trial;
        f = g;
    }
    RabiFit out;
    out.frequency = 2 * omega;
    out.amplitude = f.amplitude;
    out.offset = f.offset;
    out.rms_residual = std::sqrt(f.rss / static_cast<double>(times.size()));
    double scale = std::max(1.0, std::abs(mean));
    out.oscillatory = tss > 1e-20 * scale * scale * static_cast<double>(values.size()) &&
                      std::abs(f.amplitude) > 1e-9 * scale && f.rss < 0.5 * tss;
    return out;
}

}  // namespace dqd
