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

// Seeded random generators for property tests.

#ifndef DQD_TESTS_GENERATORS_H
#define DQD_TESTS_GENERATORS_H

#include <Eigen/QR>
#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include "dqd/device.h"
#include "dqd/hilbert.h"
#include "dqd/protocol.h"

namespace dqd::testing {

class Gen {
   public:
    explicit Gen(std::uint64_t seed) : rng_(seed) {
    }

    double uniform(double lo, double hi) {
        return std::uniform_real_distribution<double>(lo, hi)(rng_);
    }
    double normal() {
        return std::normal_distribution<double>(0, 1)(rng_);
    }
    std::size_t index(std::size_t n) {
        return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng_);
    }
    Complex complex_normal() {
        return {normal(), normal()};
    }

    Amplitudes amplitudes(std::size_t dim) {
        Amplitudes a(static_cast<Eigen::Index>(dim));
        for (auto &x : a) {
            x = complex_normal();
        }
        return a;
    }
    StateVector state(std::size_t num_qubits) {
        return StateVector::normalized(amplitudes(std::size_t{1} << num_qubits));
    }
    InputQubit qubit() {
        auto s = state(1);
        return InputQubit{s[0], s[1]};
    }

    /// Haar-distributed unitary from the QR decomposition of a Ginibre matrix.
    Matrix unitary(std::size_t dim) {
        auto d = static_cast<Eigen::Index>(dim);
        Matrix g(d, d);
        for (Eigen::Index i = 0; i < d; i++) {
            for (Eigen::Index j = 0; j < d; j++) {
                g(i, j) = complex_normal();
            }
        }
        Eigen::HouseholderQR<Matrix> qr(g);
        Matrix q = qr.householderQ();
        Matrix r = qr.matrixQR().triangularView<Eigen::Upper>();
        for (Eigen::Index i = 0; i < d; i++) {
            q.col(i) *= r(i, i) / std::abs(r(i, i));
        }
        return q;
    }
    Matrix hermitian(std::size_t dim) {
        Matrix u = unitary(dim);
        Matrix g = u + u.adjoint();
        return g;
    }

    /// Mixed state of rank up to `rank`.
    DensityMatrix density(std::size_t num_qubits, std::size_t rank) {
        std::size_t dim = std::size_t{1} << num_qubits;
        Matrix rho = Matrix::Zero(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
        for (std::size_t k = 0; k < rank; k++) {
            Amplitudes v = amplitudes(dim);
            rho += v * v.adjoint();
        }
        rho /= rho.trace();
        return DensityMatrix(rho);
    }

    /// Distinct qubits in random order.
    std::vector<QubitId> targets(std::size_t num_qubits, std::size_t count) {
        std::vector<std::size_t> all(num_qubits);
        for (std::size_t i = 0; i < num_qubits; i++) {
            all[i] = i;
        }
        std::shuffle(all.begin(), all.end(), rng_);
        std::vector<QubitId> out;
        for (std::size_t i = 0; i < count; i++) {
            out.emplace_back(all[i]);
        }
        return out;
    }

    /// Random device: tunneling on each DQD with random phase and offset, and random smooth or
    /// linear links between distinct DQDs.
    DeviceGraph device(std::size_t num_dqds, std::size_t num_links, double t_end) {
        DeviceGraph g;
        g.num_dqds = num_dqds;
        for (std::size_t k = 0; k < num_dqds; k++) {
            g.add_tunneling(QubitId(k), Schedule::linear_ramp(uniform(0.2, 1.5), uniform(0.2, 1.5), 0, t_end),
                            uniform(-std::numbers::pi, std::numbers::pi), uniform(-0.5, 0.5));
        }
        for (std::size_t l = 0; l < num_links && num_dqds > 1; l++) {
            auto q = targets(num_dqds, 2);
            int a = static_cast<int>(2 * q[0].index + 1 + index(2));
            int b = static_cast<int>(2 * q[1].index + 1 + index(2));
            g.add_coulomb(DotId(a), DotId(b), Schedule::smooth_ramp(uniform(0, 2), uniform(0, 3), 0, t_end));
        }
        return g;
    }

    std::mt19937_64 &engine() {
        return rng_;
    }

   private:
    std::mt19937_64 rng_;
};

/// |<a|b>| up to global phase, as 1 - fidelity.
inline double infidelity(const StateVector &a, const StateVector &b) {
    return 1 - fidelity(a, b);
}

}  // namespace dqd::testing

#endif
