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

#include "dqd/device.h"

#include <gtest/gtest.h>

#include <Eigen/Eigenvalues>
#include <cmath>
#include <numbers>

#include "dqd/device_io.h"
#include "generators.h"

namespace dqd {
namespace {

using testing::Gen;

// Independent dense Hamiltonian: expand each basis state into dot occupations (dot 2k+1 holds
// the electron iff qubit k is 1) and sum link energies; hops connect states one bit apart.
Matrix oracle_hamiltonian(const DeviceGraph &g, double t) {
    std::size_t n = g.num_dqds;
    auto d = static_cast<Eigen::Index>(std::size_t{1} << n);
    Matrix h = Matrix::Zero(d, d);
    for (Eigen::Index i = 0; i < d; i++) {
        std::vector<int> occ(2 * n + 1, 0);
        for (std::size_t k = 0; k < n; k++) {
            bool one = (i >> k) & 1;
            occ[2 * k + 1] = one ? 1 : 0;
            occ[2 * k + 2] = one ? 0 : 1;
        }
        for (const auto &l : g.coulomb_links) {
            h(i, i) += l.strength.value(t) * occ[static_cast<std::size_t>(l.dot_i.label)] *
                       occ[static_cast<std::size_t>(l.dot_j.label)];
        }
        for (const auto &term : g.tunnel_terms) {
            h(i, i) += term.epsilon;
        }
    }
    for (const auto &term : g.tunnel_terms) {
        Eigen::Index bit = Eigen::Index{1} << term.dqd.index;
        for (Eigen::Index i = 0; i < d; i++) {
            if (!(i & bit)) {
                Complex c = -term.amplitude.value(t) * std::exp(Complex(0, -term.phase));
                h(i + bit, i) += c;
                h(i, i + bit) += std::conj(c);
            }
        }
    }
    return h;
}

TEST(DotId, Mapping) {
    EXPECT_EQ(dqd_of(DotId(1)).index, 0u);
    EXPECT_EQ(dqd_of(DotId(6)).index, 2u);
    EXPECT_EQ(occupied_level(DotId(3)), 1);
    EXPECT_EQ(occupied_level(DotId(4)), 0);
    EXPECT_EQ(odd_dot(QubitId(2)).label, 5);
    EXPECT_EQ(even_dot(QubitId(2)).label, 6);
}

TEST(Device, DisagreementLinksGiveZeroUUZero) {
    DeviceGraph g;
    g.num_dqds = 2;
    g.add_disagreement_links(QubitId(0), QubitId(1), Schedule::constant(7));
    Matrix h = hamiltonian_at(g, 0);
    EXPECT_EQ(h(0, 0), Complex(0));
    EXPECT_EQ(h(1, 1), Complex(7));
    EXPECT_EQ(h(2, 2), Complex(7));
    EXPECT_EQ(h(3, 3), Complex(0));
}

TEST(Device, CompiledLinkOperator) {
    auto c = compile_coulomb(CoulombLink{DotId(1), DotId(4), Schedule::constant(3)});
    EXPECT_EQ(c.qubits[0].index, 0u);
    EXPECT_EQ(c.qubits[1].index, 1u);
    EXPECT_EQ(c.levels[0], 1);
    EXPECT_EQ(c.levels[1], 0);
    Matrix op = c.operator_at(0);
    // Local index: q0 = 1, q1 = 0.
    EXPECT_EQ(op(1, 1), Complex(3));
    EXPECT_EQ(op.cwiseAbs().sum(), 3.0);
    EXPECT_THROW(compile_coulomb(CoulombLink{DotId(3), DotId(4), Schedule::constant(1)}), DeviceError);
}

TEST(Device, SingleDqdEigensystem) {
    Gen gen(1);
    for (int trial = 0; trial < 20; trial++) {
        double w = gen.uniform(0.1, 3);
        double phi = gen.uniform(-3, 3);
        DeviceGraph g;
        g.num_dqds = 1;
        g.add_tunneling(QubitId(0), Schedule::constant(w), phi);
        Eigen::SelfAdjointEigenSolver<Matrix> s(hamiltonian_at(g, 0));
        EXPECT_NEAR(s.eigenvalues()[0], -w, 1e-12);
        EXPECT_NEAR(s.eigenvalues()[1], w, 1e-12);
        // (e^{i phi}|0> + |1>)/sqrt 2 for E = -w.
        Amplitudes lower(2);
        lower << std::exp(Complex(0, phi)) / std::sqrt(2.0), 1 / std::sqrt(2.0);
        EXPECT_NEAR(std::norm(s.eigenvectors().col(0).dot(lower)), 1.0, 1e-12);
    }
}

TEST(Device, ValidationAggregatesProblems) {
    DeviceGraph g;
    g.num_dqds = 2;
    g.add_tunneling(QubitId(5), Schedule::constant(1));
    g.add_tunneling(QubitId(0), Schedule::constant(-1));
    g.add_coulomb(DotId(1), DotId(2), Schedule::constant(1));
    g.add_coulomb(DotId(1), DotId(9), Schedule::constant(1));
    g.add_coulomb(DotId(1), DotId(3), Schedule::constant(-2));
    auto problems = validate(g);
    EXPECT_EQ(problems.size(), 5u);
    try {
        HamiltonianModel m(g);
        FAIL();
    } catch (const DeviceError &e) {
        EXPECT_EQ(e.problems().size(), 5u);
    }
    DeviceGraph big;
    big.num_dqds = 13;
    EXPECT_FALSE(validate(big).empty());
    DeviceGraph empty;
    EXPECT_FALSE(validate(empty).empty());
}

TEST(Device, DuplicateTunnelingRejected) {
    DeviceGraph g;
    g.num_dqds = 1;
    g.add_tunneling(QubitId(0), Schedule::constant(1));
    g.add_tunneling(QubitId(0), Schedule::constant(1));
    EXPECT_EQ(validate(g).size(), 1u);
}

TEST(DeviceProperty, MatchesDotOccupancyOracle) {
    Gen gen(2);
    for (int trial = 0; trial < 40; trial++) {
        std::size_t n = 1 + gen.index(5);
        auto g = gen.device(n, gen.index(6), 3.0);
        double t = gen.uniform(-1, 4);
        EXPECT_LT((hamiltonian_at(g, t) - oracle_hamiltonian(g, t)).norm(), 1e-12);
    }
}

TEST(DeviceProperty, MatvecMatchesDense) {
    Gen gen(3);
    for (int trial = 0; trial < 30; trial++) {
        std::size_t n = 1 + gen.index(6);
        HamiltonianModel model(gen.device(n, gen.index(8), 2.0));
        auto snap = model.at(gen.uniform(0, 2));
        Matrix in(static_cast<Eigen::Index>(model.dim()), 3);
        for (int c = 0; c < 3; c++) {
            in.col(c) = gen.amplitudes(model.dim());
        }
        Matrix out;
        HamiltonianModel::apply(snap, in, out);
        EXPECT_LT((out - HamiltonianModel::dense(snap) * in).norm(), 1e-11 * in.norm());
        Eigen::SelfAdjointEigenSolver<Matrix> s(HamiltonianModel::dense(snap), Eigen::EigenvaluesOnly);
        EXPECT_LE(s.eigenvalues().cwiseAbs().maxCoeff(), snap.norm_bound() + 1e-12);
    }
}

TEST(DeviceProperty, HamiltonianIsHermitian) {
    Gen gen(4);
    for (int trial = 0; trial < 30; trial++) {
        Matrix h = hamiltonian_at(gen.device(1 + gen.index(5), 4, 1.0), gen.uniform(0, 1));
        EXPECT_LT((h - h.adjoint()).norm(), 1e-14);
    }
}

TEST(Device, DiscontinuitiesAreCollected) {
    DeviceGraph g;
    g.num_dqds = 2;
    g.add_tunneling(QubitId(0), Schedule::sudden_step(0, 1, 3));
    g.add_tunneling(QubitId(1), Schedule::sudden_step(1, 0, 3));
    g.add_disagreement_links(QubitId(0), QubitId(1), Schedule::sudden_step(0, 2, 1));
    HamiltonianModel m(g);
    EXPECT_EQ(m.discontinuities(), (std::vector<double>{1, 3}));
}

TEST(DeviceIo, JsonRoundTrip) {
    Gen gen(5);
    for (int trial = 0; trial < 10; trial++) {
        auto g = gen.device(1 + gen.index(4), gen.index(4), 2.0);
        g.coulomb_links.push_back(
            CoulombLink{DotId(1), DotId(static_cast<int>(2 * g.num_dqds)), Schedule::gap_adapted_ramp(0, 5, 0, 1, 0.3)});
        if (g.num_dqds == 1) {
            g.coulomb_links.pop_back();
        }
        nlohmann::json j = g;
        auto back = j.get<DeviceGraph>();
        EXPECT_EQ(back, g);
    }
}

TEST(DeviceIo, RejectsMislabelledDots) {
    auto j = nlohmann::json::parse(R"({"dqds":[{"index":0,"dots":[2,1]}],"tunnel_terms":[],"coulomb_links":[]})");
    EXPECT_THROW(j.get<DeviceGraph>(), DeviceError);
}

}  // namespace
}  // namespace dqd
