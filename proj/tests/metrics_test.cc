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

#include <gtest/gtest.h>

#include <cmath>
#include <vector>

#include "generators.h"

namespace dqd {
namespace {

using testing::Gen;

const double kS = 1 / std::sqrt(2.0);

StateVector bell() {
    Amplitudes a(4);
    a << kS, 0, 0, kS;
    return StateVector(a);
}

DeviceGraph pair_graph(double w, double u) {
    DeviceGraph g;
    g.num_dqds = 2;
    g.add_tunneling(QubitId(0), Schedule::constant(w));
    g.add_tunneling(QubitId(1), Schedule::constant(w));
    g.add_disagreement_links(QubitId(0), QubitId(1), Schedule::constant(u));
    return g;
}

TEST(Concurrence, BellAndProduct) {
    EXPECT_NEAR(concurrence(DensityMatrix::pure(bell())), 1.0, 1e-12);
    EXPECT_NEAR(concurrence(DensityMatrix::pure(StateVector::basis(2, 0))), 0.0, 1e-12);
    EXPECT_THROW(concurrence(DensityMatrix::pure(StateVector::basis(3, 0))), DimensionError);
}

TEST(Concurrence, PairGroundStateAtUEqualsThreeW) {
    // Amplitudes (1, r, r, 1) with r = 1/2: 2|ad - bc| / norm^2 = 2 (1 - r^2) / (2 + 2 r^2) = 0.6.
    auto gs = ground_state(hamiltonian_at(pair_graph(1, 3), 0));
    double c = concurrence(DensityMatrix::pure(gs.state));
    EXPECT_GT(c, 0);
    EXPECT_LT(c, 1);
    EXPECT_NEAR(c, 0.6, 1e-10);
}

TEST(Concurrence, WernerStates) {
    // p |Bell><Bell| + (1 - p) I / 4 has C = max(0, (3p - 1) / 2).
    for (double p : {0.0, 0.2, 1.0 / 3, 0.5, 0.9}) {
        Matrix rho = p * DensityMatrix::pure(bell()).matrix() + (1 - p) * Matrix::Identity(4, 4) / 4;
        EXPECT_NEAR(concurrence(DensityMatrix(rho)), std::max(0.0, (3 * p - 1) / 2), 1e-7);
    }
}

TEST(ConcurrenceProperty, PureStatesMatchDeterminantFormula) {
    Gen gen(1);
    for (int trial = 0; trial < 50; trial++) {
        auto s = gen.state(2);
        double oracle = 2 * std::abs(s[0] * s[3] - s[1] * s[2]);
        EXPECT_NEAR(concurrence(DensityMatrix::pure(s)), oracle, 1e-7);
    }
}

TEST(ConcurrenceProperty, InvariantUnderLocalUnitaries) {
    Gen gen(2);
    for (int trial = 0; trial < 50; trial++) {
        auto rho = gen.density(2, 1 + gen.index(3));
        Matrix local = ops::kron_local(gen.unitary(2), gen.unitary(2));
        DensityMatrix rotated(local * rho.matrix() * local.adjoint());
        EXPECT_NEAR(concurrence(rho), concurrence(rotated), 1e-9);
        double c = concurrence(rho);
        EXPECT_GE(c, 0);
        EXPECT_LE(c, 1);
    }
}

TEST(Entropy, Examples) {
    const QubitId first[] = {QubitId(0)};
    EXPECT_NEAR(entanglement_entropy(bell(), first), 1.0, 1e-12);
    EXPECT_NEAR(entanglement_entropy(StateVector::basis(2, 2), first), 0.0, 1e-12);
    Amplitudes ghz = Amplitudes::Zero(32);
    ghz[0] = ghz[31] = kS;
    const QubitId middle[] = {QubitId(2)};
    EXPECT_NEAR(entanglement_entropy(StateVector(ghz), middle), 1.0, 1e-12);
    EXPECT_THROW(entanglement_entropy(bell(), std::span<const QubitId>{}), PreconditionError);
}

TEST(EntropyProperty, ComplementaryCutsAgree) {
    Gen gen(3);
    for (int trial = 0; trial < 30; trial++) {
        std::size_t n = 2 + gen.index(4);
        auto order = gen.targets(n, n);
        std::size_t m = 1 + gen.index(n - 1);
        std::vector<QubitId> a(order.begin(), order.begin() + static_cast<long>(m));
        std::vector<QubitId> b(order.begin() + static_cast<long>(m), order.end());
        auto s = gen.state(n);
        EXPECT_NEAR(entanglement_entropy(s, a), entanglement_entropy(s, b), 1e-10);
    }
}

TEST(TraceDistance, MixedVersusPure) {
    auto mixed = DensityMatrix(Matrix::Identity(2, 2) / 2);
    EXPECT_NEAR(trace_distance(mixed, DensityMatrix::pure(StateVector::basis(1, 0))), 0.5, 1e-12);
    EXPECT_NEAR(trace_distance(mixed, mixed), 0.0, 1e-15);
}

TEST(InstantaneousGap, Examples) {
    DeviceGraph one;
    one.num_dqds = 1;
    one.add_tunneling(QubitId(0), Schedule::constant(0.7));
    EXPECT_NEAR(instantaneous_gap(one, 0), 1.4, 1e-12);
    EXPECT_NEAR(instantaneous_gap(pair_graph(1, 0), 0), 2.0, 1e-12);
    EXPECT_NEAR(instantaneous_gap(pair_graph(1, 100), 0), (std::sqrt(10016.0) - 100) / 2, 1e-10);
    EXPECT_NEAR(instantaneous_gap(pair_graph(1, 1e4), 0), 4e-4, 1e-9);
    EXPECT_EQ(instantaneous_gap(pair_graph(0, 5), 0), 0.0);
}

TEST(InstantaneousGapProperty, LipschitzAlongSchedules) {
    Gen gen(4);
    for (int trial = 0; trial < 10; trial++) {
        auto g = gen.device(2 + gen.index(2), 3, 1.0);
        double bound = HamiltonianModel(g).slope_bound();
        const int n = 50;
        double prev = instantaneous_gap(g, 0);
        for (int k = 1; k <= n; k++) {
            double gap = instantaneous_gap(g, static_cast<double>(k) / n);
            EXPECT_LE(std::abs(gap - prev), 2 * bound / n + 1e-12);
            prev = gap;
        }
    }
}

TEST(FitOscillation, RecoversSyntheticFrequency) {
    std::vector<double> t, p;
    for (int k = 0; k < 200; k++) {
        t.push_back(k * 0.5);
        p.push_back(std::pow(std::sin(0.1 * t.back()), 2));
    }
    auto fit = fit_oscillation(t, p);
    EXPECT_NEAR(fit.frequency, 0.2, 1e-6);
    EXPECT_NEAR(fit.rabi_rate(), 0.1, 1e-6);
    EXPECT_NEAR(fit.amplitude, 1, 1e-6);
    EXPECT_NEAR(fit.offset, 0, 1e-6);
    EXPECT_LT(fit.rms_residual, 1e-8);
    EXPECT_TRUE(fit.oscillatory);
}

TEST(FitOscillation, ConstantSeriesIsFlagged) {
    std::vector<double> t, p;
    for (int k = 0; k < 32; k++) {
        t.push_back(k);
        p.push_back(0.25);
    }
    EXPECT_FALSE(fit_oscillation(t, p).oscillatory);
}

TEST(FitOscillation, Preconditions) {
    std::vector<double> t(10, 0), p(10, 0);
    EXPECT_THROW(fit_oscillation(t, p), PreconditionError);
    std::vector<double> t2(20), p2(19);
    EXPECT_THROW(fit_oscillation(t2, p2), PreconditionError);
}

TEST(FitOscillationProperty, RandomParametersWithNoise) {
    Gen gen(5);
    for (int trial = 0; trial < 20; trial++) {
        double omega = gen.uniform(0.05, 2);
        double a = gen.uniform(-0.5, 0.5), b = gen.uniform(0.3, 1.0);
        double span = gen.uniform(2, 4) * std::numbers::pi / omega;
        std::vector<double> t, p;
        for (int k = 0; k < 120; k++) {
            t.push_back(span * k / 119.0);
            double s = std::sin(omega * t.back());
            p.push_back(a + b * s * s + 1e-4 * gen.normal());
        }
        auto fit = fit_oscillation(t, p);
        EXPECT_NEAR(fit.rabi_rate(), omega, 1e-3 * omega);
        EXPECT_NEAR(fit.amplitude, b, 1e-2);
        EXPECT_TRUE(fit.oscillatory);
    }
}

}  // namespace
}  // namespace dqd
