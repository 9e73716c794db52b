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

#include "dqd/protocol.h"

#include <gtest/gtest.h>

#include <cmath>
#include <memory>
#include <numbers>
#include <vector>

#include "dqd/metrics.h"
#include "generators.h"

namespace dqd {
namespace {

using testing::Gen;

const double kS = 1 / std::sqrt(2.0);
const Complex kI(0, 1);

ProtocolParams effective_params() {
    ProtocolParams p;
    p.mode = Mode::effective;
    return p;
}

// alpha|000> + beta|111> on (q0, q1, q2).
StateVector ghz3(const InputQubit &q) {
    Amplitudes a = Amplitudes::Zero(8);
    a[0] = q.alpha;
    a[7] = q.beta;
    return StateVector(a);
}

TEST(InputQubit, Validation) {
    EXPECT_THROW(InputQubit::from_amplitudes(1, 1), PreconditionError);
    EXPECT_NO_THROW(InputQubit::from_amplitudes(0.6, Complex(0, 0.8)));
    auto q = InputQubit::from_polar(0.6, std::numbers::pi / 2);
    EXPECT_NEAR(std::abs(q.beta - Complex(0, 0.8)), 0, 1e-15);
    EXPECT_THROW(InputQubit::from_polar(1.2, 0), PreconditionError);
}

TEST(ProtocolParams, DefaultsResolveFromUMax) {
    ProtocolParams p;
    p.U_max = 50;
    EXPECT_EQ(p.uprime_max(), 50);
    EXPECT_EQ(p.bell_u(), 50);
    EXPECT_EQ(p.t_ent(), 100);
    EXPECT_EQ(p.t_couple(), 100);
    EXPECT_NEAR(p.t_wait(), std::numbers::pi / 4 / 0.04, 1e-12);
    EXPECT_NEAR(p.propagator().dt, 1e-2 / 50, 1e-15);
    EXPECT_TRUE(p.problems().empty());
    EXPECT_TRUE(p.warnings().empty());
}

TEST(ProtocolParams, ProblemsAndWarnings) {
    ProtocolParams p;
    p.w = -1;
    EXPECT_FALSE(p.problems().empty());
    ProtocolParams q;
    q.U_max = 5;
    EXPECT_TRUE(q.problems().empty());
    EXPECT_FALSE(q.warnings().empty());
    ProtocolParams r;
    r.Uprime_max = -3;
    EXPECT_FALSE(r.problems().empty());
}

TEST(Encode, GroundLabelNeedsNoTime) {
    auto e = encode_qubit(InputQubit{1, 0}, 1, 0);
    EXPECT_EQ(e.t_bar, 0);
    EXPECT_NEAR(std::abs(e.state[0]), 1, 1e-15);
}

TEST(Encode, QuarterPeriodGivesEqualWeights) {
    auto e = encode_qubit(InputQubit::from_polar(kS, 0), 2, 0);
    EXPECT_NEAR(e.t_bar, std::numbers::pi / 8, 1e-12);
    EXPECT_NEAR(std::abs(e.state[0] - kS), 0, 1e-12);
    EXPECT_NEAR(std::abs(e.state[1] - kI * kS), 0, 1e-12);
}

TEST(Encode, PeierlsPhaseEntersAsExpMinusIPhi) {
    // The tunneling term fixes the relative phase at i e^{-i phi}: (|0> + e^{i pi/4}|1>)/sqrt 2 for
    // phi = pi/4.
    auto e = encode_qubit(InputQubit::from_polar(kS, 0), 1, std::numbers::pi / 4);
    EXPECT_NEAR(std::abs(e.state[1] - std::polar(kS, std::numbers::pi / 4)), 0, 1e-12);
    EXPECT_NEAR(std::abs(e.achieved.beta - e.state[1]), 0, 1e-15);
}

TEST(EncodeProperty, PhaseCovariance) {
    Gen gen(1);
    for (int trial = 0; trial < 30; trial++) {
        auto target = gen.qubit();
        double w = gen.uniform(0.2, 3), phi = gen.uniform(-3, 3);
        auto with = encode_qubit(target, w, phi);
        auto without = encode_qubit(target, w, 0);
        EXPECT_NEAR(std::abs(with.state[0] - without.state[0]), 0, 1e-12);
        EXPECT_NEAR(std::abs(with.state[1] - std::exp(Complex(0, -phi)) * without.state[1]), 0, 1e-12);
        EXPECT_NEAR(std::abs(with.achieved.alpha), std::abs(target.alpha), 1e-12);
    }
}

TEST(Encode, Errors) {
    EXPECT_THROW(encode_qubit(InputQubit{1.5, 0}, 1, 0), PreconditionError);
    EXPECT_THROW(encode_qubit(InputQubit{1, 0}, 0, 0), PreconditionError);
}

TEST(PairReference, RatioMatchesDiagonalizedGroundState) {
    for (double u : {0.0, 1.0, 3.0, 10.0, 100.0}) {
        ProtocolParams p;
        p.U_max = u;
        auto gs = ground_state(hamiltonian_at(entangling_graph(p), p.t_ent()));
        double numeric = std::abs(gs.state[1]) / std::abs(gs.state[0]);
        double closed = (std::sqrt(u * u + 16) - u) / 4;
        EXPECT_NEAR(numeric, closed, 1e-10);
        // The ground state has a positive cross/aligned ratio.
        EXPECT_GT((gs.state[1] / gs.state[0]).real(), 0);
        EXPECT_NEAR(fidelity(entangled_pair_reference(u, 1), gs.state), 1, 1e-12);
    }
}

TEST(PairReference, Examples) {
    auto product = entangled_pair_reference(0, 1);
    for (std::size_t i = 0; i < 4; i++) {
        EXPECT_NEAR(std::abs(product[i]), 0.5, 1e-12);
    }
    auto r3 = entangled_pair_reference(3, 1);
    EXPECT_NEAR(std::abs(r3[1] / r3[0]), 0.5, 1e-12);
    auto far = entangled_pair_reference(1e6, 1);
    EXPECT_NEAR(std::abs(far[0]), kS, 1e-5);
    EXPECT_THROW(entangled_pair_reference(1, 0), PreconditionError);
    EXPECT_THROW(entangled_pair_reference(-1, 1), PreconditionError);
}

TEST(EntangledPair, EffectiveModeIsNearBell) {
    auto pair = make_entangled_pair(effective_params());
    EXPECT_GE(pair.bell_overlap, 0.999);
    // 1 / (1 + r^2) with r = (sqrt(10016) - 100) / 4.
    double r = (std::sqrt(10016.0) - 100) / 4;
    EXPECT_NEAR(pair.bell_overlap, 1 / (1 + r * r), 1e-12);
}

TEST(EffectiveRabi, Examples) {
    EXPECT_DOUBLE_EQ(effective_rabi(1, 20), 0.1);
    EXPECT_DOUBLE_EQ(effective_rabi(1, 100), 0.02);
    EXPECT_EQ(effective_rabi(0, 10), 0);
    EXPECT_THROW(effective_rabi(1, 0), PreconditionError);
}

TEST(Couple, EffectiveModeIsGhzLike) {
    Gen gen(2);
    auto p = effective_params();
    auto pair = make_entangled_pair(p);
    for (int trial = 0; trial < 10; trial++) {
        auto q = gen.qubit();
        auto c = couple_unknown(q.state(), pair.state, p);
        EXPECT_NEAR(fidelity(c.state, ghz3(q)), 1, 1e-14);
    }
    auto zero = couple_unknown(StateVector::basis(1, 0), pair.state, p);
    EXPECT_NEAR(std::abs(zero.state[0]), 1, 1e-15);
}

TEST(BellEvolution, EffectiveQuarterTurnMatchesBranchForm) {
    // (1/sqrt 2) [|00>(alpha|0> + i beta|1>) + i|11>(alpha|0> - i beta|1>)] on (q0 q1)(q2).
    Gen gen(3);
    auto p = effective_params();
    for (int trial = 0; trial < 10; trial++) {
        auto q = gen.qubit();
        auto out = bell_evolution(ghz3(q), p, p.t_wait());
        Amplitudes expect = Amplitudes::Zero(8);
        expect[0b000] = kS * q.alpha;
        expect[0b100] = kS * kI * q.beta;
        expect[0b011] = kS * kI * q.alpha;
        expect[0b111] = kS * kI * (-kI) * q.beta;
        EXPECT_LT((out.amplitudes() - expect).norm(), 1e-12);
    }
}

TEST(BellEvolution, ZeroTimeIsIdentity) {
    Gen gen(4);
    auto s = gen.state(3);
    ProtocolParams full;
    EXPECT_LT((bell_evolution(s, full, 0).amplitudes() - s.amplitudes()).norm(), 1e-12);
    EXPECT_LT((bell_evolution(s, effective_params(), 0).amplitudes() - s.amplitudes()).norm(), 1e-15);
}

TEST(BellEvolution, RejectsBobCouplings) {
    ProtocolParams p;
    auto g = bell_graph(p, 3);
    g.add_tunneling(QubitId(2), Schedule::constant(1));
    EXPECT_THROW(bell_evolution(StateVector::basis(3, 0), g, 1), PreconditionError);
    auto h = bell_graph(p, 3);
    h.add_disagreement_links(QubitId(1), QubitId(2), Schedule::constant(1));
    EXPECT_THROW(bell_evolution(StateVector::basis(3, 0), h, 1), PreconditionError);
    EXPECT_THROW(bell_evolution(StateVector::basis(2, 0), p, 1), PreconditionError);
}

TEST(BellEvolution, FullDynamicsOscillatesAtEffectiveRate) {
    for (double u : {20.0, 50.0}) {
        ProtocolParams p;
        p.U_max = u;
        double omega = effective_rabi(1, u);
        std::vector<double> t, pop;
        const int n = 400;
        double span = 2 * std::numbers::pi / omega;
        for (int k = 0; k < n; k++) {
            t.push_back(span * k / (n - 1));
            auto s = bell_evolution(StateVector::basis(3, 0), p, t.back());
            pop.push_back(std::norm(s[0b011]) + std::norm(s[0b111]));
        }
        auto fit = fit_oscillation(t, pop);
        double tolerance = u == 20 ? 0.05 : 0.01;
        EXPECT_LT(std::abs(fit.rabi_rate() - omega) / omega, tolerance) << "U=" << u;
        // Exact two-level rate of the aligned block: (sqrt(U^2 + 16 w^2) - U) / 4.
        EXPECT_NEAR(fit.rabi_rate(), (std::sqrt(u * u + 16) - u) / 4, 2e-3 * omega);
    }
}

TEST(AliceMeasure, EffectiveBranchesBothRestoreInput) {
    Gen gen(5);
    auto p = effective_params();
    for (int trial = 0; trial < 50; trial++) {
        auto q = gen.qubit();
        auto r = alice_measure_and_correct(bell_evolution(ghz3(q), p, p.t_wait()), q, p);
        ASSERT_TRUE(r.branches[0] && r.branches[1]);
        EXPECT_NEAR(r.branches[0]->fidelity, 1, 1e-10);
        EXPECT_NEAR(r.branches[1]->fidelity, 1, 1e-10);
        EXPECT_NEAR(r.p0, 0.5, 1e-10);
        EXPECT_NEAR(fidelity(r.bob_state_corrected, q.state()), 1, 1e-10);
        // Before correction Bob holds alpha|0> -/+ ... i beta|1>.
        Amplitudes raw0(2);
        raw0 << q.alpha, kI * q.beta;
        EXPECT_NEAR(fidelity(r.branches[0]->bob_raw, StateVector(raw0)), 1, 1e-10);
    }
}

TEST(AliceMeasure, GroundInputLeavesBobInZero) {
    auto p = effective_params();
    InputQubit q{1, 0};
    auto r = alice_measure_and_correct(bell_evolution(ghz3(q), p, p.t_wait()), q, p);
    for (const auto &b : r.branches) {
        ASSERT_TRUE(b);
        EXPECT_NEAR(std::abs(b->bob_corrected[0]), 1, 1e-12);
    }
}

TEST(AliceMeasure, SampledOutcomeFollowsSeed) {
    auto p = effective_params();
    InputQubit q = InputQubit::from_polar(0.6, 0.3);
    StateVector s = bell_evolution(ghz3(q), p, p.t_wait());
    int ones = 0;
    for (std::uint64_t seed = 0; seed < 200; seed++) {
        p.seed = seed;
        auto a = alice_measure_and_correct(s, q, p);
        auto b = alice_measure_and_correct(s, q, p);
        EXPECT_EQ(a.outcome, b.outcome);
        ones += a.outcome;
    }
    EXPECT_GT(ones, 60);
    EXPECT_LT(ones, 140);
}

TEST(MeasurementSymmetry, EqualBranchesForEveryInput) {
    Gen gen(6);
    TeleportChannel channel(effective_params());
    for (int trial = 0; trial < 100; trial++) {
        auto r = channel.teleport_state(gen.qubit());
        EXPECT_NEAR(r.p0, 0.5, 1e-10);
        EXPECT_NEAR(r.p1, 0.5, 1e-10);
    }
}

TEST(Teleport, EffectiveModeIsExact) {
    Gen gen(7);
    auto p = effective_params();
    for (int trial = 0; trial < 20; trial++) {
        auto r = teleport_end_to_end(gen.qubit(), p);
        EXPECT_NEAR(r.fidelity_to_input, 1, 1e-10);
        EXPECT_NEAR(r.expected_fidelity, 1, 1e-10);
        ASSERT_EQ(r.step_log.size(), 5u);
        for (const auto &s : r.step_log) {
            EXPECT_NEAR(s.norm, 1, 1e-9);
        }
    }
    auto one = teleport_end_to_end(InputQubit{0, 1}, p);
    EXPECT_NEAR(std::abs(one.bob_state_corrected[1]), 1, 1e-12);
    EXPECT_NEAR(one.fidelity_to_input, 1, 1e-12);
}

TEST(TeleportProperty, ChannelIsLinearInTheInput) {
    Gen gen(8);
    ProtocolParams p;
    p.U_max = 20;
    TeleportChannel channel(p);
    auto pair = make_entangled_pair(p);
    for (int trial = 0; trial < 3; trial++) {
        auto q = gen.qubit();
        auto direct = couple_unknown(q.state(), pair.state, p);
        auto after = bell_evolution(direct.state, p, p.t_wait());
        auto r_direct = alice_measure_and_correct(after, q, p);
        auto r_channel = channel.teleport_state(q);
        EXPECT_NEAR(r_direct.expected_fidelity, r_channel.expected_fidelity, 1e-10);
        EXPECT_NEAR(r_direct.p0, r_channel.p0, 1e-10);
    }
}

TEST(BellDecomposition, PaulisPerBranch) {
    Gen gen(9);
    for (int trial = 0; trial < 100; trial++) {
        auto d = bell_decomposition_check(gen.qubit());
        EXPECT_TRUE(d.ok());
        const Pauli expected[] = {Pauli::x, Pauli::y, Pauli::identity, Pauli::z};
        for (std::size_t k = 0; k < 4; k++) {
            EXPECT_NEAR(d.branches[k].probability, 0.25, 1e-12);
            ASSERT_TRUE(d.branches[k].correction);
            EXPECT_EQ(*d.branches[k].correction, expected[k]) << to_string(d.branches[k].bell);
            EXPECT_EQ(d.branches[k].valid_corrections.size(), 1u);
        }
    }
    EXPECT_EQ(bell_decomposition_check(InputQubit{1, 0}).branches[0].valid_corrections.size(), 2u);
    EXPECT_EQ(to_string(bell_decomposition_check(InputQubit{1, 0}).branches[3].bell), "psi-");
}

// One full-mode channel at the reference point U = U' = 100 w, T = 200 / w.
class FullChannel : public ::testing::Test {
   protected:
    static void SetUpTestSuite() {
        channel_ = std::make_unique<TeleportChannel>(ProtocolParams{});
    }
    static void TearDownTestSuite() {
        channel_.reset();
    }
    static std::unique_ptr<TeleportChannel> channel_;
};
std::unique_ptr<TeleportChannel> FullChannel::channel_;

TEST_F(FullChannel, PairIsNearBellAndNearExactGroundState) {
    ProtocolParams p;
    StateVector bell(Amplitudes((Amplitudes(4) << kS, 0, 0, kS).finished()));
    EXPECT_GE(fidelity(channel_->support(), bell), 0.99);
    EXPECT_GE(fidelity(channel_->support(), entangled_pair_reference(100, 1)), 0.999);
}

TEST_F(FullChannel, TeleportsRandomInputs) {
    Gen gen(10);
    double mean = 0;
    for (int trial = 0; trial < 20; trial++) {
        auto r = channel_->teleport(gen.qubit());
        mean += r.fidelity_to_input / 20;
        EXPECT_GE(r.step_log[2].reference_fidelity, 0.98);
        for (const auto &s : r.step_log) {
            EXPECT_NEAR(s.norm, 1, 1e-9);
        }
    }
    EXPECT_GE(mean, 0.98);
}

TEST(TeleportProperty, AccuracyImprovesWithU) {
    Gen gen(11);
    std::vector<InputQubit> inputs;
    for (int k = 0; k < 4; k++) {
        inputs.push_back(gen.qubit());
    }
    std::vector<double> infidelity;
    for (double u : {20.0, 50.0, 200.0}) {
        ProtocolParams p;
        p.U_max = u;
        TeleportChannel channel(p);
        double loss = 0;
        for (const auto &q : inputs) {
            loss += 1 - channel.teleport_state(q).expected_fidelity;
        }
        infidelity.push_back(loss);
    }
    EXPECT_GE(infidelity[0], infidelity[1]);
    EXPECT_GE(infidelity[1], infidelity[2]);
}

}  // namespace
}  // namespace dqd
