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

#include <Eigen/Eigenvalues>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <sstream>
#include <stdexcept>

namespace dqd {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
constexpr Complex kI(0, 1);

void require_valid(const ProtocolParams &p) {
    auto problems = p.problems();
    if (!problems.empty()) {
        std::string msg = "invalid protocol parameters:";
        for (const auto &s : problems) {
            msg += " " + s + ";";
        }
        throw PreconditionError(msg);
    }
}

Schedule ramp(ScheduleKind kind, double v_end, double duration, double knee) {
    switch (kind) {
        case ScheduleKind::constant:
            return Schedule::constant(v_end);
        case ScheduleKind::linear_ramp:
            return Schedule::linear_ramp(0, v_end, 0, duration);
        case ScheduleKind::smooth_ramp:
            return Schedule::smooth_ramp(0, v_end, 0, duration);
        case ScheduleKind::sudden_step:
            return Schedule::sudden_step(0, v_end, 0);
        case ScheduleKind::gap_adapted_ramp:
            return Schedule::gap_adapted_ramp(0, v_end, 0, duration, knee);
    }
    throw std::invalid_argument("unknown schedule kind");
}

// alpha|0..0> + beta|1..1> on n qubits.
StateVector repetition_state(const InputQubit &q, std::size_t n) {
    Amplitudes a = Amplitudes::Zero(static_cast<Eigen::Index>(std::size_t{1} << n));
    a[0] = q.alpha;
    a[a.size() - 1] += q.beta;
    return StateVector::normalized(a);
}

// Density matrix of a block restricted to span{|0..0>, |1..1>}, renormalized.
Matrix code_space_block(const DensityMatrix &rho) {
    Eigen::Index last = rho.matrix().rows() - 1;
    Matrix m(2, 2);
    m << rho.matrix()(0, 0), rho.matrix()(0, last), rho.matrix()(last, 0), rho.matrix()(last, last);
    double tr = m.trace().real();
    if (tr > 1e-300) {
        m /= tr;
    }
    return m;
}

StateVector logical_state(const DensityMatrix &block) {
    Matrix m = code_space_block(block);
    if (block.dim() == 2) {
        m = block.matrix();
    }
    Eigen::SelfAdjointEigenSolver<Matrix> solver(0.5 * (m + m.adjoint()));
    return StateVector::normalized(solver.eigenvectors().col(1)).with_fixed_phase();
}

Matrix bell_block_rotation(double angle) {
    Matrix m = Matrix::Identity(4, 4);
    m(0, 0) = std::cos(angle);
    m(3, 3) = std::cos(angle);
    m(0, 3) = kI * std::sin(angle);
    m(3, 0) = kI * std::sin(angle);
    return m;
}

double min_gap_or_nan(const RampDiagnostics &d) {
    return d.sample_times.empty() ? kNaN : d.min_gap;
}

void check_frozen(const DeviceGraph &g) {
    for (const auto &term : g.tunnel_terms) {
        if (term.dqd.index >= 2 && term.amplitude.max_abs_value() != 0) {
            throw PreconditionError(
                "Bell stage: DQD " + std::to_string(term.dqd.index) + " has tunneling; only qubits 0 and 1 may evolve");
        }
    }
    for (const auto &link : g.coulomb_links) {
        if ((dqd_of(link.dot_i).index >= 2 || dqd_of(link.dot_j).index >= 2) && link.strength.max_abs_value() != 0) {
            throw PreconditionError("Bell stage: a Coulomb link touches a frozen DQD");
        }
    }
}

}  // namespace

InputQubit InputQubit::from_amplitudes(Complex alpha, Complex beta) {
    InputQubit q{alpha, beta};
    auto p = q.problems();
    if (!p.empty()) {
        throw PreconditionError(p.front());
    }
    return q;
}

InputQubit InputQubit::from_polar(double alpha_abs, double beta_phase) {
    if (!(alpha_abs >= 0 && alpha_abs <= 1)) {
        throw PreconditionError("alpha_abs must lie in [0, 1]");
    }
    return InputQubit{Complex(alpha_abs, 0), std::polar(std::sqrt(1 - alpha_abs * alpha_abs), beta_phase)};
}

InputQubit InputQubit::from_state(const StateVector &state) {
    if (state.num_qubits() != 1) {
        throw DimensionError("InputQubit::from_state needs a one-qubit state");
    }
    return InputQubit{state[0], state[1]};
}

StateVector InputQubit::state() const {
    Amplitudes a(2);
    a << alpha, beta;
    return StateVector(a);
}

std::vector<std::string> InputQubit::problems() const {
    double n = std::norm(alpha) + std::norm(beta);
    if (!std::isfinite(n) || std::abs(n - 1) > 1e-12) {
        return {"input qubit is not normalized: |alpha|^2 + |beta|^2 = " + std::to_string(n)};
    }
    return {};
}

std::string_view to_string(Mode mode) {
    return mode == Mode::full ? "full" : "effective";
}

Mode mode_from_string(std::string_view name) {
    if (name == "full") {
        return Mode::full;
    }
    if (name == "effective") {
        return Mode::effective;
    }
    throw std::invalid_argument("unknown mode '" + std::string(name) + "' (expected full or effective)");
}

double ProtocolParams::uprime_max() const {
    return Uprime_max.value_or(U_max);
}

double ProtocolParams::t_ent() const {
    return T_ent.value_or(2 * U_max / (w * w));
}

double ProtocolParams::t_couple() const {
    return T_couple.value_or(2 * uprime_max() / (w * w));
}

double ProtocolParams::bell_u() const {
    return bell_U.value_or(uprime_max());
}

PropagatorConfig ProtocolParams::propagator() const {
    if (integrator) {
        return *integrator;
    }
    return PropagatorConfig::for_energies({w, U_max, uprime_max(), bell_u()});
}

double ProtocolParams::t_wait() const {
    return wait_angle / effective_rabi(w, bell_u());
}

std::vector<std::string> ProtocolParams::problems() const {
    std::vector<std::string> out;
    auto check = [&](const char *name, double v, bool strict) {
        if (!std::isfinite(v) || v < 0 || (strict && v == 0)) {
            out.push_back(std::string(name) + (strict ? " must be positive" : " must be non-negative"));
        }
    };
    check("w", w, true);
    check("U_max", U_max, false);
    check("Uprime_max", uprime_max(), false);
    if (w > 0) {
        check("T_ent", t_ent(), false);
        check("T_couple", t_couple(), false);
    }
    check("bell_U", bell_u(), false);
    if (!std::isfinite(phi)) {
        out.emplace_back("phi must be finite");
    }
    if (!std::isfinite(wait_angle)) {
        out.emplace_back("wait_angle must be finite");
    }
    for (const auto &p : propagator().problems()) {
        out.push_back("integrator: " + p);
    }
    return out;
}

std::vector<std::string> ProtocolParams::warnings() const {
    std::vector<std::string> out;
    if (U_max <= 0 || w / U_max > 0.1) {
        out.emplace_back("w / U_max exceeds 0.1: the entangled pair is far from a Bell state");
    }
    if (uprime_max() > 0 && w / uprime_max() > 0.1) {
        out.emplace_back("w / Uprime_max exceeds 0.1: the coupled state is far from GHZ form");
    }
    return out;
}

DeviceGraph encoder_graph(double w, double phi) {
    DeviceGraph g;
    g.num_dqds = 1;
    g.add_tunneling(QubitId(0), Schedule::constant(w), phi);
    return g;
}

DeviceGraph entangling_graph(const ProtocolParams &p) {
    DeviceGraph g;
    g.num_dqds = 2;
    g.add_tunneling(QubitId(0), Schedule::constant(p.w));
    g.add_tunneling(QubitId(1), Schedule::constant(p.w));
    double knee = support_splitting(2, p.w, p.U_max) / 2;
    g.add_disagreement_links(QubitId(0), QubitId(1), ramp(p.entangle_ramp, p.U_max, p.t_ent(), knee));
    return g;
}

DeviceGraph coupling_graph(const ProtocolParams &p) {
    DeviceGraph g;
    g.num_dqds = 3;
    g.add_tunneling(QubitId(1), Schedule::constant(p.w));
    g.add_tunneling(QubitId(2), Schedule::constant(p.w));
    g.add_disagreement_links(QubitId(1), QubitId(2), Schedule::constant(p.U_max));
    double knee = support_splitting(2, p.w, p.U_max) / 2;
    g.add_disagreement_links(QubitId(0), QubitId(1), ramp(p.couple_ramp, p.uprime_max(), p.t_couple(), knee));
    return g;
}

DeviceGraph bell_graph(const ProtocolParams &p, std::size_t num_qubits) {
    if (num_qubits < 2) {
        throw PreconditionError("bell_graph needs at least two qubits");
    }
    DeviceGraph g;
    g.num_dqds = num_qubits;
    g.add_tunneling(QubitId(0), Schedule::constant(p.w));
    g.add_tunneling(QubitId(1), Schedule::constant(p.w));
    g.add_disagreement_links(QubitId(0), QubitId(1), Schedule::constant(p.bell_u()));
    return g;
}

double support_splitting(std::size_t n_support, double w, double U) {
    if (n_support == 0) {
        throw PreconditionError("support_splitting needs at least one DQD");
    }
    DeviceGraph g;
    g.num_dqds = n_support;
    for (std::size_t k = 0; k < n_support; k++) {
        g.add_tunneling(QubitId(k), Schedule::constant(w));
        if (k + 1 < n_support) {
            g.add_disagreement_links(QubitId(k), QubitId(k + 1), Schedule::constant(U));
        }
    }
    return ground_state(hamiltonian_at(g, 0)).gap;
}

Encoding encode_qubit(const InputQubit &target, double w, double phi) {
    if (!(w > 0)) {
        throw PreconditionError("encode_qubit: w must be positive");
    }
    double a = std::abs(target.alpha);
    if (a > 1 + 1e-12) {
        throw PreconditionError("encode_qubit: |alpha| exceeds 1");
    }
    double t_bar = std::acos(std::min(a, 1.0)) / w;
    StateVector state = evolve_static(StateVector::basis(1, 0), hamiltonian_at(encoder_graph(w, phi), 0), t_bar);
    return Encoding{t_bar, state, InputQubit::from_state(state)};
}

StateVector entangled_pair_reference(double U, double w) {
    if (!(w > 0)) {
        throw PreconditionError("entangled_pair_reference: w must be positive");
    }
    if (!(U >= 0)) {
        throw PreconditionError("entangled_pair_reference: U must be non-negative");
    }
    double r = (std::sqrt(U * U + 16 * w * w) - U) / (4 * w);
    ProtocolParams p;
    p.w = w;
    p.U_max = U;
    auto gs = ground_state(hamiltonian_at(entangling_graph(p), p.t_ent()));
    double sign = (gs.state[1] * std::conj(gs.state[0])).real() < 0 ? -1.0 : 1.0;
    Amplitudes amps(4);
    amps << 1, sign * r, sign * r, 1;
    return StateVector::normalized(amps);
}

PairResult make_entangled_pair(const ProtocolParams &p) {
    require_valid(p);
    StateVector bell = StateVector::normalized((Amplitudes(4) << 1, 0, 0, 1).finished());
    StateVector reference = entangled_pair_reference(p.U_max, p.w);
    if (p.mode == Mode::effective) {
        return PairResult{reference, {}, fidelity(reference, bell), 1.0};
    }
    DeviceGraph g = entangling_graph(p);
    StateVector start = ground_state(hamiltonian_at(g, 0)).state;
    auto r = adiabatic_ramp(start, g, 0, p.t_ent(), p.propagator());
    double bell_overlap = fidelity(r.state, bell);
    double ref_overlap = fidelity(r.state, reference);
    return PairResult{std::move(r.state), std::move(r.diagnostics), bell_overlap, ref_overlap};
}

CoupleResult couple_unknown(const StateVector &unknown, const StateVector &support, const ProtocolParams &p) {
    require_valid(p);
    if (unknown.num_qubits() != 1 || support.num_qubits() != 2) {
        throw DimensionError("couple_unknown expects a one-qubit input and a two-qubit support");
    }
    InputQubit q = InputQubit::from_state(unknown);
    StateVector target = repetition_state(q, 3);
    if (p.mode == Mode::effective) {
        return CoupleResult{target, {}, 1.0};
    }
    auto r = adiabatic_ramp(tensor(unknown, support), coupling_graph(p), 0, p.t_couple(), p.propagator());
    double overlap = fidelity(r.state, target);
    return CoupleResult{std::move(r.state), std::move(r.diagnostics), overlap};
}

double effective_rabi(double w, double U) {
    if (!(U > 0)) {
        throw PreconditionError("effective_rabi requires U > 0");
    }
    return 2 * w * w / U;
}

StateVector bell_evolution(const StateVector &state, const ProtocolParams &p, double t) {
    require_valid(p);
    if (state.num_qubits() < 3) {
        throw PreconditionError("bell_evolution needs the encoder, a support DQD and Bob");
    }
    if (p.mode == Mode::effective) {
        const QubitId targets[] = {QubitId(0), QubitId(1)};
        return apply_local(state, bell_block_rotation(effective_rabi(p.w, p.bell_u()) * t), targets);
    }
    return bell_evolution(state, bell_graph(p, state.num_qubits()), t);
}

StateVector bell_evolution(const StateVector &state, const DeviceGraph &g, double t) {
    if (g.num_dqds != state.num_qubits()) {
        throw DimensionError("bell_evolution: graph and state sizes differ");
    }
    validate_or_throw(g);
    check_frozen(g);
    // Up to 8 qubits the whole register is exponentiated, so the frozen qubits are checked by the
    // dynamics itself; larger registers exponentiate the two active qubits only.
    if (g.num_dqds <= 8) {
        return evolve_static(state, hamiltonian_at(g, 0), t);
    }
    DeviceGraph active = g;
    active.num_dqds = 2;
    const QubitId targets[] = {QubitId(0), QubitId(1)};
    Eigen::SelfAdjointEigenSolver<Matrix> solver(hamiltonian_at(active, 0));
    Eigen::VectorXcd phases(4);
    for (Eigen::Index i = 0; i < 4; i++) {
        phases[i] = std::polar(1.0, -solver.eigenvalues()[i] * t);
    }
    Matrix op = solver.eigenvectors() * phases.asDiagonal() * solver.eigenvectors().adjoint();
    return apply_local(state, op, targets);
}

TeleportResult alice_measure_and_correct(const StateVector &state, const InputQubit &input, const ProtocolParams &p) {
    std::size_t n = state.num_qubits();
    if (n < 3) {
        throw PreconditionError("alice_measure_and_correct needs at least three qubits");
    }
    auto problems = input.problems();
    if (!problems.empty()) {
        throw PreconditionError(problems.front());
    }
    std::vector<QubitId> block;
    for (std::size_t k = 2; k < n; k++) {
        block.emplace_back(k);
    }
    const QubitId bob[] = {QubitId(n - 1)};
    StateVector target_block = repetition_state(input, block.size());
    StateVector target_qubit = input.state();

    auto m = measure_qubit(state, QubitId(0), Sampled{p.seed});
    TeleportResult out;
    out.input = input;
    out.p0 = m.p0;
    out.p1 = m.p1;
    for (int bit = 0; bit < 2; bit++) {
        double prob = m.probability(bit);
        if (prob < kCollapseThreshold) {
            continue;
        }
        const StateVector &collapsed = m.collapsed(bit);
        StateVector corrected = apply_local(collapsed, ops::phase(bit == 0 ? -std::numbers::pi / 2 : std::numbers::pi / 2), bob);
        DensityMatrix raw_block = partial_trace(collapsed, block);
        DensityMatrix block_rho = partial_trace(corrected, block);
        BranchOutcome b;
        b.outcome = bit;
        b.probability = prob;
        b.bob_raw = logical_state(raw_block);
        b.bob_corrected = logical_state(block_rho);
        b.fidelity = fidelity(block_rho, target_block);
        b.bob_qubit_fidelity = fidelity(partial_trace(corrected, bob), target_qubit);
        out.expected_fidelity += prob * b.fidelity;
        out.branches[static_cast<std::size_t>(bit)] = std::move(b);
    }
    out.outcome = *m.outcome;
    const BranchOutcome &chosen = *out.branches[static_cast<std::size_t>(out.outcome)];
    out.bob_state_raw = chosen.bob_raw;
    out.bob_state_corrected = chosen.bob_corrected;
    out.fidelity_to_input = chosen.fidelity;
    out.bob_qubit_fidelity = chosen.bob_qubit_fidelity;
    return out;
}

TeleportChannel::TeleportChannel(const ProtocolParams &p)
    : params_(p), support_min_gap_(kNaN), couple_min_gap_(kNaN) {
    require_valid(p);
    PairResult pair = make_entangled_pair(p);
    support_ = pair.state;
    support_reference_ = entangled_pair_reference(p.U_max, p.w);
    support_min_gap_ = min_gap_or_nan(pair.diagnostics);

    Matrix inputs(8, 2);
    inputs.col(0) = tensor(StateVector::basis(1, 0), support_).amplitudes();
    inputs.col(1) = tensor(StateVector::basis(1, 1), support_).amplitudes();
    if (p.mode == Mode::effective) {
        coupled_ = Matrix::Zero(8, 2);
        coupled_(0, 0) = 1;
        coupled_(7, 1) = 1;
    } else {
        HamiltonianModel model(coupling_graph(p));
        if (p.t_couple() > 0) {
            coupled_ = evolve_scheduled_columns(inputs, model, 0, p.t_couple(), p.propagator());
            // Qubit 0 has no tunneling and the device is symmetric under flipping every qubit,
            // so each level is doubly degenerate; the relevant gap is E2 - E0.
            double gap = std::numeric_limits<double>::infinity();
            for (int k = 0; k <= 64; k++) {
                Eigen::SelfAdjointEigenSolver<Matrix> solver(model.dense(p.t_couple() * k / 64.0),
                                                             Eigen::EigenvaluesOnly);
                gap = std::min(gap, solver.eigenvalues()[2] - solver.eigenvalues()[0]);
            }
            couple_min_gap_ = gap;
        } else {
            coupled_ = inputs;
        }
    }
    after_bell_.resize(8, 2);
    double t = p.t_wait();
    for (int c = 0; c < 2; c++) {
        after_bell_.col(c) = bell_evolution(StateVector(coupled_.col(c)), p, t).amplitudes();
    }
}

TeleportChannel::TeleportChannel(const ProtocolParams &p, StateVector support, StateVector support_reference,
                                 double support_min_gap, Matrix coupled, double couple_min_gap)
    : params_(p),
      support_(std::move(support)),
      support_reference_(std::move(support_reference)),
      support_min_gap_(support_min_gap),
      couple_min_gap_(couple_min_gap),
      coupled_(std::move(coupled)) {
    require_valid(p);
    if (coupled_.cols() != 2 || static_cast<std::size_t>(coupled_.rows()) != 2 * support_.dim()) {
        throw DimensionError("TeleportChannel: coupled columns do not match the support size");
    }
    after_bell_.resize(coupled_.rows(), 2);
    double t = p.t_wait();
    for (int c = 0; c < 2; c++) {
        after_bell_.col(c) = bell_evolution(StateVector(coupled_.col(c)), p, t).amplitudes();
    }
}

TeleportResult TeleportChannel::teleport(const InputQubit &target) const {
    Encoding enc = encode_qubit(target, params_.w, params_.phi);
    Amplitudes closed_form(2);
    double wt = params_.w * enc.t_bar;
    closed_form << std::cos(wt), kI * std::polar(1.0, -params_.phi) * std::sin(wt);
    std::vector<StageRecord> log;
    log.push_back(StageRecord{"encode", fidelity(enc.state, StateVector(closed_form)), enc.state.norm(), kNaN});
    return run(enc.achieved, std::move(log));
}

TeleportResult TeleportChannel::teleport_state(const InputQubit &qubit) const {
    return run(qubit, {});
}

TeleportResult TeleportChannel::run(const InputQubit &qubit, std::vector<StageRecord> log) const {
    auto problems = qubit.problems();
    if (!problems.empty()) {
        throw PreconditionError(problems.front());
    }
    std::size_t n = num_qubits();
    StateVector ghz = repetition_state(qubit, n);

    log.push_back(StageRecord{"entangle", fidelity(support_, support_reference_), support_.norm(), support_min_gap_});

    StateVector coupled(qubit.alpha * coupled_.col(0) + qubit.beta * coupled_.col(1));
    log.push_back(StageRecord{"couple", fidelity(coupled, ghz), coupled.norm(), couple_min_gap_});

    StateVector after(qubit.alpha * after_bell_.col(0) + qubit.beta * after_bell_.col(1));
    ProtocolParams effective = params_;
    effective.mode = Mode::effective;
    StateVector after_reference = bell_evolution(ghz, effective, params_.t_wait());
    log.push_back(StageRecord{"bell", fidelity(after, after_reference), after.norm(), kNaN});

    TeleportResult out = alice_measure_and_correct(after, qubit, params_);
    log.push_back(StageRecord{"measure", out.expected_fidelity, 1.0, kNaN});
    out.step_log = std::move(log);
    return out;
}

TeleportResult teleport_end_to_end(const InputQubit &target, const ProtocolParams &p) {
    return TeleportChannel(p).teleport(target);
}

std::string_view to_string(BellState b) {
    switch (b) {
        case BellState::phi_plus:
            return "phi+";
        case BellState::phi_minus:
            return "phi-";
        case BellState::psi_plus:
            return "psi+";
        case BellState::psi_minus:
            return "psi-";
    }
    return "?";
}

std::string_view to_string(Pauli p) {
    switch (p) {
        case Pauli::identity:
            return "I";
        case Pauli::x:
            return "X";
        case Pauli::y:
            return "Y";
        case Pauli::z:
            return "Z";
    }
    return "?";
}

bool BellDecomposition::ok() const {
    for (const auto &b : branches) {
        if (b.probability > kCollapseThreshold && !b.correction) {
            return false;
        }
    }
    return true;
}

std::string BellDecomposition::report() const {
    std::ostringstream s;
    for (const auto &b : branches) {
        s << to_string(b.bell) << ": p=" << b.probability << " correction=";
        if (b.correction) {
            s << to_string(*b.correction);
        } else {
            s << "none";
        }
        s << " (" << b.valid_corrections.size() << " valid)\n";
    }
    return s.str();
}

BellDecomposition bell_decomposition_check(const InputQubit &input) {
    const double h = 1 / std::sqrt(2.0);
    // (U, A) = (q0, q1), local index u | a << 1.
    std::array<std::pair<BellState, Amplitudes>, 4> bells;
    bells[0] = {BellState::phi_plus, (Amplitudes(4) << h, 0, 0, h).finished()};
    bells[1] = {BellState::phi_minus, (Amplitudes(4) << h, 0, 0, -h).finished()};
    bells[2] = {BellState::psi_plus, (Amplitudes(4) << 0, h, h, 0).finished()};
    // |01>_{UA} - |10>_{UA}: U = 0, A = 1 is local index 2.
    bells[3] = {BellState::psi_minus, (Amplitudes(4) << 0, -h, h, 0).finished()};

    StateVector pair = StateVector::normalized((Amplitudes(4) << 0, 1, 1, 0).finished());
    StateVector psi = tensor(input.state(), pair);
    StateVector target = input.state();
    const std::array<std::pair<Pauli, Matrix>, 4> paulis = {{
        {Pauli::identity, ops::identity2()},
        {Pauli::x, ops::pauli_x()},
        {Pauli::y, ops::pauli_y()},
        {Pauli::z, ops::pauli_z()},
    }};

    BellDecomposition out;
    for (std::size_t k = 0; k < 4; k++) {
        const auto &[which, bell] = bells[k];
        Amplitudes b = Amplitudes::Zero(2);
        for (Eigen::Index i = 0; i < 8; i++) {
            b[i >> 2] += std::conj(bell[i & 3]) * psi[static_cast<std::size_t>(i)];
        }
        BellBranch branch;
        branch.bell = which;
        branch.probability = b.squaredNorm();
        if (branch.probability > kCollapseThreshold) {
            StateVector bob = StateVector::normalized(b);
            for (const auto &[name, op] : paulis) {
                double f = fidelity(StateVector::normalized(op * bob.amplitudes()), target);
                if (f >= 1 - 1e-10) {
                    branch.valid_corrections.push_back(name);
                    if (!branch.correction) {
                        branch.correction = name;
                        branch.fidelity = f;
                    }
                }
            }
        }
        out.branches[k] = std::move(branch);
    }
    return out;
}

}  // namespace dqd
