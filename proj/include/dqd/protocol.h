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

#ifndef DQD_PROTOCOL_H
#define DQD_PROTOCOL_H

#include <array>
#include <cstdint>
#include <numbers>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "dqd/device.h"
#include "dqd/evolve.h"
#include "dqd/hilbert.h"
#include "dqd/schedule.h"

namespace dqd {

/// The qubit to teleport, alpha|0> + beta|1>.
struct InputQubit {
    Complex alpha{1, 0};
    Complex beta{0, 0};

    /// Throws PreconditionError unless |alpha|^2 + |beta|^2 = 1 within 1e-12.
    static InputQubit from_amplitudes(Complex alpha, Complex beta);
    /// alpha = alpha_abs, beta = sqrt(1 - alpha_abs^2) e^{i beta_phase}.
    static InputQubit from_polar(double alpha_abs, double beta_phase);
    static InputQubit from_state(const StateVector &state);

    StateVector state() const;
    std::vector<std::string> problems() const;
};

enum class Mode { full, effective };

std::string_view to_string(Mode mode);
/// Throws std::invalid_argument for unknown names.
Mode mode_from_string(std::string_view name);

/// Every knob of the pipeline. Unset optionals resolve through the accessors below.
struct ProtocolParams {
    double w = 1.0;
    double phi = 0.0;
    double U_max = 100.0;
    /// Defaults to U_max.
    std::optional<double> Uprime_max;
    /// Defaults to 2 U_max / w^2.
    std::optional<double> T_ent;
    /// Defaults to 2 Uprime_max / w^2.
    std::optional<double> T_couple;
    /// The U of the Bell-stage rate 2 w^2 / U. Defaults to Uprime_max.
    std::optional<double> bell_U;
    /// omega * t_wait.
    double wait_angle = std::numbers::pi / 4;
    ScheduleKind entangle_ramp = ScheduleKind::smooth_ramp;
    ScheduleKind couple_ramp = ScheduleKind::gap_adapted_ramp;
    /// Defaults to PropagatorConfig::for_energies over all energies above.
    std::optional<PropagatorConfig> integrator;
    std::uint64_t seed = 0;
    Mode mode = Mode::full;

    double uprime_max() const;
    double t_ent() const;
    double t_couple() const;
    double bell_u() const;
    PropagatorConfig propagator() const;
    /// Bell-stage duration, wait_angle / effective_rabi(w, bell_u()).
    double t_wait() const;

    /// Hard errors.
    std::vector<std::string> problems() const;
    /// Advisories, e.g. w / U_max above 0.1.
    std::vector<std::string> warnings() const;
};

// Device graphs of the individual stages. Qubit 0 is the encoder (unknown) DQD, qubit 1 the
// first support DQD; the last qubit is Bob's.

/// One DQD with tunneling w and Peierls phase phi.
DeviceGraph encoder_graph(double w, double phi);
/// Two DQDs with tunneling w and a ramp of the disagreement links from 0 to U_max over [0, T_ent].
DeviceGraph entangling_graph(const ProtocolParams &p);
/// Three DQDs: encoder without tunneling, support pair with tunneling w and constant U_max links,
/// encoder-support links ramped from 0 to Uprime_max over [0, T_couple].
DeviceGraph coupling_graph(const ProtocolParams &p);
/// `num_qubits` DQDs: tunneling w on qubits 0 and 1 and bell_U links between them; all other
/// qubits frozen.
DeviceGraph bell_graph(const ProtocolParams &p, std::size_t num_qubits = 3);

/// E1 - E0 of an open chain of `n_support` DQDs with tunneling w and disagreement links of
/// strength U between neighbours.
double support_splitting(std::size_t n_support, double w, double U);

struct Encoding {
    double t_bar = 0;
    StateVector state;
    InputQubit achieved;
};

/// Free evolution under the encoder Hamiltonian for t_bar = arccos(|alpha|) / w. Only |alpha| is
/// honoured; the relative phase is fixed by the tunneling term and reported in `achieved`.
Encoding encode_qubit(const InputQubit &target, double w, double phi);

/// Normalized |00> + r |01> + r |10> + |11> with r = (sqrt(U^2 + 16 w^2) - U) / (4 w); the sign of
/// r follows the diagonalized ground state.
StateVector entangled_pair_reference(double U, double w);

struct PairResult {
    StateVector state;
    RampDiagnostics diagnostics;
    double bell_overlap = 0;
    double reference_overlap = 0;
};

PairResult make_entangled_pair(const ProtocolParams &p);

struct CoupleResult {
    StateVector state;
    RampDiagnostics diagnostics;
    /// Overlap with alpha|000> + beta|111>.
    double ghz_overlap = 0;
};

CoupleResult couple_unknown(const StateVector &unknown, const StateVector &support, const ProtocolParams &p);

/// 2 w^2 / U. Throws PreconditionError for U <= 0.
double effective_rabi(double w, double U);

/// Bell stage for time t. Throws PreconditionError if the state has fewer than 3 qubits.
StateVector bell_evolution(const StateVector &state, const ProtocolParams &p, double t);
/// Full-mode Bell stage under an explicit graph. Throws PreconditionError if any qubit other than
/// 0 and 1 carries tunneling or a Coulomb link.
StateVector bell_evolution(const StateVector &state, const DeviceGraph &g, double t);

struct BranchOutcome {
    int outcome = 0;
    double probability = 0;
    StateVector bob_raw;
    StateVector bob_corrected;
    /// Fidelity of Bob's corrected block with alpha|0..0> + beta|1..1>.
    double fidelity = 0;
    /// Fidelity of Bob's own reduced qubit with alpha|0> + beta|1>.
    double bob_qubit_fidelity = 0;
};

struct StageRecord {
    std::string stage;
    /// Fidelity with the effective-mode state of the same stage.
    double reference_fidelity = 0;
    double norm = 1;
    /// Smallest sampled gap for ramp stages, NaN otherwise.
    double min_gap = 0;
};

struct TeleportResult {
    InputQubit input;
    int outcome = 0;
    double p0 = 0;
    double p1 = 0;
    /// Bob's logical state before and after the correction (the dominant state of his block
    /// compressed onto span{|0..0>, |1..1>}).
    StateVector bob_state_raw;
    StateVector bob_state_corrected;
    double fidelity_to_input = 0;
    double bob_qubit_fidelity = 0;
    /// Both branches, indexed by outcome; empty for a branch of vanishing probability.
    std::array<std::optional<BranchOutcome>, 2> branches;
    /// Sum over branches of probability * fidelity.
    double expected_fidelity = 0;
    std::vector<StageRecord> step_log;
};

/// Measures qubit 0 and applies diag(1, -i) (outcome 0) or diag(1, i) (outcome 1) to the last
/// qubit. Qubits 2..n-1 form Bob's block and are scored against `input` in the repetition code
/// alpha|0..0> + beta|1..1>. The reported outcome is drawn with p.seed.
TeleportResult alice_measure_and_correct(const StateVector &state, const InputQubit &input, const ProtocolParams &p);

/// The input-independent part of the pipeline, run once. Every stage after encoding is linear in
/// the input amplitudes, so teleportation of any qubit reuses the evolved images of |0> and |1>.
class TeleportChannel {
   public:
    /// Runs make_entangled_pair and couple_unknown on |0> and |1>.
    explicit TeleportChannel(const ProtocolParams &p);

    /// A channel over an arbitrary support block. `coupled` holds the images of |0> and |1> after
    /// coupling to the support (qubit 0 is the encoder); min gaps may be NaN.
    TeleportChannel(const ProtocolParams &p, StateVector support, StateVector support_reference,
                    double support_min_gap, Matrix coupled, double couple_min_gap);

    const ProtocolParams &params() const {
        return params_;
    }
    const StateVector &support() const {
        return support_;
    }
    std::size_t num_qubits() const {
        return qubit_count_for_dim(static_cast<std::size_t>(coupled_.rows()));
    }

    /// Encode `target`, then teleport the achieved qubit.
    TeleportResult teleport(const InputQubit &target) const;
    /// Teleport `qubit` as given, skipping the encoder.
    TeleportResult teleport_state(const InputQubit &qubit) const;

   private:
    TeleportResult run(const InputQubit &qubit, std::vector<StageRecord> log) const;

    ProtocolParams params_;
    StateVector support_;
    StateVector support_reference_;
    double support_min_gap_;
    double couple_min_gap_;
    /// Columns: coupled images of |0> (x) support and |1> (x) support.
    Matrix coupled_;
    /// Same after the Bell stage.
    Matrix after_bell_;
};

TeleportResult teleport_end_to_end(const InputQubit &target, const ProtocolParams &p);

enum class BellState { phi_plus, phi_minus, psi_plus, psi_minus };
enum class Pauli { identity, x, y, z };

std::string_view to_string(BellState b);
std::string_view to_string(Pauli p);

struct BellBranch {
    BellState bell;
    double probability = 0;
    /// First Pauli (in the order I, X, Y, Z) that restores the input on B; empty if none does.
    std::optional<Pauli> correction;
    /// All Paulis that restore the input; one for generic inputs.
    std::vector<Pauli> valid_corrections;
    double fidelity = 0;
};

struct BellDecomposition {
    std::array<BellBranch, 4> branches;
    bool ok() const;
    std::string report() const;
};

/// Projects (alpha|0> + beta|1>) (x) (|01> + |10>)/sqrt 2 on (U, A) = (q0, q1) onto each Bell
/// state and searches for the Pauli on B = q2 that restores the input up to a global phase.
BellDecomposition bell_decomposition_check(const InputQubit &input);

}  // namespace dqd

#endif
