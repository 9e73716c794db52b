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

#include "dqd/chain.h"

#include <Eigen/Eigenvalues>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace dqd {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
constexpr std::size_t kMaxQubits = 12;
// Spectra along the coupling ramp are sampled only up to this dimension.
constexpr std::size_t kGapSampleDim = 256;

void require_valid(const ChainSpec &spec) {
    auto problems = spec.problems();
    if (!problems.empty()) {
        std::string msg = "invalid chain spec:";
        for (const auto &s : problems) {
            msg += " " + s + ";";
        }
        throw PreconditionError(msg);
    }
}

StateVector ghz(std::size_t n) {
    Amplitudes a = Amplitudes::Zero(static_cast<Eigen::Index>(std::size_t{1} << n));
    a[0] = 1;
    a[a.size() - 1] = 1;
    return StateVector::normalized(a);
}

void add_support(DeviceGraph &g, std::size_t first, std::size_t n, double w, const Schedule &link) {
    for (std::size_t k = first; k < first + n; k++) {
        g.add_tunneling(QubitId(k), Schedule::constant(w));
        if (k + 1 < first + n) {
            g.add_disagreement_links(QubitId(k), QubitId(k + 1), link);
        }
    }
}

}  // namespace

std::string_view to_string(ChainCoupling c) {
    return c == ChainCoupling::simultaneous ? "simultaneous" : "sequential";
}

ChainCoupling chain_coupling_from_string(std::string_view name) {
    if (name == "simultaneous") {
        return ChainCoupling::simultaneous;
    }
    if (name == "sequential") {
        return ChainCoupling::sequential;
    }
    throw std::invalid_argument("unknown chain coupling '" + std::string(name) + "'");
}

double ChainSpec::t_chain() const {
    return T_chain.value_or(3 * params.U_max / (params.w * params.w));
}

std::vector<std::string> ChainSpec::problems() const {
    std::vector<std::string> out = params.problems();
    if (n_support < 2) {
        out.emplace_back("n_support must be at least 2");
    }
    if (n_support + 1 > kMaxQubits) {
        out.push_back(
            "n_support + 1 = " + std::to_string(n_support + 1) + " qubits exceeds the dense budget of " +
            std::to_string(kMaxQubits));
    }
    if (params.w > 0 && !(t_chain() >= 0 && std::isfinite(t_chain()))) {
        out.emplace_back("T_chain must be non-negative");
    }
    return out;
}

DeviceGraph ghz_chain_graph(const ChainSpec &spec) {
    DeviceGraph g;
    g.num_dqds = spec.n_support;
    add_support(g, 0, spec.n_support, spec.params.w,
                Schedule::smooth_ramp(0, spec.params.U_max, 0, spec.t_chain()));
    return g;
}

DeviceGraph chain_coupling_graph(const ChainSpec &spec) {
    const ProtocolParams &p = spec.params;
    DeviceGraph g;
    g.num_dqds = spec.n_support + 1;
    if (spec.coupling == ChainCoupling::simultaneous) {
        add_support(g, 1, spec.n_support, p.w, Schedule::smooth_ramp(0, p.U_max, 0, spec.t_chain()));
        g.add_disagreement_links(QubitId(0), QubitId(1), Schedule::smooth_ramp(0, p.uprime_max(), 0, spec.t_chain()));
        return g;
    }
    add_support(g, 1, spec.n_support, p.w, Schedule::constant(p.U_max));
    double knee = support_splitting(spec.n_support, p.w, p.U_max) / 2;
    Schedule link = p.couple_ramp == ScheduleKind::gap_adapted_ramp
                        ? Schedule::gap_adapted_ramp(0, p.uprime_max(), 0, p.t_couple(), knee)
                        : Schedule::smooth_ramp(0, p.uprime_max(), 0, p.t_couple());
    g.add_disagreement_links(QubitId(0), QubitId(1), link);
    return g;
}

GhzResult make_ghz_chain(const ChainSpec &spec) {
    require_valid(spec);
    StateVector target = ghz(spec.n_support);
    if (spec.params.mode == Mode::effective) {
        return GhzResult{target, {}, 1.0};
    }
    DeviceGraph g = ghz_chain_graph(spec);
    StateVector start = ground_state(hamiltonian_at(g, 0)).state;
    auto r = adiabatic_ramp(start, g, 0, spec.t_chain(), spec.params.propagator());
    double overlap = fidelity(r.state, target);
    return GhzResult{std::move(r.state), std::move(r.diagnostics), overlap};
}

TeleportChannel chain_channel(const ChainSpec &spec) {
    require_valid(spec);
    const ProtocolParams &p = spec.params;
    std::size_t n = spec.n_support + 1;
    auto dim = static_cast<Eigen::Index>(std::size_t{1} << n);

    if (p.mode == Mode::effective) {
        StateVector support = ghz(spec.n_support);
        Matrix coupled = Matrix::Zero(dim, 2);
        coupled(0, 0) = 1;
        coupled(dim - 1, 1) = 1;
        return TeleportChannel(p, support, support, kNaN, std::move(coupled), kNaN);
    }

    StateVector support;
    StateVector reference = ghz(spec.n_support);
    double support_gap = kNaN;
    double duration = 0;
    if (spec.coupling == ChainCoupling::simultaneous) {
        DeviceGraph g = ghz_chain_graph(spec);
        support = ground_state(hamiltonian_at(g, 0)).state;
        reference = support;
        duration = spec.t_chain();
    } else {
        auto chain = make_ghz_chain(spec);
        support = chain.state;
        support_gap = chain.diagnostics.min_gap;
        duration = p.t_couple();
    }

    Matrix inputs(dim, 2);
    inputs.col(0) = tensor(StateVector::basis(1, 0), support).amplitudes();
    inputs.col(1) = tensor(StateVector::basis(1, 1), support).amplitudes();
    HamiltonianModel model(chain_coupling_graph(spec));
    Matrix coupled = duration > 0 ? evolve_scheduled_columns(inputs, model, 0, duration, p.propagator()) : inputs;

    double couple_gap = kNaN;
    if (duration > 0 && model.dim() <= kGapSampleDim) {
        // Levels come in degenerate pairs (the encoder has no tunneling and the device is
        // symmetric under flipping every qubit); the gap that matters is E2 - E0.
        couple_gap = std::numeric_limits<double>::infinity();
        for (int k = 0; k <= 64; k++) {
            Eigen::SelfAdjointEigenSolver<Matrix> solver(model.dense(duration * k / 64.0), Eigen::EigenvaluesOnly);
            couple_gap = std::min(couple_gap, solver.eigenvalues()[2] - solver.eigenvalues()[0]);
        }
    }
    return TeleportChannel(p, std::move(support), std::move(reference), support_gap, std::move(coupled), couple_gap);
}

TeleportResult teleport_over_chain(const InputQubit &input, const ChainSpec &spec) {
    return chain_channel(spec).teleport(input);
}

}  // namespace dqd
