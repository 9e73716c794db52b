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

#ifndef DQD_CHAIN_H
#define DQD_CHAIN_H

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "dqd/protocol.h"

namespace dqd {

/// How the encoder joins the support chain.
enum class ChainCoupling {
    /// Encoder link and chain links ramp together from the separable state.
    simultaneous,
    /// Build the GHZ chain first, then ramp the encoder link. The GHZ splitting of the support
    /// chain shrinks roughly as (w/U)^(n-1), so this needs very long ramps beyond n_support = 2.
    sequential,
};

std::string_view to_string(ChainCoupling c);
ChainCoupling chain_coupling_from_string(std::string_view name);

struct ChainSpec {
    std::size_t n_support = 2;
    ProtocolParams params;
    ChainCoupling coupling = ChainCoupling::simultaneous;
    /// Duration of the chain ramp. Defaults to 3 U_max / w^2.
    std::optional<double> T_chain;

    double t_chain() const;
    std::vector<std::string> problems() const;
};

/// Support DQDs only: tunneling w on each, chain links ramped 0 -> U_max over [0, T_chain].
DeviceGraph ghz_chain_graph(const ChainSpec &spec);
/// Encoder (qubit 0, no tunneling) plus the support chain, per spec.coupling.
DeviceGraph chain_coupling_graph(const ChainSpec &spec);

struct GhzResult {
    StateVector state;
    RampDiagnostics diagnostics;
    /// Overlap with (|0..0> + |1..1>) / sqrt 2.
    double ghz_overlap = 0;
};

GhzResult make_ghz_chain(const ChainSpec &spec);

/// The chain analogue of TeleportChannel: Bob is the last DQD and the intermediate support DQDs
/// stay untouched, so Bob's block is qubits 2..n_support.
TeleportChannel chain_channel(const ChainSpec &spec);

TeleportResult teleport_over_chain(const InputQubit &input, const ChainSpec &spec);

}  // namespace dqd

#endif
