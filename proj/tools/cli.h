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

#ifndef DQD_TOOLS_CLI_H
#define DQD_TOOLS_CLI_H

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include <json.hpp>

#include "dqd/chain.h"
#include "dqd/protocol.h"

namespace dqd::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitConfig = 2;
inline constexpr int kExitNumerical = 3;

/// Malformed or invalid run configuration.
class ConfigError : public std::runtime_error {
   public:
    explicit ConfigError(std::vector<std::string> errors);
    const std::vector<std::string> &errors() const {
        return errors_;
    }

   private:
    std::vector<std::string> errors_;
};

enum class Experiment { encode, entangle, couple, bell, teleport, chain, sweep };

std::string_view to_string(Experiment e);
/// Throws ConfigError for unknown names.
Experiment experiment_from_string(std::string_view name);

/// Sweepable ProtocolParams fields.
const std::vector<std::string> &sweep_axes();

struct SweepSpec {
    Experiment experiment = Experiment::teleport;
    std::string axis;
    std::vector<double> values;
};

struct RunConfig {
    Experiment experiment = Experiment::teleport;
    /// Everything but the integrator, which is resolved per point from the fields below.
    ProtocolParams params;
    std::optional<double> dt;
    bool richardson = false;
    double tolerance = 1e-9;
    /// Target |alpha| and phase of beta for the qubit to encode.
    double alpha_abs = 0.6;
    double beta_phase = 0.0;
    std::size_t n_support = 2;
    ChainCoupling coupling = ChainCoupling::simultaneous;
    std::optional<double> T_chain;
    std::optional<SweepSpec> sweep;
    /// Output stem; `<output>.csv` and `<output>.manifest.json`. Defaults to the experiment name.
    std::string output;
    /// Seed of the sampled measurement. Runs without one use 0 and say so in the manifest.
    std::optional<std::uint64_t> seed;

    std::string output_stem() const;
    /// params with seed and integrator filled in.
    ProtocolParams resolved_params() const;
    ChainSpec chain_spec() const;
};

/// Fully resolved config, including defaults, in the config-file schema.
nlohmann::json to_json(const RunConfig &config);
/// Applies the keys present in `j` on top of `config`. Throws ConfigError listing unknown keys and
/// type errors.
void merge_json(const nlohmann::json &j, RunConfig &config);

struct Validation {
    std::vector<std::string> errors;
    std::vector<std::string> warnings;
    bool ok() const {
        return errors.empty();
    }
};

Validation validate_config(const RunConfig &config);

using Cell = std::variant<std::string, double, std::int64_t>;

struct Table {
    std::vector<std::string> columns;
    std::vector<std::vector<Cell>> rows;

    /// Header plus one line per row; floats with 12 significant digits.
    std::string to_csv() const;
    const Cell &at(std::size_t row, std::string_view column) const;
};

/// Runs the experiment (every point of a sweep) and returns the result table. Sweep rows are
/// ordered by axis value. Parallel sweep workers are capped by DQD_SIM_THREADS (0 or unset: one
/// per hardware thread).
Table run_experiment(const RunConfig &config);

/// Parses `args` (without the program name) into a config, reading --config first and letting
/// flags override it. Throws ConfigError. Sets `help` and leaves the config untouched for --help.
RunConfig parse_args(const std::vector<std::string> &args, std::string *help = nullptr);

/// The whole tool: parse, validate, run, write `<stem>.csv` and `<stem>.manifest.json`. Returns an
/// exit code; diagnostics go to `err`.
int main_entry(const std::vector<std::string> &args, std::ostream &out, std::ostream &err);

}  // namespace dqd::cli

#endif
