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

#include "cli.h"

#include <CLI11.hpp>
#include <Eigen/Core>
#include <algorithm>
#include <atomic>
#include <boost/version.hpp>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <exception>
#include <fstream>
#include <functional>
#include <map>
#include <mutex>
#include <numeric>
#include <ostream>
#include <sstream>
#include <thread>

#include "dqd/metrics.h"

#ifndef DQD_VERSION
#define DQD_VERSION "0.0.0"
#endif

namespace dqd::cli {

using nlohmann::json;

namespace {

constexpr Experiment kExperiments[] = {Experiment::encode,   Experiment::entangle, Experiment::couple, Experiment::bell,
                                       Experiment::teleport, Experiment::chain,    Experiment::sweep};

std::string join(const std::vector<std::string> &parts, std::string_view sep) {
    std::string out;
    for (std::size_t i = 0; i < parts.size(); i++) {
        out += (i ? std::string(sep) : "") + parts[i];
    }
    return out;
}

std::string format_double(double v) {
    if (std::isnan(v)) {
        return "nan";
    }
    if (std::isinf(v)) {
        return v > 0 ? "inf" : "-inf";
    }
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12g", v == 0 ? 0.0 : v);
    return buf;
}

double *axis_field(ProtocolParams &p, RunConfig &c, const std::string &axis) {
    if (axis == "w") return &p.w;
    if (axis == "phi") return &p.phi;
    if (axis == "U_max") return &p.U_max;
    if (axis == "wait_angle") return &p.wait_angle;
    auto optional_field = [](std::optional<double> &o) {
        if (!o) {
            o = 0.0;
        }
        return &*o;
    };
    if (axis == "Uprime_max") return optional_field(p.Uprime_max);
    if (axis == "T_ent") return optional_field(p.T_ent);
    if (axis == "T_couple") return optional_field(p.T_couple);
    if (axis == "bell_U") return optional_field(p.bell_U);
    if (axis == "dt") return optional_field(c.dt);
    return nullptr;
}

// The single-experiment config of one sweep point.
RunConfig point_config(const RunConfig &config, double value) {
    RunConfig c = config;
    c.experiment = config.sweep->experiment;
    c.sweep.reset();
    if (config.sweep->axis == "seed") {
        c.seed = static_cast<std::uint64_t>(value);
    } else {
        *axis_field(c.params, c, config.sweep->axis) = value;
    }
    return c;
}

json optional_json(const std::optional<double> &o) {
    return o ? json(*o) : json(nullptr);
}

using Row = std::vector<std::pair<std::string, Cell>>;

Row param_cells(const RunConfig &c) {
    ProtocolParams p = c.resolved_params();
    auto cfg = *p.integrator;
    return {
        {"experiment", std::string(to_string(c.experiment))},
        {"mode", std::string(to_string(p.mode))},
        {"w", p.w},
        {"phi", p.phi},
        {"U_max", p.U_max},
        {"Uprime_max", p.uprime_max()},
        {"T_ent", p.t_ent()},
        {"T_couple", p.t_couple()},
        {"bell_U", p.bell_u()},
        {"wait_angle", p.wait_angle},
        {"entangle_ramp", std::string(to_string(p.entangle_ramp))},
        {"couple_ramp", std::string(to_string(p.couple_ramp))},
        {"dt", cfg.dt},
        {"richardson", static_cast<std::int64_t>(cfg.richardson_check)},
        {"seed", static_cast<std::int64_t>(p.seed)},
        {"alpha_abs", c.alpha_abs},
        {"beta_phase", c.beta_phase},
        {"n_support", static_cast<std::int64_t>(c.n_support)},
        {"coupling", std::string(to_string(c.coupling))},
        {"T_chain", c.chain_spec().t_chain()},
    };
}

void append_teleport(Row &row, const TeleportResult &r) {
    row.emplace_back("outcome", static_cast<std::int64_t>(r.outcome));
    row.emplace_back("p0", r.p0);
    row.emplace_back("p1", r.p1);
    row.emplace_back("fidelity", r.fidelity_to_input);
    row.emplace_back("expected_fidelity", r.expected_fidelity);
    row.emplace_back("infidelity", 1 - r.expected_fidelity);
    row.emplace_back("bob_qubit_fidelity", r.bob_qubit_fidelity);
}

double stage_fidelity(const TeleportResult &r, std::string_view stage) {
    for (const auto &s : r.step_log) {
        if (s.stage == stage) {
            return s.reference_fidelity;
        }
    }
    return std::nan("");
}

Row run_single(const RunConfig &c) {
    ProtocolParams p = c.resolved_params();
    InputQubit target = InputQubit::from_polar(c.alpha_abs, c.beta_phase);
    Row row = param_cells(c);
    switch (c.experiment) {
        case Experiment::encode: {
            auto e = encode_qubit(target, p.w, p.phi);
            row.emplace_back("t_bar", e.t_bar);
            row.emplace_back("alpha_re", e.achieved.alpha.real());
            row.emplace_back("alpha_im", e.achieved.alpha.imag());
            row.emplace_back("beta_re", e.achieved.beta.real());
            row.emplace_back("beta_im", e.achieved.beta.imag());
            row.emplace_back("target_fidelity", fidelity(e.state, target.state()));
            break;
        }
        case Experiment::entangle: {
            auto r = make_entangled_pair(p);
            row.emplace_back("bell_overlap", r.bell_overlap);
            row.emplace_back("reference_overlap", r.reference_overlap);
            row.emplace_back("ground_overlap", r.diagnostics.final_ground_overlap);
            row.emplace_back("min_gap", r.diagnostics.min_gap);
            row.emplace_back("concurrence", concurrence(DensityMatrix::pure(r.state)));
            row.emplace_back("norm", r.state.amplitudes().norm());
            break;
        }
        case Experiment::couple: {
            auto pair = make_entangled_pair(p);
            auto r = couple_unknown(encode_qubit(target, p.w, p.phi).state, pair.state, p);
            row.emplace_back("ghz_overlap", r.ghz_overlap);
            row.emplace_back("min_gap", r.diagnostics.min_gap);
            row.emplace_back("norm", r.state.amplitudes().norm());
            break;
        }
        case Experiment::bell: {
            auto r = TeleportChannel(p).teleport(target);
            row.emplace_back("t_wait", p.t_wait());
            row.emplace_back("p0", r.p0);
            row.emplace_back("p1", r.p1);
            row.emplace_back("bell_reference_fidelity", stage_fidelity(r, "bell"));
            break;
        }
        case Experiment::teleport: {
            append_teleport(row, TeleportChannel(p).teleport(target));
            break;
        }
        case Experiment::chain: {
            ChainSpec spec = c.chain_spec();
            row.emplace_back("ghz_overlap", make_ghz_chain(spec).ghz_overlap);
            append_teleport(row, chain_channel(spec).teleport(target));
            break;
        }
        case Experiment::sweep:
            throw ConfigError({"nested sweep"});
    }
    return row;
}

Table to_table(const std::vector<Row> &rows) {
    Table t;
    if (rows.empty()) {
        return t;
    }
    for (const auto &[name, cell] : rows.front()) {
        t.columns.push_back(name);
    }
    for (const auto &r : rows) {
        std::vector<Cell> cells;
        for (const auto &[name, cell] : r) {
            cells.push_back(cell);
        }
        t.rows.push_back(std::move(cells));
    }
    return t;
}

std::size_t worker_count(std::size_t jobs) {
    std::size_t cap = 0;
    if (const char *env = std::getenv("DQD_SIM_THREADS")) {
        cap = static_cast<std::size_t>(std::strtoul(env, nullptr, 10));
    }
    if (cap == 0) {
        cap = std::max(1u, std::thread::hardware_concurrency());
    }
    return std::clamp<std::size_t>(cap, 1, std::max<std::size_t>(jobs, 1));
}

template <typename T>
void read(const json &j, const char *key, T &out, std::vector<std::string> &errors, const std::string &where) {
    if (!j.contains(key)) {
        return;
    }
    try {
        out = j.at(key).get<T>();
    } catch (const json::exception &) {
        errors.push_back(where + key + ": wrong type");
    }
}

void read_optional(const json &j, const char *key, std::optional<double> &out, std::vector<std::string> &errors,
                   const std::string &where) {
    if (!j.contains(key)) {
        return;
    }
    if (j.at(key).is_null()) {
        out.reset();
        return;
    }
    double v = 0;
    read(j, key, v, errors, where);
    out = v;
}

template <typename F>
void read_enum(const json &j, const char *key, F parse, std::vector<std::string> &errors, const std::string &where) {
    if (!j.contains(key)) {
        return;
    }
    if (!j.at(key).is_string()) {
        errors.push_back(where + key + ": expected a string");
        return;
    }
    try {
        parse(j.at(key).get<std::string>());
    } catch (const std::exception &e) {
        errors.push_back(where + key + ": " + e.what());
    }
}

void check_keys(const json &j, std::initializer_list<std::string_view> allowed, const std::string &where,
                std::vector<std::string> &errors) {
    if (!j.is_object()) {
        errors.push_back(where + ": expected an object");
        return;
    }
    for (const auto &[key, value] : j.items()) {
        if (std::find(allowed.begin(), allowed.end(), key) == allowed.end()) {
            errors.push_back("unknown key " + where + "." + key);
        }
    }
}

std::vector<double> parse_values(const std::string &text) {
    std::vector<double> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        std::size_t used = 0;
        double v = 0;
        try {
            v = std::stod(item, &used);
        } catch (const std::exception &) {
            used = 0;
        }
        if (used == 0 || used != item.size()) {
            throw ConfigError({"--values: cannot parse '" + item + "'"});
        }
        out.push_back(v);
    }
    return out;
}

bool is_config_error(const std::exception &e) {
    return dynamic_cast<const ConfigError *>(&e) || dynamic_cast<const PreconditionError *>(&e) ||
           dynamic_cast<const DeviceError *>(&e) || dynamic_cast<const std::invalid_argument *>(&e);
}

}  // namespace

ConfigError::ConfigError(std::vector<std::string> errors)
    : std::runtime_error("invalid configuration: " + join(errors, "; ")), errors_(std::move(errors)) {}

std::string_view to_string(Experiment e) {
    switch (e) {
        case Experiment::encode:
            return "encode";
        case Experiment::entangle:
            return "entangle";
        case Experiment::couple:
            return "couple";
        case Experiment::bell:
            return "bell";
        case Experiment::teleport:
            return "teleport";
        case Experiment::chain:
            return "chain";
        case Experiment::sweep:
            return "sweep";
    }
    return "?";
}

Experiment experiment_from_string(std::string_view name) {
    for (Experiment e : kExperiments) {
        if (to_string(e) == name) {
            return e;
        }
    }
    throw ConfigError({"unknown experiment '" + std::string(name) + "'"});
}

const std::vector<std::string> &sweep_axes() {
    static const std::vector<std::string> axes = {"w",      "phi",   "U_max",      "Uprime_max", "T_ent", "T_couple",
                                                  "bell_U", "wait_angle", "dt", "seed"};
    return axes;
}

std::string RunConfig::output_stem() const {
    return output.empty() ? std::string(to_string(experiment)) : output;
}

ProtocolParams RunConfig::resolved_params() const {
    ProtocolParams p = params;
    p.seed = seed.value_or(0);
    p.integrator.reset();
    PropagatorConfig cfg = p.propagator();
    if (dt) {
        cfg.dt = *dt;
    }
    cfg.richardson_check = richardson;
    cfg.tolerance = tolerance;
    p.integrator = cfg;
    return p;
}

ChainSpec RunConfig::chain_spec() const {
    ChainSpec spec;
    spec.n_support = n_support;
    spec.params = resolved_params();
    spec.coupling = coupling;
    spec.T_chain = T_chain;
    return spec;
}

json to_json(const RunConfig &c) {
    const ProtocolParams &p = c.params;
    json j;
    j["experiment"] = std::string(to_string(c.experiment));
    j["params"] = {
        {"w", p.w},
        {"phi", p.phi},
        {"U_max", p.U_max},
        {"Uprime_max", optional_json(p.Uprime_max)},
        {"T_ent", optional_json(p.T_ent)},
        {"T_couple", optional_json(p.T_couple)},
        {"bell_U", optional_json(p.bell_U)},
        {"wait_angle", p.wait_angle},
        {"entangle_ramp", std::string(to_string(p.entangle_ramp))},
        {"couple_ramp", std::string(to_string(p.couple_ramp))},
        {"dt", optional_json(c.dt)},
        {"richardson", c.richardson},
        {"tolerance", c.tolerance},
        {"mode", std::string(to_string(p.mode))},
    };
    j["input"] = {{"alpha_abs", c.alpha_abs}, {"beta_phase", c.beta_phase}};
    j["chain"] = {{"n_support", c.n_support},
                  {"coupling", std::string(to_string(c.coupling))},
                  {"T_chain", optional_json(c.T_chain)}};
    if (c.sweep) {
        j["sweep"] = {{"experiment", std::string(to_string(c.sweep->experiment))},
                      {"axis", c.sweep->axis},
                      {"values", c.sweep->values}};
    } else {
        j["sweep"] = nullptr;
    }
    j["output"] = c.output_stem();
    j["seed"] = c.seed ? json(*c.seed) : json(nullptr);
    return j;
}

void merge_json(const json &j, RunConfig &c) {
    std::vector<std::string> errors;
    check_keys(j, {"experiment", "params", "input", "chain", "sweep", "output", "seed"}, "config", errors);
    if (!errors.empty() && !j.is_object()) {
        throw ConfigError(errors);
    }
    read_enum(j, "experiment", [&](const std::string &s) { c.experiment = experiment_from_string(s); }, errors, "");
    if (j.contains("params")) {
        const json &p = j["params"];
        check_keys(p,
                   {"w", "phi", "U_max", "Uprime_max", "T_ent", "T_couple", "bell_U", "wait_angle", "entangle_ramp",
                    "couple_ramp", "dt", "richardson", "tolerance", "mode"},
                   "params", errors);
        if (p.is_object()) {
            const std::string at = "params.";
            read(p, "w", c.params.w, errors, at);
            read(p, "phi", c.params.phi, errors, at);
            read(p, "U_max", c.params.U_max, errors, at);
            read_optional(p, "Uprime_max", c.params.Uprime_max, errors, at);
            read_optional(p, "T_ent", c.params.T_ent, errors, at);
            read_optional(p, "T_couple", c.params.T_couple, errors, at);
            read_optional(p, "bell_U", c.params.bell_U, errors, at);
            read(p, "wait_angle", c.params.wait_angle, errors, at);
            read_enum(p, "entangle_ramp",
                      [&](const std::string &s) { c.params.entangle_ramp = schedule_kind_from_string(s); }, errors, at);
            read_enum(p, "couple_ramp",
                      [&](const std::string &s) { c.params.couple_ramp = schedule_kind_from_string(s); }, errors, at);
            read_optional(p, "dt", c.dt, errors, at);
            read(p, "richardson", c.richardson, errors, at);
            read(p, "tolerance", c.tolerance, errors, at);
            read_enum(p, "mode", [&](const std::string &s) { c.params.mode = mode_from_string(s); }, errors, at);
        }
    }
    if (j.contains("input")) {
        check_keys(j["input"], {"alpha_abs", "beta_phase"}, "input", errors);
        if (j["input"].is_object()) {
            read(j["input"], "alpha_abs", c.alpha_abs, errors, "input.");
            read(j["input"], "beta_phase", c.beta_phase, errors, "input.");
        }
    }
    if (j.contains("chain")) {
        const json &ch = j["chain"];
        check_keys(ch, {"n_support", "coupling", "T_chain"}, "chain", errors);
        if (ch.is_object()) {
            read(ch, "n_support", c.n_support, errors, "chain.");
            read_enum(ch, "coupling", [&](const std::string &s) { c.coupling = chain_coupling_from_string(s); },
                      errors, "chain.");
            read_optional(ch, "T_chain", c.T_chain, errors, "chain.");
        }
    }
    if (j.contains("sweep")) {
        const json &s = j["sweep"];
        if (s.is_null()) {
            c.sweep.reset();
        } else {
            check_keys(s, {"experiment", "axis", "values"}, "sweep", errors);
            if (s.is_object()) {
                SweepSpec spec = c.sweep.value_or(SweepSpec{});
                read_enum(s, "experiment", [&](const std::string &v) { spec.experiment = experiment_from_string(v); },
                          errors, "sweep.");
                read(s, "axis", spec.axis, errors, "sweep.");
                read(s, "values", spec.values, errors, "sweep.");
                c.sweep = spec;
            }
        }
    }
    read(j, "output", c.output, errors, "");
    if (j.contains("seed")) {
        if (j["seed"].is_null()) {
            c.seed.reset();
        } else {
            std::uint64_t seed = 0;
            read(j, "seed", seed, errors, "");
            c.seed = seed;
        }
    }
    if (!errors.empty()) {
        throw ConfigError(errors);
    }
}

Validation validate_config(const RunConfig &c) {
    Validation v;
    auto check_point = [&](const RunConfig &point, const std::string &prefix) {
        ProtocolParams p = point.resolved_params();
        for (const auto &e : p.problems()) {
            v.errors.push_back(prefix + e);
        }
        if (point.experiment == Experiment::chain) {
            for (const auto &e : point.chain_spec().problems()) {
                if (std::find(v.errors.begin(), v.errors.end(), prefix + e) == v.errors.end()) {
                    v.errors.push_back(prefix + e);
                }
            }
            if (point.T_chain && !(*point.T_chain >= 0)) {
                v.errors.push_back(prefix + "T_chain must be non-negative");
            }
        }
        if (p.problems().empty()) {
            for (const auto &w : p.warnings()) {
                v.warnings.push_back(prefix + w);
            }
        }
    };
    if (!(c.alpha_abs >= 0 && c.alpha_abs <= 1)) {
        v.errors.push_back("alpha_abs must lie in [0, 1]");
    }
    if (!std::isfinite(c.beta_phase)) {
        v.errors.push_back("beta_phase must be finite");
    }
    if (c.dt && !(*c.dt > 0 && std::isfinite(*c.dt))) {
        v.errors.push_back("dt must be positive");
    }
    if (!(c.tolerance > 0)) {
        v.errors.push_back("tolerance must be positive");
    }
    if (c.experiment == Experiment::sweep) {
        if (!c.sweep) {
            v.errors.push_back("sweep needs an experiment, an axis and values");
            return v;
        }
        const auto &axes = sweep_axes();
        bool known = std::find(axes.begin(), axes.end(), c.sweep->axis) != axes.end();
        if (!known) {
            v.errors.push_back("unknown sweep axis '" + c.sweep->axis + "' (expected one of " + join(axes, ", ") + ")");
        }
        if (c.sweep->experiment == Experiment::sweep) {
            v.errors.push_back("sweep experiment cannot itself be a sweep");
        }
        if (c.sweep->values.empty()) {
            v.errors.push_back("sweep needs at least one value");
        }
        for (double x : c.sweep->values) {
            if (!std::isfinite(x)) {
                v.errors.push_back("sweep values must be finite");
                break;
            }
            if (c.sweep->axis == "seed" && (x < 0 || x != std::floor(x))) {
                v.errors.push_back("seed values must be non-negative integers");
                break;
            }
        }
        if (known && c.sweep->experiment != Experiment::sweep && v.errors.empty()) {
            for (double x : c.sweep->values) {
                check_point(point_config(c, x), c.sweep->axis + "=" + format_double(x) + ": ");
            }
        }
    } else {
        check_point(c, "");
        if (c.sweep) {
            v.warnings.push_back("sweep settings are ignored unless the experiment is 'sweep'");
        }
    }
    Experiment sampled = c.experiment == Experiment::sweep && c.sweep ? c.sweep->experiment : c.experiment;
    bool samples = sampled == Experiment::bell || sampled == Experiment::teleport || sampled == Experiment::chain;
    if (samples && !c.seed && !(c.sweep && c.sweep->axis == "seed")) {
        v.warnings.push_back("no seed given for a sampled measurement; using seed 0");
    }
    return v;
}

std::string Table::to_csv() const {
    std::string out = join(columns, ",") + "\n";
    for (const auto &row : rows) {
        std::vector<std::string> cells;
        for (const auto &cell : row) {
            if (const auto *s = std::get_if<std::string>(&cell)) {
                cells.push_back(*s);
            } else if (const auto *d = std::get_if<double>(&cell)) {
                cells.push_back(format_double(*d));
            } else {
                cells.push_back(std::to_string(std::get<std::int64_t>(cell)));
            }
        }
        out += join(cells, ",") + "\n";
    }
    return out;
}

const Cell &Table::at(std::size_t row, std::string_view column) const {
    auto it = std::find(columns.begin(), columns.end(), column);
    if (it == columns.end()) {
        throw std::out_of_range("no column " + std::string(column));
    }
    return rows.at(row).at(static_cast<std::size_t>(it - columns.begin()));
}

Table run_experiment(const RunConfig &config) {
    if (config.experiment != Experiment::sweep) {
        return to_table({run_single(config)});
    }
    std::vector<double> values = config.sweep->values;
    std::stable_sort(values.begin(), values.end());

    std::vector<Row> rows(values.size());
    std::vector<std::exception_ptr> failures(values.size());
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i = next++; i < values.size(); i = next++) {
            try {
                rows[i] = run_single(point_config(config, values[i]));
            } catch (...) {
                failures[i] = std::current_exception();
            }
        }
    };
    std::vector<std::thread> pool;
    std::size_t workers = worker_count(values.size());
    for (std::size_t k = 1; k < workers; k++) {
        pool.emplace_back(worker);
    }
    worker();
    for (auto &t : pool) {
        t.join();
    }
    for (const auto &f : failures) {
        if (f) {
            std::rethrow_exception(f);
        }
    }
    for (auto &row : rows) {
        row.insert(row.begin() + 1, {"sweep_axis", config.sweep->axis});
    }
    return to_table(rows);
}

RunConfig parse_args(const std::vector<std::string> &args, std::string *help) {
    CLI::App app{"Charge-qubit teleportation simulator", "dqdsim"};
    std::string experiment, config_path;
    double w = 0, phi = 0, u_max = 0, uprime = 0, t_ent = 0, t_couple = 0, bell_u = 0, wait_angle = 0, dt = 0;
    double tolerance = 0, alpha_abs = 0, beta_phase = 0, t_chain = 0;
    std::uint64_t seed = 0;
    std::size_t n_support = 0;
    std::string mode, entangle_ramp, couple_ramp, coupling, output, sweep_experiment, axis, values;
    bool richardson = false;

    app.add_option("command", experiment, "encode, entangle, couple, bell, teleport, chain or sweep");
    auto *o_config = app.add_option("--config", config_path, "JSON config file; flags override it");
    auto *o_w = app.add_option("--w", w, "tunneling amplitude");
    auto *o_phi = app.add_option("--phi", phi, "Peierls phase of the encoder");
    auto *o_u = app.add_option("--U-max", u_max, "final support Coulomb coupling");
    auto *o_up = app.add_option("--Uprime-max", uprime, "final encoder-support coupling");
    auto *o_te = app.add_option("--T-ent", t_ent, "entangling ramp duration");
    auto *o_tc = app.add_option("--T-couple", t_couple, "coupling ramp duration");
    auto *o_bu = app.add_option("--bell-U", bell_u, "Coulomb coupling of the Bell stage");
    auto *o_wa = app.add_option("--wait-angle", wait_angle, "omega * t_wait of the Bell stage");
    auto *o_er = app.add_option("--entangle-ramp", entangle_ramp, "schedule kind of the entangling ramp");
    auto *o_cr = app.add_option("--couple-ramp", couple_ramp, "schedule kind of the coupling ramp");
    auto *o_dt = app.add_option("--dt", dt, "integrator step");
    auto *o_rich = app.add_flag("--richardson", richardson, "re-run at dt/2 and check agreement");
    auto *o_tol = app.add_option("--tolerance", tolerance, "step-doubling tolerance");
    auto *o_seed = app.add_option("--seed", seed, "measurement seed");
    auto *o_mode = app.add_option("--mode", mode, "full or effective");
    auto *o_aa = app.add_option("--alpha-abs", alpha_abs, "|alpha| of the qubit to teleport");
    auto *o_bp = app.add_option("--beta-phase", beta_phase, "target phase of beta");
    auto *o_ns = app.add_option("--n-support", n_support, "support DQDs of the chain");
    auto *o_cp = app.add_option("--coupling", coupling, "chain coupling: simultaneous or sequential");
    auto *o_tch = app.add_option("--T-chain", t_chain, "chain ramp duration");
    auto *o_out = app.add_option("--output", output, "output stem");
    auto *o_se = app.add_option("--experiment", sweep_experiment, "experiment run at each sweep point");
    auto *o_axis = app.add_option("--axis", axis, "swept ProtocolParams field");
    auto *o_vals = app.add_option("--values", values, "comma-separated axis values");

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp &) {
        if (help) {
            *help = app.help();
        }
        return RunConfig{};
    } catch (const CLI::ParseError &e) {
        throw ConfigError({e.what()});
    }

    RunConfig c;
    if (o_config->count()) {
        std::ifstream in(config_path);
        if (!in) {
            throw ConfigError({"cannot read config file " + config_path});
        }
        json j;
        try {
            j = json::parse(in);
        } catch (const json::exception &e) {
            throw ConfigError({"config file " + config_path + ": " + e.what()});
        }
        merge_json(j, c);
    }

    std::vector<std::string> errors;
    auto enum_flag = [&](CLI::Option *o, const std::function<void()> &apply) {
        if (!o->count()) {
            return;
        }
        try {
            apply();
        } catch (const std::exception &e) {
            errors.push_back(o->get_name() + ": " + e.what());
        }
    };
    if (!experiment.empty()) {
        try {
            c.experiment = experiment_from_string(experiment);
        } catch (const ConfigError &e) {
            errors.insert(errors.end(), e.errors().begin(), e.errors().end());
        }
    }
    if (o_w->count()) c.params.w = w;
    if (o_phi->count()) c.params.phi = phi;
    if (o_u->count()) c.params.U_max = u_max;
    if (o_up->count()) c.params.Uprime_max = uprime;
    if (o_te->count()) c.params.T_ent = t_ent;
    if (o_tc->count()) c.params.T_couple = t_couple;
    if (o_bu->count()) c.params.bell_U = bell_u;
    if (o_wa->count()) c.params.wait_angle = wait_angle;
    enum_flag(o_er, [&] { c.params.entangle_ramp = schedule_kind_from_string(entangle_ramp); });
    enum_flag(o_cr, [&] { c.params.couple_ramp = schedule_kind_from_string(couple_ramp); });
    if (o_dt->count()) c.dt = dt;
    if (o_rich->count()) c.richardson = richardson;
    if (o_tol->count()) c.tolerance = tolerance;
    if (o_seed->count()) c.seed = seed;
    enum_flag(o_mode, [&] { c.params.mode = mode_from_string(mode); });
    if (o_aa->count()) c.alpha_abs = alpha_abs;
    if (o_bp->count()) c.beta_phase = beta_phase;
    if (o_ns->count()) c.n_support = n_support;
    enum_flag(o_cp, [&] { c.coupling = chain_coupling_from_string(coupling); });
    if (o_tch->count()) c.T_chain = t_chain;
    if (o_out->count()) c.output = output;
    if (o_se->count() || o_axis->count() || o_vals->count()) {
        SweepSpec spec = c.sweep.value_or(SweepSpec{});
        enum_flag(o_se, [&] { spec.experiment = experiment_from_string(sweep_experiment); });
        if (o_axis->count()) spec.axis = axis;
        enum_flag(o_vals, [&] { spec.values = parse_values(values); });
        c.sweep = spec;
    }
    if (!errors.empty()) {
        throw ConfigError(errors);
    }
    return c;
}

int main_entry(const std::vector<std::string> &args, std::ostream &out, std::ostream &err) {
    RunConfig config;
    try {
        std::string help;
        config = parse_args(args, &help);
        if (!help.empty()) {
            out << help;
            return kExitOk;
        }
        auto v = validate_config(config);
        for (const auto &w : v.warnings) {
            err << "warning: " << w << "\n";
        }
        if (!v.ok()) {
            for (const auto &e : v.errors) {
                err << "error: " << e << "\n";
            }
            return kExitConfig;
        }
    } catch (const ConfigError &e) {
        for (const auto &msg : e.errors()) {
            err << "error: " << msg << "\n";
        }
        return kExitConfig;
    }

    Table table;
    try {
        table = run_experiment(config);
    } catch (const std::exception &e) {
        err << "error: " << e.what() << "\n";
        return is_config_error(e) ? kExitConfig : kExitNumerical;
    }

    std::string stem = config.output_stem();
    std::string csv_path = stem + ".csv";
    std::string manifest_path = stem + ".manifest.json";
    json manifest;
    manifest["tool"] = "dqdsim";
    manifest["version"] = DQD_VERSION;
    manifest["libraries"] = {
        {"eigen", std::to_string(EIGEN_WORLD_VERSION) + "." + std::to_string(EIGEN_MAJOR_VERSION) + "." +
                      std::to_string(EIGEN_MINOR_VERSION)},
        {"boost", BOOST_LIB_VERSION},
        {"nlohmann_json", std::to_string(NLOHMANN_JSON_VERSION_MAJOR) + "." +
                              std::to_string(NLOHMANN_JSON_VERSION_MINOR) + "." +
                              std::to_string(NLOHMANN_JSON_VERSION_PATCH)},
    };
    manifest["config"] = to_json(config);
    manifest["seed"] = config.seed.value_or(0);
    manifest["seed_source"] = config.seed ? "config" : "default";
    manifest["csv"] = csv_path;
    manifest["rows"] = table.rows.size();
    manifest["columns"] = table.columns;

    std::ofstream csv(csv_path, std::ios::binary);
    std::ofstream man(manifest_path, std::ios::binary);
    if (!csv || !man) {
        err << "error: cannot write " << csv_path << " or " << manifest_path << "\n";
        return kExitConfig;
    }
    csv << table.to_csv();
    man << manifest.dump(2) << "\n";
    out << csv_path << "\n" << manifest_path << "\n";
    return kExitOk;
}

}  // namespace dqd::cli
