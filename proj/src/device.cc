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

#include <algorithm>
#include <cmath>

namespace dqd {

namespace {

constexpr std::size_t kMaxDqds = 12;

std::string dot_name(DotId d) {
    return "dot " + std::to_string(d.label);
}

}  // namespace

DeviceGraph &DeviceGraph::add_tunneling(QubitId dqd, Schedule amplitude, double phase, double epsilon) {
    tunnel_terms.push_back(TunnelTerm{dqd, std::move(amplitude), phase, epsilon});
    return *this;
}

DeviceGraph &DeviceGraph::add_coulomb(DotId a, DotId b, Schedule strength) {
    coulomb_links.push_back(CoulombLink{a, b, std::move(strength)});
    return *this;
}

DeviceGraph &DeviceGraph::add_disagreement_links(QubitId a, QubitId b, const Schedule &strength) {
    add_coulomb(odd_dot(a), even_dot(b), strength);
    add_coulomb(even_dot(a), odd_dot(b), strength);
    return *this;
}

std::vector<std::string> validate(const DeviceGraph &g) {
    std::vector<std::string> out;
    if (g.num_dqds == 0) {
        out.emplace_back("device has no DQDs");
    }
    if (g.num_dqds > kMaxDqds) {
        out.emplace_back(
            "device has " + std::to_string(g.num_dqds) + " DQDs; dense simulation supports at most " +
            std::to_string(kMaxDqds));
    }

    std::vector<int> tunnel_count(g.num_dqds, 0);
    for (std::size_t i = 0; i < g.tunnel_terms.size(); i++) {
        const auto &term = g.tunnel_terms[i];
        std::string where = "tunnel term " + std::to_string(i);
        if (term.dqd.index >= g.num_dqds) {
            out.push_back(where + " refers to nonexistent DQD " + std::to_string(term.dqd.index));
        } else if (++tunnel_count[term.dqd.index] == 2) {
            out.push_back("DQD " + std::to_string(term.dqd.index) + " has more than one tunnel term");
        }
        for (const auto &p : term.amplitude.problems()) {
            out.push_back(where + ": " + p);
        }
        if (term.amplitude.v_start < 0 || term.amplitude.v_end < 0) {
            out.push_back(where + " has a negative tunneling amplitude");
        }
        if (!std::isfinite(term.phase) || !std::isfinite(term.epsilon)) {
            out.push_back(where + " has a non-finite phase or offset");
        }
    }

    auto dot_exists = [&](DotId d) {
        return d.label >= 1 && static_cast<std::size_t>(d.label) <= 2 * g.num_dqds;
    };
    for (std::size_t i = 0; i < g.coulomb_links.size(); i++) {
        const auto &link = g.coulomb_links[i];
        std::string where = "coulomb link " + std::to_string(i);
        for (DotId d : {link.dot_i, link.dot_j}) {
            if (!dot_exists(d)) {
                out.push_back(where + " refers to nonexistent " + dot_name(d));
            }
        }
        if (dqd_of(link.dot_i) == dqd_of(link.dot_j)) {
            out.push_back(
                where + " joins " + dot_name(link.dot_i) + " and " + dot_name(link.dot_j) + " of the same DQD");
        }
        for (const auto &p : link.strength.problems()) {
            out.push_back(where + ": " + p);
        }
        if (link.strength.v_start < 0 || link.strength.v_end < 0) {
            out.push_back(where + " has a negative strength");
        }
    }
    return out;
}

void validate_or_throw(const DeviceGraph &g) {
    auto problems = validate(g);
    if (!problems.empty()) {
        throw DeviceError(std::move(problems));
    }
}

Matrix CompiledCoulomb::operator_at(double t) const {
    Matrix m = Matrix::Zero(4, 4);
    std::size_t local = static_cast<std::size_t>(levels[0]) | (static_cast<std::size_t>(levels[1]) << 1);
    m(static_cast<Eigen::Index>(local), static_cast<Eigen::Index>(local)) = strength.value(t);
    return m;
}

double CompiledCoulomb::occupancy(std::size_t basis_index) const {
    for (std::size_t k = 0; k < 2; k++) {
        if (static_cast<int>((basis_index >> qubits[k].index) & 1u) != levels[k]) {
            return 0;
        }
    }
    return 1;
}

CompiledCoulomb compile_coulomb(const CoulombLink &link) {
    if (dqd_of(link.dot_i) == dqd_of(link.dot_j)) {
        throw DeviceError({"coulomb link joins " + dot_name(link.dot_i) + " and " + dot_name(link.dot_j) +
                           " of the same DQD"});
    }
    return CompiledCoulomb{
        {dqd_of(link.dot_i), dqd_of(link.dot_j)},
        {occupied_level(link.dot_i), occupied_level(link.dot_j)},
        link.strength};
}

double HamiltonianModel::Snapshot::norm_bound() const {
    double bound = diagonal.size() > 0 ? diagonal.cwiseAbs().maxCoeff() : 0.0;
    for (const auto &h : hop) {
        bound += std::abs(h);
    }
    return bound;
}

HamiltonianModel::HamiltonianModel(DeviceGraph g) : graph_(std::move(g)) {
    validate_or_throw(graph_);
    for (const auto &link : graph_.coulomb_links) {
        links_.push_back(compile_coulomb(link));
        Eigen::VectorXd occ(static_cast<Eigen::Index>(dim()));
        for (std::size_t i = 0; i < dim(); i++) {
            occ[static_cast<Eigen::Index>(i)] = links_.back().occupancy(i);
        }
        occupancy_.push_back(std::move(occ));
    }
}

HamiltonianModel::Snapshot HamiltonianModel::at(double t) const {
    Snapshot s;
    at(t, s);
    return s;
}

void HamiltonianModel::at(double t, Snapshot &s) const {
    double offset = 0;
    s.hop.assign(num_qubits(), Complex(0));
    for (const auto &term : graph_.tunnel_terms) {
        s.hop[term.dqd.index] = -term.amplitude.value(t) * std::polar(1.0, -term.phase);
        offset += term.epsilon;
    }
    s.diagonal.setConstant(static_cast<Eigen::Index>(dim()), offset);
    for (std::size_t l = 0; l < links_.size(); l++) {
        double u = links_[l].strength.value(t);
        if (u != 0) {
            s.diagonal += u * occupancy_[l];
        }
    }
}

Matrix HamiltonianModel::dense(const Snapshot &s) {
    auto d = s.diagonal.size();
    Matrix h = Matrix::Zero(d, d);
    h.diagonal() = s.diagonal.cast<Complex>();
    for (std::size_t k = 0; k < s.hop.size(); k++) {
        if (s.hop[k] == Complex(0)) {
            continue;
        }
        Eigen::Index bit = Eigen::Index{1} << k;
        for (Eigen::Index i = 0; i < d; i++) {
            if (!(i & bit)) {
                h(i | bit, i) += s.hop[k];
                h(i, i | bit) += std::conj(s.hop[k]);
            }
        }
    }
    return h;
}

Matrix HamiltonianModel::dense(double t) const {
    return dense(at(t));
}

void HamiltonianModel::apply(const Snapshot &s, const Matrix &in, Matrix &out) {
    const Eigen::Index d = in.rows();
    out.resize(d, in.cols());
    const double *diag = s.diagonal.data();
    for (Eigen::Index c = 0; c < in.cols(); c++) {
        const Complex *x = in.col(c).data();
        Complex *y = out.col(c).data();
        for (Eigen::Index i = 0; i < d; i++) {
            y[i] = diag[i] * x[i];
        }
        for (std::size_t k = 0; k < s.hop.size(); k++) {
            const Complex up = s.hop[k];
            if (up == Complex(0)) {
                continue;
            }
            const Complex down = std::conj(up);
            const Eigen::Index bit = Eigen::Index{1} << k;
            for (Eigen::Index base = 0; base < d; base += 2 * bit) {
                for (Eigen::Index i = base; i < base + bit; i++) {
                    y[i + bit] += up * x[i];
                    y[i] += down * x[i + bit];
                }
            }
        }
    }
}

std::vector<double> HamiltonianModel::discontinuities() const {
    std::vector<double> out;
    for (const auto &term : graph_.tunnel_terms) {
        if (auto t = term.amplitude.discontinuity()) {
            out.push_back(*t);
        }
    }
    for (const auto &link : graph_.coulomb_links) {
        if (auto t = link.strength.discontinuity()) {
            out.push_back(*t);
        }
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

double HamiltonianModel::slope_bound() const {
    // ||d/dt (-w(t) X_k)|| = |w'(t)|; each link contributes |U'(t)| on a projector.
    double bound = 0;
    for (const auto &term : graph_.tunnel_terms) {
        bound += term.amplitude.slope_bound();
    }
    for (const auto &link : graph_.coulomb_links) {
        bound += link.strength.slope_bound();
    }
    return bound;
}

Matrix hamiltonian_at(const DeviceGraph &g, double t) {
    return HamiltonianModel(g).dense(t);
}

}  // namespace dqd
