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

#include "dqd/device_io.h"

namespace dqd {

void to_json(nlohmann::json &j, const Schedule &s) {
    j = nlohmann::json{
        {"kind", std::string(to_string(s.kind))},
        {"v_start", s.v_start},
        {"v_end", s.v_end},
        {"t_start", s.t_start},
        {"t_end", s.t_end},
    };
    if (s.kind == ScheduleKind::gap_adapted_ramp) {
        j["knee"] = s.knee;
    }
}

void from_json(const nlohmann::json &j, Schedule &s) {
    s.kind = schedule_kind_from_string(j.at("kind").get<std::string>());
    s.v_start = j.at("v_start").get<double>();
    s.v_end = j.value("v_end", s.v_start);
    s.t_start = j.value("t_start", 0.0);
    s.t_end = j.value("t_end", s.t_start);
    s.knee = j.value("knee", 0.0);
}

void to_json(nlohmann::json &j, const DeviceGraph &g) {
    auto dqds = nlohmann::json::array();
    for (std::size_t k = 0; k < g.num_dqds; k++) {
        QubitId q(k);
        dqds.push_back({{"index", k}, {"dots", {odd_dot(q).label, even_dot(q).label}}});
    }
    auto terms = nlohmann::json::array();
    for (const auto &t : g.tunnel_terms) {
        terms.push_back({{"dqd", t.dqd.index}, {"amplitude", t.amplitude}, {"phase", t.phase}, {"epsilon", t.epsilon}});
    }
    auto links = nlohmann::json::array();
    for (const auto &l : g.coulomb_links) {
        links.push_back({{"dots", {l.dot_i.label, l.dot_j.label}}, {"strength", l.strength}});
    }
    j = nlohmann::json{{"dqds", dqds}, {"tunnel_terms", terms}, {"coulomb_links", links}};
}

void from_json(const nlohmann::json &j, DeviceGraph &g) {
    g = DeviceGraph{};
    std::vector<std::string> problems;
    const auto &dqds = j.at("dqds");
    g.num_dqds = dqds.size();
    for (std::size_t k = 0; k < dqds.size(); k++) {
        auto index = dqds[k].at("index").get<std::size_t>();
        if (index != k) {
            problems.push_back("dqds[" + std::to_string(k) + "] has index " + std::to_string(index));
        }
        if (dqds[k].contains("dots")) {
            auto dots = dqds[k].at("dots").get<std::vector<int>>();
            QubitId q(k);
            if (dots != std::vector<int>{odd_dot(q).label, even_dot(q).label}) {
                problems.push_back("dqds[" + std::to_string(k) + "] must own dots " +
                                   std::to_string(odd_dot(q).label) + " and " + std::to_string(even_dot(q).label));
            }
        }
    }
    if (!problems.empty()) {
        throw DeviceError(std::move(problems));
    }
    for (const auto &t : j.value("tunnel_terms", nlohmann::json::array())) {
        g.add_tunneling(QubitId(t.at("dqd").get<std::size_t>()), t.at("amplitude").get<Schedule>(),
                        t.value("phase", 0.0), t.value("epsilon", 0.0));
    }
    for (const auto &l : j.value("coulomb_links", nlohmann::json::array())) {
        auto dots = l.at("dots").get<std::vector<int>>();
        if (dots.size() != 2) {
            throw DeviceError({"coulomb link must list exactly two dots"});
        }
        g.add_coulomb(DotId(dots[0]), DotId(dots[1]), l.at("strength").get<Schedule>());
    }
}

}  // namespace dqd
