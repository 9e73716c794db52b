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

#include "dqd/schedule.h"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace dqd {

namespace {

double smoothstep(double x) {
    return x * x * (3.0 - 2.0 * x);
}

}  // namespace

std::string_view to_string(ScheduleKind kind) {
    switch (kind) {
        case ScheduleKind::constant:
            return "constant";
        case ScheduleKind::linear_ramp:
            return "linear_ramp";
        case ScheduleKind::smooth_ramp:
            return "smooth_ramp";
        case ScheduleKind::sudden_step:
            return "sudden_step";
        case ScheduleKind::gap_adapted_ramp:
            return "gap_adapted_ramp";
    }
    return "?";
}

ScheduleKind schedule_kind_from_string(std::string_view name) {
    for (auto k : {ScheduleKind::constant, ScheduleKind::linear_ramp, ScheduleKind::smooth_ramp,
                   ScheduleKind::sudden_step, ScheduleKind::gap_adapted_ramp}) {
        if (to_string(k) == name) {
            return k;
        }
    }
    throw std::invalid_argument("unknown schedule kind '" + std::string(name) + "'");
}

Schedule Schedule::constant(double v) {
    return Schedule{ScheduleKind::constant, v, v, 0, 0, 0};
}

Schedule Schedule::linear_ramp(double v_start, double v_end, double t_start, double t_end) {
    return Schedule{ScheduleKind::linear_ramp, v_start, v_end, t_start, t_end, 0};
}

Schedule Schedule::smooth_ramp(double v_start, double v_end, double t_start, double t_end) {
    return Schedule{ScheduleKind::smooth_ramp, v_start, v_end, t_start, t_end, 0};
}

Schedule Schedule::sudden_step(double v_before, double v_after, double t_switch) {
    return Schedule{ScheduleKind::sudden_step, v_before, v_after, t_switch, t_switch, 0};
}

Schedule Schedule::gap_adapted_ramp(double v_start, double v_end, double t_start, double t_end, double knee) {
    return Schedule{ScheduleKind::gap_adapted_ramp, v_start, v_end, t_start, t_end, knee};
}

double Schedule::value(double t) const {
    switch (kind) {
        case ScheduleKind::constant:
            return v_start;
        case ScheduleKind::sudden_step:
            return t < t_start ? v_start : v_end;
        default:
            break;
    }
    if (t < t_start) {
        return v_start;
    }
    if (t >= t_end) {
        return v_end;
    }
    double x = (t - t_start) / (t_end - t_start);
    double dv = v_end - v_start;
    switch (kind) {
        case ScheduleKind::linear_ramp:
            return v_start + dv * x;
        case ScheduleKind::smooth_ramp:
            return v_start + dv * smoothstep(x);
        case ScheduleKind::gap_adapted_ramp: {
            double theta_max = std::atan(dv / knee);
            return v_start + knee * std::tan(theta_max * smoothstep(x));
        }
        default:
            return v_start;
    }
}

std::optional<double> Schedule::discontinuity() const {
    if (kind == ScheduleKind::constant || v_start == v_end) {
        return std::nullopt;
    }
    if (kind == ScheduleKind::sudden_step || t_start == t_end) {
        return t_start;
    }
    return std::nullopt;
}

double Schedule::slope_bound() const {
    double dv = std::abs(v_end - v_start);
    double span = t_end - t_start;
    if (kind == ScheduleKind::constant || kind == ScheduleKind::sudden_step || dv == 0 || span <= 0) {
        return 0;
    }
    switch (kind) {
        case ScheduleKind::linear_ramp:
            return dv / span;
        case ScheduleKind::smooth_ramp:
            return 1.5 * dv / span;
        case ScheduleKind::gap_adapted_ramp: {
            // d/dt knee*tan(theta_max*s) <= knee*theta_max*max(s')*sec^2(theta_max) / span
            double theta_max = std::atan(dv / knee);
            return knee * theta_max * 1.5 * (1.0 + (dv / knee) * (dv / knee)) / span;
        }
        default:
            return 0;
    }
}

double Schedule::max_abs_value() const {
    return std::max(std::abs(v_start), std::abs(v_end));
}

std::vector<std::string> Schedule::problems() const {
    std::vector<std::string> out;
    if (!std::isfinite(v_start) || !std::isfinite(v_end) || !std::isfinite(t_start) || !std::isfinite(t_end)) {
        out.emplace_back("schedule has non-finite fields");
    }
    if (kind != ScheduleKind::constant && t_start > t_end) {
        out.emplace_back("schedule has t_start > t_end");
    }
    if (kind == ScheduleKind::gap_adapted_ramp && !(knee > 0)) {
        out.emplace_back("gap_adapted_ramp needs knee > 0");
    }
    return out;
}

}  // namespace dqd
