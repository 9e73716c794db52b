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

#ifndef DQD_SCHEDULE_H
#define DQD_SCHEDULE_H

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace dqd {

enum class ScheduleKind {
    constant,
    linear_ramp,
    /// v_start + (v_end - v_start) * s(x), s(x) = 3x^2 - 2x^3.
    smooth_ramp,
    /// v_start before t_start, v_end from t_start on (right-continuous).
    sudden_step,
    /// v_start + knee * tan(atan((v_end - v_start) / knee) * s(x)), s as for smooth_ramp.
    /// Spends most of the ramp where |value - v_start| is of order `knee`, so a ramp whose
    /// bottleneck gap is ~2*knee near the start stays adiabatic at modest durations.
    gap_adapted_ramp,
};

std::string_view to_string(ScheduleKind kind);
/// Throws std::invalid_argument for unknown names.
ScheduleKind schedule_kind_from_string(std::string_view name);

/// A scalar control (tunneling amplitude or Coulomb strength) as a function of time.
/// Energies are in units of a reference tunneling w and times in units of 1/w (hbar = 1).
struct Schedule {
    ScheduleKind kind = ScheduleKind::constant;
    double v_start = 0;
    double v_end = 0;
    double t_start = 0;
    double t_end = 0;
    /// Only used by gap_adapted_ramp.
    double knee = 0;

    static Schedule constant(double v);
    static Schedule linear_ramp(double v_start, double v_end, double t_start, double t_end);
    static Schedule smooth_ramp(double v_start, double v_end, double t_start, double t_end);
    static Schedule sudden_step(double v_before, double v_after, double t_switch);
    static Schedule gap_adapted_ramp(double v_start, double v_end, double t_start, double t_end, double knee);

    double value(double t) const;

    /// Time of the jump for sudden steps (and for zero-length ramps that change value).
    std::optional<double> discontinuity() const;

    /// Upper bound on |d value / dt| away from discontinuities.
    double slope_bound() const;

    /// Largest |value(t)| over all t.
    double max_abs_value() const;

    /// Empty when the schedule is well formed.
    std::vector<std::string> problems() const;

    friend bool operator==(const Schedule &, const Schedule &) = default;
};

inline double schedule_value(const Schedule &s, double t) {
    return s.value(t);
}

}  // namespace dqd

#endif
