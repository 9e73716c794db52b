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

#ifndef DQD_DEVICE_IO_H
#define DQD_DEVICE_IO_H

#include <json.hpp>

#include "dqd/device.h"

// JSON form of a device graph:
//
//   {
//     "dqds": [{"index": 0, "dots": [1, 2]}, ...],
//     "tunnel_terms": [{"dqd": 0, "amplitude": <schedule>, "phase": 0.0, "epsilon": 0.0}, ...],
//     "coulomb_links": [{"dots": [3, 6], "strength": <schedule>}, ...]
//   }
//
// with <schedule> = {"kind": "smooth_ramp", "v_start": 0, "v_end": 100, "t_start": 0, "t_end": 200}
// ("knee" is added for gap_adapted_ramp). "phase" and "epsilon" are optional.
namespace dqd {

void to_json(nlohmann::json &j, const Schedule &s);
void from_json(const nlohmann::json &j, Schedule &s);
void to_json(nlohmann::json &j, const DeviceGraph &g);
/// Throws nlohmann::json::exception on malformed documents and DeviceError when the listed dots
/// do not match the DQD numbering.
void from_json(const nlohmann::json &j, DeviceGraph &g);

}  // namespace dqd

#endif
