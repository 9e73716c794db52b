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

#include "dqd/errors.h"

namespace dqd {

DeviceError::DeviceError(std::vector<std::string> problems)
    : Error([&] {
          std::string msg = "invalid device graph:";
          for (const auto &p : problems) {
              msg += "\n  - " + p;
          }
          return msg;
      }()),
      problems_(std::move(problems)) {
}

}  // namespace dqd
