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

#ifndef DQD_ERRORS_H
#define DQD_ERRORS_H

#include <stdexcept>
#include <string>
#include <vector>

namespace dqd {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
};

/// Operand sizes do not agree (wrong bit count, operator/target mismatch, ...).
class DimensionError : public Error {
   public:
    using Error::Error;
};

/// A quantity violates a documented precondition (unnormalized input, repeated target, ...).
class PreconditionError : public Error {
   public:
    using Error::Error;
};

/// Collapse onto a measurement branch whose probability is below the collapse threshold.
class DegenerateBranchError : public Error {
   public:
    using Error::Error;
};

/// Step-size refinement disagreed by more than the configured tolerance.
class ConvergenceError : public Error {
   public:
    using Error::Error;
};

/// A device graph failed validation. Carries every problem found, not just the first.
class DeviceError : public Error {
   public:
    explicit DeviceError(std::vector<std::string> problems);
    const std::vector<std::string> &problems() const {
        return problems_;
    }

   private:
    std::vector<std::string> problems_;
};

}  // namespace dqd

#endif
