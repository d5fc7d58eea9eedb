// Copyright 2026 The qetlab Authors
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

#ifndef QETLAB_ERRORS_H
#define QETLAB_ERRORS_H

#include <optional>
#include <stdexcept>
#include <string>

namespace qetlab {

/// Input rejected by a precondition check (bad parameter, non-Hermitian matrix, malformed grid).
struct InvalidInput : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// A numeric routine failed: no convergence within its budget, or a residual exceeded tolerance.
struct NumericFailure : std::runtime_error {
    explicit NumericFailure(const std::string &what, std::optional<double> best_value = std::nullopt)
        : std::runtime_error(what), best_value(best_value) {
    }
    /// Best objective value reached before giving up, when the failure came from an optimizer.
    std::optional<double> best_value;
};

/// Wire protocol violation: malformed frame, handshake mismatch, digest mismatch.
struct ProtocolError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace qetlab

#endif
