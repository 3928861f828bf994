// Copyright 2026 The qcomm Authors
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

#pragma once

#include <stdexcept>

namespace qcomm {

/// Operand sizes or qubit counts do not line up.
struct DimensionError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// A 1-based index fell outside its range.
struct IndexError : std::out_of_range {
    using std::out_of_range::out_of_range;
};

/// Integer inputs that cannot come from real bit strings.
struct InconsistentInputsError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// An instance does not fit the block layout of a protocol.
struct CapacityError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// Invalid experiment or protocol parameters.
struct ConfigError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// Overflow, non-convergence, or other arithmetic failure.
struct NumericError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Malformed bytes on the wire.
struct FormatError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct UnsupportedObservableError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

}  // namespace qcomm
