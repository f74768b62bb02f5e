// Copyright 2026 The qclock Authors
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
#include <string>

namespace qclock {

/// Outcome index outside 0..N.
struct IndexError : std::out_of_range {
    using std::out_of_range::out_of_range;
};

/// Operands built on different clock sizes.
struct DimensionError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// Argument outside the mathematical domain of an operation (k < 1, trials = 0, ...).
struct DomainError : std::domain_error {
    using std::domain_error::domain_error;
};

/// Amplitudes violate the real, nonnegative phase convention.
struct ConventionError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// Quadrature grid too coarse to integrate the trigonometric integrand exactly.
struct QuadratureDegreeError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// A computed quantity broke one of its invariants.
struct NumericError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace qclock
