// Copyright 2026 The Unravel Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <stdexcept>
#include <string>

namespace unravel {

/// Base class of every error thrown by the library.
struct SimulationError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct InvalidGrid : SimulationError { using SimulationError::SimulationError; };
struct DegenerateBank : SimulationError { using SimulationError::SimulationError; };
struct DimensionMismatch : SimulationError { using SimulationError::SimulationError; };
struct PacketClipped : SimulationError { using SimulationError::SimulationError; };
struct OverlapTooLarge : SimulationError { using SimulationError::SimulationError; };
struct NotHermitian : SimulationError { using SimulationError::SimulationError; };
struct NotNormalized : SimulationError { using SimulationError::SimulationError; };
struct EigenFailure : SimulationError { using SimulationError::SimulationError; };
struct StepTooLarge : SimulationError { using SimulationError::SimulationError; };
struct PositivityLost : SimulationError { using SimulationError::SimulationError; };
struct ZeroOverlap : SimulationError { using SimulationError::SimulationError; };
struct TooFewTrajectories : SimulationError { using SimulationError::SimulationError; };
struct LatticeMismatch : SimulationError { using SimulationError::SimulationError; };
struct UnequalInitialDensity : SimulationError { using SimulationError::SimulationError; };
struct BoundaryOutsideGrid : SimulationError { using SimulationError::SimulationError; };
struct InsufficientPoints : SimulationError { using SimulationError::SimulationError; };
struct ParseError : SimulationError { using SimulationError::SimulationError; };
struct ValidationError : SimulationError { using SimulationError::SimulationError; };

/// Precondition violations that have no dedicated error in the contracts.
struct InvalidArgument : SimulationError { using SimulationError::SimulationError; };

}  // namespace unravel
