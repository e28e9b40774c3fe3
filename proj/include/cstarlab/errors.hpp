// Copyright 2026 cstarlab contributors
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

namespace cstarlab {

// Base class for every error raised by the library. Callers that only
// want a pass/fail boundary can catch this one type.
struct Error : std::runtime_error {
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Matrix carrier violations: non-finite entries, empty dimensions.
struct InvalidMatrix : Error {
  using Error::Error;
};

// A Hermitian-only operation received a matrix that is not Hermitian
// within the configured tolerance.
struct NotHermitian : Error {
  using Error::Error;
};

// An operation that needs at least one input element received none.
struct EmptyInput : Error {
  using Error::Error;
};

// Block sizes or matrix dimensions do not line up.
struct ShapeMismatch : Error {
  using Error::Error;
};

// Guard against exponential ideal enumeration.
struct TooManyBlocks : Error {
  using Error::Error;
};

// Quotient by the full block set would leave the zero algebra.
struct EmptyQuotient : Error {
  using Error::Error;
};

// A multiplicity matrix fails the unitality row sums, or a conjugator
// is not unitary within tolerance.
struct InvalidHom : Error {
  using Error::Error;
};

// Two covers that must share a base do not.
struct BaseMismatch : Error {
  using Error::Error;
};

// Boundary-ideal aggregation failed re-verification in a way that
// signals numerical breakdown rather than a lattice degeneracy.
struct ShilovInconsistent : Error {
  using Error::Error;
};

// The pushforward of an ideal could not be identified with a block
// subset of the target (mass in the ambiguous band).
struct ImageNotIdeal : Error {
  using Error::Error;
};

// cmax_plus_model was handed an ideal that is not the Shilov ideal.
struct NotShilov : Error {
  using Error::Error;
};

// Twist parameter outside the closed unit disk.
struct OutsideDisk : Error {
  using Error::Error;
};

// compress() received a non-isometric embedding.
struct NotIsometry : Error {
  using Error::Error;
};

// The scaling probe needs a nonzero corner block.
struct TrivialCorner : Error {
  using Error::Error;
};

// Input document could not be parsed.
struct ParseError : Error {
  using Error::Error;
};

// Parsed document has inconsistent block data.
struct ShapeError : Error {
  using Error::Error;
};

// Scenario name not registered.
struct UnknownScenario : Error {
  using Error::Error;
};

// Internal numerical routine failed to converge or verify.
struct NumericalFailure : Error {
  using Error::Error;
};

}  // namespace cstarlab
