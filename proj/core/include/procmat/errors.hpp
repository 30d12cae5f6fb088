// Copyright 2026 The procmat Authors
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

namespace procmat {

/// Base class of every error thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Dimension or factor-index mismatch.
class ShapeError : public Error {
 public:
  using Error::Error;
};

/// An argument violates a documented precondition (non-Hermitian input,
/// non-normalized vector, non-stochastic table, ...).
class ContractViolation : public Error {
 public:
  using Error::Error;
};

/// A quantity that must be real (or finite) is not, beyond tolerance.
class NumericIntegrityError : public Error {
 public:
  using Error::Error;
};

/// A theorem hypothesis is not met by the input, e.g. the process is not
/// diagonal in the requested input bases.
class PreconditionError : public Error {
 public:
  using Error::Error;
};

/// The operator does not have the block structure the construction needs.
class StructureError : public Error {
 public:
  using Error::Error;
};

/// Input is degenerate for the requested operation (zero-trace block, ...).
class DegenerateInputError : public Error {
 public:
  using Error::Error;
};

/// Internal invariant broken; indicates a bug or catastrophic round-off.
class InternalConsistencyError : public Error {
 public:
  using Error::Error;
};

}  // namespace procmat
