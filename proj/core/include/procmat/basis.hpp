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

#include <cstddef>

#include "procmat/matrix.hpp"

namespace procmat {

/// Orthonormal basis {|n>} of one local space, stored as the columns of a
/// unitary. Orthonormality is checked on construction (Gram error < 1e-10).
class MeasurementBasis {
 public:
  explicit MeasurementBasis(CMatrix unitary, double tol = 1e-10);

  /// Computational (z) basis.
  static MeasurementBasis computational(std::size_t dim);
  /// Eigenbasis of sigma_x for a qubit: |+>, |->.
  static MeasurementBasis qubit_x();
  /// Eigenbasis of sigma_y for a qubit.
  static MeasurementBasis qubit_y();

  std::size_t dim() const { return unitary_.rows(); }
  const CMatrix& unitary() const { return unitary_; }
  Vector vector(std::size_t n) const { return unitary_.column(n); }
  CMatrix projector(std::size_t n) const;
  bool is_computational(double tol = 1e-14) const;

 private:
  CMatrix unitary_;
};

}  // namespace procmat
