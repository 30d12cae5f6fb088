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

#include "procmat/basis.hpp"

#include <cmath>

#include "procmat/errors.hpp"

namespace procmat {

MeasurementBasis::MeasurementBasis(CMatrix unitary, double tol) : unitary_(std::move(unitary)) {
  if (!unitary_.is_square()) throw ShapeError("MeasurementBasis: matrix must be square");
  const CMatrix gram = unitary_.adjoint() * unitary_;
  if (max_abs_diff(gram, CMatrix::identity(dim())) > tol)
    throw ContractViolation("MeasurementBasis: vectors are not orthonormal");
}

MeasurementBasis MeasurementBasis::computational(std::size_t dim) {
  return MeasurementBasis(CMatrix::identity(dim));
}

MeasurementBasis MeasurementBasis::qubit_x() {
  const double h = 1.0 / std::sqrt(2.0);
  return MeasurementBasis(CMatrix{{h, h}, {h, -h}});
}

MeasurementBasis MeasurementBasis::qubit_y() {
  const double h = 1.0 / std::sqrt(2.0);
  return MeasurementBasis(CMatrix{{h, h}, {complex(0.0, h), complex(0.0, -h)}});
}

CMatrix MeasurementBasis::projector(std::size_t n) const {
  if (n >= dim()) throw ShapeError("MeasurementBasis: index out of range");
  const Vector v = vector(n);
  return CMatrix::projector(v);
}

bool MeasurementBasis::is_computational(double tol) const {
  return max_abs_diff(unitary_, CMatrix::identity(dim())) <= tol;
}

}  // namespace procmat
