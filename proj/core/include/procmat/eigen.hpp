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

#include <vector>

#include "procmat/matrix.hpp"

namespace procmat {

struct EigenDecomposition {
  std::vector<double> values;  // ascending
  CMatrix vectors;             // column i pairs with values[i]
};

struct JacobiOptions {
  /// Converged once the off-diagonal Frobenius norm drops below
  /// off_diagonal_tol * max(1, ||M||_F).
  double off_diagonal_tol = 1e-13;
  int max_sweeps = 100;
  /// Hermiticity required of the input.
  double hermitian_tol = 1e-10;
};

/// Cyclic complex Jacobi eigensolver for Hermitian matrices. Throws
/// ContractViolation if `m` is not Hermitian within options.hermitian_tol
/// (scaled by max(1, max|m_ij|)). Ties in the eigenvalues keep index order.
EigenDecomposition hermitian_eig(const CMatrix& m, const JacobiOptions& options = {});

/// Same as hermitian_eig, but first rotates `m` into the basis `guess`
/// (a unitary, typically the eigenvectors of a nearby matrix). Much cheaper
/// when `m` is almost diagonal in that basis.
EigenDecomposition hermitian_eig_warm(const CMatrix& m, const CMatrix& guess,
                                      const JacobiOptions& options = {});

double min_eigenvalue(const CMatrix& m);

/// V max(L, 0) V^dagger: nearest PSD matrix in Frobenius norm.
CMatrix psd_part(const EigenDecomposition& eig);
CMatrix psd_projection(const CMatrix& m);

}  // namespace procmat
