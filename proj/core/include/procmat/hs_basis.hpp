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
#include <vector>

#include "procmat/matrix.hpp"
#include "procmat/tensor.hpp"

namespace procmat {

/// Orthogonal Hermitian operator basis of a d-dimensional space: element 0 is
/// the identity, elements 1..d^2-1 are traceless with Tr(t_j t_k) = d delta_jk.
/// For d = 2 this is (1, sigma_x, sigma_y, sigma_z); for larger d it is the
/// generalized Gell-Mann set (symmetric, antisymmetric, then diagonal),
/// rescaled to the normalization above.
std::vector<CMatrix> hs_factor_basis(std::size_t d);

/// Real coefficients of a Hermitian operator over the product basis
/// B_T = t_{T_0} (x) t_{T_1} (x) ..., with c_T = Tr(M B_T) / ||B_T||_F^2.
struct HSDecomposition {
  Shape shape;
  /// Indexed by the mixed-radix number of (T_0, T_1, ...), radix d_k^2,
  /// factor 0 most significant.
  std::vector<double> coefficients;

  std::size_t index_of(std::span<const std::size_t> element) const;
  std::vector<std::size_t> element_of(std::size_t index) const;
  /// Factors on which the basis element at `index` is traceless.
  Pattern pattern_of(std::size_t index) const;
  double identity_coefficient() const { return coefficients.front(); }
};

HSDecomposition hs_decompose(const CMatrix& m, const Shape& shape);
CMatrix hs_reconstruct(const HSDecomposition& decomposition);

/// Product basis element B_T.
CMatrix hs_basis_element(const Shape& shape, std::span<const std::size_t> element);

}  // namespace procmat
