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
#include <cstdint>
#include <initializer_list>
#include <span>
#include <vector>

#include "procmat/matrix.hpp"

namespace procmat {

/// Ordered subsystem dimensions of a multipartite space. Factor 0 is the most
/// significant digit of a flat index.
class Shape {
 public:
  explicit Shape(std::vector<std::size_t> factor_dims);
  Shape(std::initializer_list<std::size_t> factor_dims)
      : Shape(std::vector<std::size_t>(factor_dims)) {}

  std::size_t factors() const { return dims_.size(); }
  std::size_t dim(std::size_t k) const { return dims_.at(k); }
  std::size_t stride(std::size_t k) const { return strides_.at(k); }
  std::size_t total() const { return total_; }
  std::span<const std::size_t> dims() const { return dims_; }

  /// Digit of factor `k` in flat index `index`.
  std::size_t digit(std::size_t index, std::size_t k) const {
    return (index / strides_[k]) % dims_[k];
  }

  /// Throws ShapeError unless `m` is square with side total().
  void require_matches(const CMatrix& m, const char* what) const;

  friend bool operator==(const Shape&, const Shape&) = default;

 private:
  std::vector<std::size_t> dims_;
  std::vector<std::size_t> strides_;
  std::size_t total_;
};

/// Kronecker product in list order.
CMatrix tensor_product(std::span<const CMatrix> factors);
CMatrix tensor_product(std::initializer_list<CMatrix> factors);
CMatrix kron(const CMatrix& a, const CMatrix& b);
Vector kron(std::span<const complex> a, std::span<const complex> b);

/// Traces out every factor not listed in `keep`. Kept factors stay in their
/// original order.
CMatrix partial_trace(const CMatrix& m, const Shape& shape, std::span<const std::size_t> keep);
CMatrix partial_trace(const CMatrix& m, const Shape& shape,
                      std::initializer_list<std::size_t> keep);

/// Transposes the listed factors only.
CMatrix partial_transpose(const CMatrix& m, const Shape& shape,
                          std::span<const std::size_t> subset);
CMatrix partial_transpose(const CMatrix& m, const Shape& shape,
                          std::initializer_list<std::size_t> subset);

/// Bitmask over factors: bit k set means factor k carries a traceless
/// Hilbert-Schmidt element.
using Pattern = std::uint32_t;

/// Replaces factor `k` by (1/d_k) * 1 (x) Tr_k(m), i.e. the projection onto
/// operators acting trivially on that factor.
CMatrix trivialize_factor(const CMatrix& m, const Shape& shape, std::size_t k);

/// Splits `m` into 2^n orthogonal components indexed by Pattern, where n is the
/// number of factors. Component P collects every Hilbert-Schmidt term that is
/// traceless exactly on the factors in P. The components sum to `m`.
std::vector<CMatrix> pattern_components(const CMatrix& m, const Shape& shape);

/// Sum of the pattern components for which `keep(pattern)` is true.
template <typename Pred>
CMatrix keep_patterns(const CMatrix& m, const Shape& shape, Pred keep) {
  auto parts = pattern_components(m, shape);
  CMatrix out(m.rows(), m.cols());
  for (Pattern p = 0; p < parts.size(); ++p)
    if (keep(p)) out += parts[p];
  return out;
}

}  // namespace procmat
