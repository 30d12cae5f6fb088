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

#include "procmat/hs_basis.hpp"

#include <cmath>

#include "procmat/errors.hpp"

namespace procmat {

std::vector<CMatrix> hs_factor_basis(std::size_t d) {
  if (d == 0) throw ShapeError("hs_factor_basis: dimension must be positive");
  std::vector<CMatrix> basis;
  basis.reserve(d * d);
  basis.push_back(CMatrix::identity(d));
  if (d == 1) return basis;

  // Gell-Mann matrices have Tr(l_j l_k) = 2 delta_jk.
  const double scale = std::sqrt(static_cast<double>(d) / 2.0);
  for (std::size_t j = 0; j < d; ++j)
    for (std::size_t k = j + 1; k < d; ++k) {
      CMatrix s(d, d);
      s(j, k) = scale;
      s(k, j) = scale;
      basis.push_back(std::move(s));
    }
  for (std::size_t j = 0; j < d; ++j)
    for (std::size_t k = j + 1; k < d; ++k) {
      CMatrix a(d, d);
      a(j, k) = complex(0.0, -scale);
      a(k, j) = complex(0.0, scale);
      basis.push_back(std::move(a));
    }
  for (std::size_t l = 1; l < d; ++l) {
    CMatrix g(d, d);
    const double norm = scale * std::sqrt(2.0 / static_cast<double>(l * (l + 1)));
    for (std::size_t j = 0; j < l; ++j) g(j, j) = norm;
    g(l, l) = -static_cast<double>(l) * norm;
    basis.push_back(std::move(g));
  }
  return basis;
}

std::size_t HSDecomposition::index_of(std::span<const std::size_t> element) const {
  if (element.size() != shape.factors()) throw ShapeError("HSDecomposition: wrong element arity");
  std::size_t index = 0;
  for (std::size_t k = 0; k < shape.factors(); ++k) {
    const std::size_t radix = shape.dim(k) * shape.dim(k);
    if (element[k] >= radix) throw ShapeError("HSDecomposition: element index out of range");
    index = index * radix + element[k];
  }
  return index;
}

std::vector<std::size_t> HSDecomposition::element_of(std::size_t index) const {
  std::vector<std::size_t> element(shape.factors());
  for (std::size_t k = shape.factors(); k-- > 0;) {
    const std::size_t radix = shape.dim(k) * shape.dim(k);
    element[k] = index % radix;
    index /= radix;
  }
  return element;
}

Pattern HSDecomposition::pattern_of(std::size_t index) const {
  const auto element = element_of(index);
  Pattern p = 0;
  for (std::size_t k = 0; k < element.size(); ++k)
    if (element[k] != 0) p |= Pattern{1} << k;
  return p;
}

CMatrix hs_basis_element(const Shape& shape, std::span<const std::size_t> element) {
  if (element.size() != shape.factors()) throw ShapeError("hs_basis_element: wrong arity");
  std::vector<CMatrix> factors;
  factors.reserve(element.size());
  for (std::size_t k = 0; k < element.size(); ++k)
    factors.push_back(hs_factor_basis(shape.dim(k)).at(element[k]));
  return tensor_product(factors);
}

namespace {

std::vector<std::vector<CMatrix>> all_factor_bases(const Shape& shape) {
  std::vector<std::vector<CMatrix>> bases;
  for (std::size_t k = 0; k < shape.factors(); ++k) bases.push_back(hs_factor_basis(shape.dim(k)));
  return bases;
}

std::size_t coefficient_count(const Shape& shape) {
  std::size_t count = 1;
  for (auto d : shape.dims()) count *= d * d;
  return count;
}

}  // namespace

HSDecomposition hs_decompose(const CMatrix& m, const Shape& shape) {
  shape.require_matches(m, "hs_decompose");
  const auto bases = all_factor_bases(shape);
  const std::size_t n = shape.total();
  HSDecomposition out{shape, std::vector<double>(coefficient_count(shape))};

  // Digits of every flat index, cached once.
  std::vector<std::vector<std::size_t>> digits(n, std::vector<std::size_t>(shape.factors()));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < shape.factors(); ++k) digits[i][k] = shape.digit(i, k);

  const double norm2 = static_cast<double>(n);  // ||B_T||_F^2 = prod_k d_k
  for (std::size_t t = 0; t < out.coefficients.size(); ++t) {
    const auto element = out.element_of(t);
    // Tr(M B) = sum_ij M_ij B_ji with B_ji = prod_k b_k(j_k, i_k).
    complex acc = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        const complex mij = m(i, j);
        if (mij == complex{}) continue;
        complex b = 1.0;
        for (std::size_t k = 0; k < shape.factors() && b != complex{}; ++k)
          b *= bases[k][element[k]](digits[j][k], digits[i][k]);
        acc += mij * b;
      }
    }
    out.coefficients[t] = acc.real() / norm2;
  }
  return out;
}

CMatrix hs_reconstruct(const HSDecomposition& decomposition) {
  const Shape& shape = decomposition.shape;
  if (decomposition.coefficients.size() != coefficient_count(shape))
    throw ShapeError("hs_reconstruct: coefficient count does not match shape");
  const auto bases = all_factor_bases(shape);
  const std::size_t n = shape.total();
  CMatrix out(n, n);
  for (std::size_t t = 0; t < decomposition.coefficients.size(); ++t) {
    const double c = decomposition.coefficients[t];
    if (c == 0.0) continue;
    const auto element = decomposition.element_of(t);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        complex b = c;
        for (std::size_t k = 0; k < shape.factors() && b != complex{}; ++k)
          b *= bases[k][element[k]](shape.digit(i, k), shape.digit(j, k));
        out(i, j) += b;
      }
  }
  return out;
}

}  // namespace procmat
