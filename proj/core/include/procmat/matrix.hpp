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

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

namespace procmat {

using complex = std::complex<double>;
using Vector = std::vector<complex>;

// Dense complex matrix, row-major. Rows and columns are always positive.
class CMatrix {
 public:
  CMatrix(std::size_t rows, std::size_t cols);
  CMatrix(std::size_t rows, std::size_t cols, std::vector<complex> entries);
  CMatrix(std::initializer_list<std::initializer_list<complex>> rows);

  static CMatrix zeros(std::size_t rows, std::size_t cols) { return {rows, cols}; }
  static CMatrix identity(std::size_t n);
  static CMatrix diagonal(std::span<const double> values);
  static CMatrix diagonal(std::span<const complex> values);
  /// |ket><bra|
  static CMatrix outer(std::span<const complex> ket, std::span<const complex> bra);
  /// |v><v|
  static CMatrix projector(std::span<const complex> v) { return outer(v, v); }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool is_square() const { return rows_ == cols_; }

  complex& operator()(std::size_t r, std::size_t c) { return entries_[r * cols_ + c]; }
  const complex& operator()(std::size_t r, std::size_t c) const {
    return entries_[r * cols_ + c];
  }

  std::span<complex> entries() { return entries_; }
  std::span<const complex> entries() const { return entries_; }

  CMatrix adjoint() const;
  CMatrix transpose() const;
  CMatrix conjugate() const;
  complex trace() const;
  double frobenius_norm() const;
  double max_abs() const;

  /// Column `c` as a vector.
  Vector column(std::size_t c) const;

  CMatrix& operator+=(const CMatrix& other);
  CMatrix& operator-=(const CMatrix& other);
  CMatrix& operator*=(complex s);

  friend bool operator==(const CMatrix&, const CMatrix&) = default;

 private:
  std::size_t rows_;
  std::size_t cols_;
  std::vector<complex> entries_;
};

CMatrix operator+(CMatrix a, const CMatrix& b);
CMatrix operator-(CMatrix a, const CMatrix& b);
CMatrix operator*(CMatrix a, complex s);
CMatrix operator*(complex s, CMatrix a);
CMatrix operator*(const CMatrix& a, const CMatrix& b);
Vector operator*(const CMatrix& a, std::span<const complex> v);

/// Tr(A^dagger B).
complex frobenius_inner(const CMatrix& a, const CMatrix& b);

/// ||XY - YX||_F
double commutator_norm(const CMatrix& x, const CMatrix& y);

/// max_{ij} |A_ij - B_ij|; throws ShapeError on mismatch.
double max_abs_diff(const CMatrix& a, const CMatrix& b);

/// ||A - B||_F; throws ShapeError on mismatch.
double frobenius_distance(const CMatrix& a, const CMatrix& b);

/// max_{ij} |M_ij - conj(M_ji)|; infinite for non-square input.
double hermiticity_defect(const CMatrix& m);
bool is_hermitian(const CMatrix& m, double tol = 1e-12);

/// (M + M^dagger) / 2
CMatrix hermitian_part(const CMatrix& m);

double vector_norm(std::span<const complex> v);
complex inner(std::span<const complex> a, std::span<const complex> b);  // <a|b>

namespace pauli {
CMatrix i2();
CMatrix x();
CMatrix y();
CMatrix z();
}  // namespace pauli

}  // namespace procmat
