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


// Brute-force oracles and random generators shared by the tests. Nothing here
// calls the tensor or eigen routines under test.

#pragma once

#include <cmath>
#include <cstddef>
#include <random>
#include <string_view>
#include <vector>

#include "procmat/procmat.hpp"

namespace procmat::testing {

inline CMatrix naive_kron(const CMatrix& a, const CMatrix& b) {
  CMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j)
      for (std::size_t k = 0; k < b.rows(); ++k)
        for (std::size_t l = 0; l < b.cols(); ++l)
          out(i * b.rows() + k, j * b.cols() + l) = a(i, j) * b(k, l);
  return out;
}

inline CMatrix naive_kron(std::initializer_list<CMatrix> factors) {
  auto it = factors.begin();
  CMatrix out = *it++;
  for (; it != factors.end(); ++it) out = naive_kron(out, *it);
  return out;
}

/// Pauli string such as "ZIXI"; factor order left to right.
inline CMatrix pauli_string(std::string_view s) {
  const CMatrix i2{{1, 0}, {0, 1}};
  const CMatrix x{{0, 1}, {1, 0}};
  const CMatrix y{{0, complex(0, -1)}, {complex(0, 1), 0}};
  const CMatrix z{{1, 0}, {0, -1}};
  auto pick = [&](char c) -> const CMatrix& {
    switch (c) {
      case 'X':
        return x;
      case 'Y':
        return y;
      case 'Z':
        return z;
      default:
        return i2;
    }
  };
  CMatrix out = pick(s[0]);
  for (std::size_t k = 1; k < s.size(); ++k) out = naive_kron(out, pick(s[k]));
  return out;
}

inline std::vector<std::size_t> digits(std::size_t index, const std::vector<std::size_t>& dims) {
  std::vector<std::size_t> d(dims.size());
  for (std::size_t k = dims.size(); k-- > 0;) {
    d[k] = index % dims[k];
    index /= dims[k];
  }
  return d;
}

inline std::size_t flat(const std::vector<std::size_t>& d, const std::vector<std::size_t>& dims) {
  std::size_t index = 0;
  for (std::size_t k = 0; k < dims.size(); ++k) index = index * dims[k] + d[k];
  return index;
}

/// Partial trace by summing matrix elements over the multi-index of the
/// traced factors.
inline CMatrix naive_partial_trace(const CMatrix& m, const std::vector<std::size_t>& dims,
                                   const std::vector<bool>& keep) {
  std::vector<std::size_t> kept_dims;
  for (std::size_t k = 0; k < dims.size(); ++k)
    if (keep[k]) kept_dims.push_back(dims[k]);
  std::size_t out_side = 1;
  for (std::size_t d : kept_dims) out_side *= d;
  CMatrix out(out_side, out_side);
  for (std::size_t r = 0; r < m.rows(); ++r) {
    for (std::size_t c = 0; c < m.cols(); ++c) {
      const auto dr = digits(r, dims);
      const auto dc = digits(c, dims);
      bool diagonal_on_traced = true;
      std::vector<std::size_t> kr, kc;
      for (std::size_t k = 0; k < dims.size(); ++k) {
        if (keep[k]) {
          kr.push_back(dr[k]);
          kc.push_back(dc[k]);
        } else if (dr[k] != dc[k]) {
          diagonal_on_traced = false;
        }
      }
      if (diagonal_on_traced) out(flat(kr, kept_dims), flat(kc, kept_dims)) += m(r, c);
    }
  }
  return out;
}

/// Tr(A B) by explicit double sum.
inline complex naive_trace_product(const CMatrix& a, const CMatrix& b) {
  complex s = 0.0;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k) s += a(i, k) * b(k, i);
  return s;
}

inline CMatrix naive_matmul(const CMatrix& a, const CMatrix& b) {
  CMatrix out(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k)
      for (std::size_t j = 0; j < b.cols(); ++j) out(i, j) += a(i, k) * b(k, j);
  return out;
}

inline CMatrix random_complex(std::size_t rows, std::size_t cols, std::mt19937_64& rng) {
  std::normal_distribution<double> n(0.0, 1.0);
  CMatrix m(rows, cols);
  for (auto& e : m.entries()) e = complex(n(rng), n(rng));
  return m;
}

inline CMatrix random_hermitian(std::size_t n, std::mt19937_64& rng) {
  const CMatrix g = random_complex(n, n, rng);
  return (g + g.adjoint()) * 0.5;
}

/// Gram-Schmidt on the columns of a complex Gaussian matrix.
inline CMatrix random_unitary(std::size_t n, std::mt19937_64& rng) {
  CMatrix g = random_complex(n, n, rng);
  for (std::size_t c = 0; c < n; ++c) {
    for (std::size_t p = 0; p < c; ++p) {
      complex ip = 0.0;
      for (std::size_t r = 0; r < n; ++r) ip += std::conj(g(r, p)) * g(r, c);
      for (std::size_t r = 0; r < n; ++r) g(r, c) -= ip * g(r, p);
    }
    double norm = 0.0;
    for (std::size_t r = 0; r < n; ++r) norm += std::norm(g(r, c));
    norm = std::sqrt(norm);
    for (std::size_t r = 0; r < n; ++r) g(r, c) /= norm;
  }
  return g;
}

inline CMatrix random_density(std::size_t n, std::mt19937_64& rng) {
  const CMatrix g = random_complex(n, n, rng);
  CMatrix rho = naive_matmul(g, g.adjoint());
  rho *= 1.0 / rho.trace().real();
  return rho;
}

/// Random instrument from the first d_in columns of a random unitary on
/// d_out * outcomes, cut into `outcomes` Kraus operators of shape d_out x d_in.
inline Instrument random_kraus_instrument(std::size_t d_in, std::size_t d_out,
                                          std::size_t outcomes, std::mt19937_64& rng) {
  const std::size_t big = d_out * outcomes;
  if (big < d_in) throw ShapeError("random_kraus_instrument: not enough output room");
  const CMatrix u = random_unitary(big, rng);
  std::vector<CPMap> maps;
  for (std::size_t k = 0; k < outcomes; ++k) {
    CMatrix kraus(d_out, d_in);
    for (std::size_t r = 0; r < d_out; ++r)
      for (std::size_t c = 0; c < d_in; ++c) kraus(r, c) = u(k * d_out + r, c);
    std::vector<CMatrix> set{kraus};
    maps.push_back(cj_from_kraus(set, d_in, d_out));
  }
  return Instrument(std::move(maps));
}

inline double max_diff(const CMatrix& a, const CMatrix& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.entries().size(); ++i)
    m = std::max(m, std::abs(a.entries()[i] - b.entries()[i]));
  return m;
}

inline CMatrix dephased_ocb_expected() {
  return (pauli_string("IIII") + pauli_string("IZZI") * (1.0 / std::sqrt(2.0))) * 0.25;
}

inline CMatrix ocb_expected() {
  return (pauli_string("IIII") +
          (pauli_string("IZZI") + pauli_string("ZIXZ")) * (1.0 / std::sqrt(2.0))) *
         0.25;
}

}  // namespace procmat::testing
