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

#include "procmat/eigen.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "procmat/errors.hpp"

namespace procmat {

namespace {

double off_diagonal_norm(const CMatrix& a) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j)
      if (i != j) s += std::norm(a(i, j));
  return std::sqrt(s);
}

// Diagonalizes `a` in place, accumulating the rotations into `v` (v <- v U).
void jacobi_sweeps(CMatrix& a, CMatrix& v, const JacobiOptions& options) {
  const std::size_t n = a.rows();
  const double threshold = options.off_diagonal_tol * std::max(1.0, a.frobenius_norm());
  for (int sweep = 0; sweep < options.max_sweeps; ++sweep) {
    if (off_diagonal_norm(a) < threshold) return;
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const complex apq = a(p, q);
        const double mag = std::abs(apq);
        if (mag == 0.0) continue;
        const double app = a(p, p).real();
        const double aqq = a(q, q).real();
        if (mag < 1e-300 ||
            (sweep > 3 && std::abs(app) + 1e3 * mag == std::abs(app) &&
             std::abs(aqq) + 1e3 * mag == std::abs(aqq))) {
          a(p, q) = 0.0;
          a(q, p) = 0.0;
          continue;
        }
        // Phase D = diag(1, e^{-i phi}) makes the pivot real; then a real
        // symmetric rotation R zeroes it. U = D R.
        const complex phase = apq / mag;  // e^{i phi}
        const double theta = (aqq - app) / (2.0 * mag);
        const double t = (theta >= 0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        const complex ep = std::conj(phase);  // e^{-i phi}
        const complex u_pp = c;
        const complex u_pq = s;
        const complex u_qp = -s * ep;
        const complex u_qq = c * ep;

        // a <- a U (columns p, q)
        for (std::size_t k = 0; k < n; ++k) {
          const complex akp = a(k, p), akq = a(k, q);
          a(k, p) = akp * u_pp + akq * u_qp;
          a(k, q) = akp * u_pq + akq * u_qq;
        }
        // a <- U^dagger a (rows p, q)
        for (std::size_t k = 0; k < n; ++k) {
          const complex apk = a(p, k), aqk = a(q, k);
          a(p, k) = std::conj(u_pp) * apk + std::conj(u_qp) * aqk;
          a(q, k) = std::conj(u_pq) * apk + std::conj(u_qq) * aqk;
        }
        a(p, q) = 0.0;
        a(q, p) = 0.0;
        a(p, p) = a(p, p).real();
        a(q, q) = a(q, q).real();
        for (std::size_t k = 0; k < n; ++k) {
          const complex vkp = v(k, p), vkq = v(k, q);
          v(k, p) = vkp * u_pp + vkq * u_qp;
          v(k, q) = vkp * u_pq + vkq * u_qq;
        }
      }
    }
  }
}

EigenDecomposition sorted(const CMatrix& a, const CMatrix& v) {
  const std::size_t n = a.rows();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t i, std::size_t j) { return a(i, i).real() < a(j, j).real(); });
  EigenDecomposition out{std::vector<double>(n), CMatrix(n, n)};
  for (std::size_t c = 0; c < n; ++c) {
    out.values[c] = a(order[c], order[c]).real();
    for (std::size_t r = 0; r < n; ++r) out.vectors(r, c) = v(r, order[c]);
  }
  return out;
}

void require_hermitian(const CMatrix& m, const JacobiOptions& options) {
  if (!m.is_square()) throw ShapeError("hermitian_eig: matrix is not square");
  const double scale = std::max(1.0, m.max_abs());
  if (hermiticity_defect(m) > options.hermitian_tol * scale)
    throw ContractViolation("hermitian_eig: input is not Hermitian");
}

}  // namespace

EigenDecomposition hermitian_eig(const CMatrix& m, const JacobiOptions& options) {
  require_hermitian(m, options);
  CMatrix a = hermitian_part(m);
  CMatrix v = CMatrix::identity(m.rows());
  jacobi_sweeps(a, v, options);
  return sorted(a, v);
}

EigenDecomposition hermitian_eig_warm(const CMatrix& m, const CMatrix& guess,
                                      const JacobiOptions& options) {
  require_hermitian(m, options);
  if (guess.rows() != m.rows() || !guess.is_square())
    throw ShapeError("hermitian_eig_warm: guess dimension mismatch");
  CMatrix a = hermitian_part(guess.adjoint() * m * guess);
  CMatrix v = guess;
  jacobi_sweeps(a, v, options);
  return sorted(a, v);
}

double min_eigenvalue(const CMatrix& m) { return hermitian_eig(m).values.front(); }

CMatrix psd_part(const EigenDecomposition& eig) {
  const std::size_t n = eig.values.size();
  CMatrix out(n, n);
  for (std::size_t k = 0; k < n; ++k) {
    const double lam = eig.values[k];
    if (lam <= 0.0) continue;
    for (std::size_t i = 0; i < n; ++i) {
      const complex vi = lam * eig.vectors(i, k);
      for (std::size_t j = 0; j < n; ++j) out(i, j) += vi * std::conj(eig.vectors(j, k));
    }
  }
  return out;
}

CMatrix psd_projection(const CMatrix& m) { return psd_part(hermitian_eig(m)); }

}  // namespace procmat
