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

#include "procmat/separability.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "procmat/effective.hpp"
#include "procmat/eigen.hpp"
#include "procmat/errors.hpp"
#include "procmat/tensor.hpp"

namespace procmat {

namespace {

CMatrix scaled_identity(std::size_t n, double s) { return CMatrix::identity(n) * s; }

// Rows/columns of the (n, m) input block, A2-major over (A2, B2).
std::vector<std::size_t> block_indices(const SystemLayout& layout, std::size_t n, std::size_t m) {
  const Shape shape = layout.shape();
  std::vector<std::size_t> idx;
  idx.reserve(layout.output_product());
  for (std::size_t i = 0; i < layout.d_a2(); ++i)
    for (std::size_t j = 0; j < layout.d_b2(); ++j)
      idx.push_back(n * shape.stride(kA1) + i * shape.stride(kA2) + m * shape.stride(kB1) +
                    j * shape.stride(kB2));
  return idx;
}

CMatrix extract(const CMatrix& m, const std::vector<std::size_t>& idx) {
  CMatrix out(idx.size(), idx.size());
  for (std::size_t r = 0; r < idx.size(); ++r)
    for (std::size_t c = 0; c < idx.size(); ++c) out(r, c) = m(idx[r], idx[c]);
  return out;
}

CMatrix input_projector(const SystemLayout& layout, const MeasurementBasis& a1,
                        const MeasurementBasis& b1, std::size_t n, std::size_t m) {
  return tensor_product({a1.projector(n), CMatrix::identity(layout.d_a2()), b1.projector(m),
                         CMatrix::identity(layout.d_b2())});
}

}  // namespace

KappaSplit kappa_split(const ProcessMatrix& w_eff, double alpha) {
  if (!(alpha >= 0.0 && alpha <= 1.0)) throw ContractViolation("kappa_split: alpha must lie in [0,1]");
  const SystemLayout& layout = w_eff.layout();
  const ValidityReport report = validate_process(w_eff);
  if (!report.mask_ok) {
    throw PreconditionError("kappa_split: W_eff has terms outside the valid mask, e.g. " +
                            pattern_name(report.offending.front().pattern));
  }
  const std::size_t n = layout.d_total();
  const double d = static_cast<double>(layout.d());
  CMatrix g = w_eff.matrix() * d - CMatrix::identity(n);
  const double lambda0 = min_eigenvalue(g);
  if (lambda0 < -1.0 - psd_tolerance(n))
    throw PreconditionError("kappa_split: lambda0 < -1, W_eff is not positive");

  const auto parts = pattern_components(g, layout.shape());
  CMatrix kappa1(n, n), kappa2(n, n);
  for (Pattern p = 0; p < parts.size(); ++p) (has_factor(p, kB2) ? kappa2 : kappa1) += parts[p];
  kappa1 -= scaled_identity(n, alpha * lambda0);
  kappa2 -= scaled_identity(n, (1.0 - alpha) * lambda0);
  return {layout, lambda0, hermitian_part(kappa1), hermitian_part(kappa2), alpha};
}

CMatrix reconstruct(const KappaSplit& split) {
  const std::size_t n = split.layout.d_total();
  CMatrix out = scaled_identity(n, 1.0 + split.lambda0) + split.kappa1 + split.kappa2;
  return out * (1.0 / static_cast<double>(split.layout.d()));
}

Vector EigenStructure::product_vector(std::size_t n, std::size_t a, std::size_t m,
                                      std::size_t b) const {
  const std::size_t k = block(n, m);
  const Vector vn = basis_a1.vector(n), vm = basis_b1.vector(m);
  const Vector va = output_basis_a[k].column(a), vb = output_basis_b[k].column(b);
  return kron(kron(kron(vn, va), vm), vb);
}

EigenStructure eigenstructure(const KappaSplit& split, const MeasurementBasis& basis_a1,
                              const MeasurementBasis& basis_b1, const ProcessMatrix& w_eff) {
  const SystemLayout& layout = split.layout;
  if (!(w_eff.layout() == layout)) throw ShapeError("eigenstructure: layout mismatch");
  if (basis_a1.dim() != layout.d_a1() || basis_b1.dim() != layout.d_b1())
    throw ShapeError("eigenstructure: basis dimension mismatch");
  const InputDiagonality diag = is_input_diagonal(w_eff, basis_a1, basis_b1, 1e-10);
  if (!diag.diagonal) {
    throw PreconditionError("eigenstructure: W_eff is not input-diagonal (off-block norm " +
                            std::to_string(diag.max_off_block_norm) + ")");
  }

  EigenStructure st{layout, basis_a1, basis_b1, {}, {}, {}, {}, {}, {}};
  const std::size_t d_a2 = layout.d_a2(), d_b2 = layout.d_b2();
  const CMatrix frame = tensor_product({basis_a1.unitary(), CMatrix::identity(d_a2),
                                        basis_b1.unitary(), CMatrix::identity(d_b2)});
  const CMatrix k1 = frame.adjoint() * split.kappa1 * frame;
  const CMatrix k2 = frame.adjoint() * split.kappa2 * frame;
  const Shape out_shape{d_a2, d_b2};

  st.commutator_k1_k2 = commutator_norm(split.kappa1, split.kappa2);
  for (std::size_t n = 0; n < layout.d_a1(); ++n) {
    for (std::size_t m = 0; m < layout.d_b1(); ++m) {
      const auto idx = block_indices(layout, n, m);
      const CMatrix block1 = extract(k1, idx);
      const CMatrix block2 = extract(k2, idx);

      CMatrix a = hermitian_part(partial_trace(block1, out_shape, {0}) * (1.0 / d_b2));
      CMatrix b = hermitian_part(partial_trace(block2, out_shape, {1}) * (1.0 / d_a2));
      st.product_form_residual =
          std::max({st.product_form_residual,
                    frobenius_distance(block1, kron(a, CMatrix::identity(d_b2))),
                    frobenius_distance(block2, kron(CMatrix::identity(d_a2), b))});

      auto eig_a = hermitian_eig(a);
      auto eig_b = hermitian_eig(b);
      st.m1.push_back(eig_a.values);
      st.m2.push_back(eig_b.values);
      st.output_basis_a.push_back(std::move(eig_a.vectors));
      st.output_basis_b.push_back(std::move(eig_b.vectors));
      st.block_a.push_back(std::move(a));
      st.block_b.push_back(std::move(b));

      const CMatrix p = input_projector(layout, basis_a1, basis_b1, n, m);
      st.commutator_k1_p = std::max(st.commutator_k1_p, commutator_norm(split.kappa1, p));
      st.commutator_p_k2 = std::max(st.commutator_p_k2, commutator_norm(p, split.kappa2));
    }
  }

  st.min_eigen_sum = std::numeric_limits<double>::infinity();
  for (std::size_t n = 0; n < layout.d_a1(); ++n)
    for (std::size_t m = 0; m < layout.d_b1(); ++m)
      for (std::size_t ia = 0; ia < d_a2; ++ia)
        for (std::size_t ib = 0; ib < d_b2; ++ib) {
          const Vector psi = st.product_vector(n, ia, m, ib);
          const double e1 = st.eig1(n, ia, m), e2 = st.eig2(n, m, ib);
          Vector r1 = split.kappa1 * psi, r2 = split.kappa2 * psi;
          for (std::size_t i = 0; i < psi.size(); ++i) {
            r1[i] -= e1 * psi[i];
            r2[i] -= e2 * psi[i];
          }
          st.eigen_residual = std::max({st.eigen_residual, vector_norm(r1), vector_norm(r2)});
          st.min_eigen_sum = std::min(st.min_eigen_sum, e1 + e2);
        }

  if (st.product_form_residual > kStructureTol)
    throw StructureError("eigenstructure: input block is not of product form (residual " +
                         std::to_string(st.product_form_residual) + ")");
  if (std::max({st.commutator_k1_k2, st.commutator_k1_p, st.commutator_p_k2}) > kStructureTol)
    throw StructureError("eigenstructure: kappa1, kappa2 and the input projectors do not commute");
  if (st.eigen_residual > kStructureTol)
    throw StructureError("eigenstructure: product vectors are not joint eigenvectors");
  return st;
}

CMatrix recombine(const CausalDecomposition& decomposition, const SystemLayout& layout) {
  CMatrix out(layout.d_total(), layout.d_total());
  if (decomposition.w_ab) out += decomposition.w_ab->matrix() * decomposition.p;
  if (decomposition.w_ba) out += decomposition.w_ba->matrix() * (1.0 - decomposition.p);
  return out;
}

ConstructiveResult constructive_decomposition_detailed(const ProcessMatrix& w_eff,
                                                       const MeasurementBasis& basis_a1,
                                                       const MeasurementBasis& basis_b1,
                                                       double alpha) {
  const SystemLayout& layout = w_eff.layout();
  KappaSplit split = kappa_split(w_eff, alpha);
  EigenStructure st = eigenstructure(split, basis_a1, basis_b1, w_eff);

  const std::size_t n_total = layout.d_total();
  const std::size_t d_a2 = layout.d_a2(), d_b2 = layout.d_b2();
  CMatrix bar1 = scaled_identity(n_total, 1.0 + split.lambda0);
  CMatrix bar2(n_total, n_total);
  std::vector<double> shifts;
  double min_bar_m2 = std::numeric_limits<double>::infinity();

  for (std::size_t n = 0; n < layout.d_a1(); ++n) {
    for (std::size_t m = 0; m < layout.d_b1(); ++m) {
      const std::size_t k = st.block(n, m);
      const double s = *std::min_element(st.m1[k].begin(), st.m1[k].end());
      shifts.push_back(s);
      const CMatrix pn = basis_a1.projector(n), pm = basis_b1.projector(m);
      for (std::size_t ia = 0; ia < d_a2; ++ia) {
        const double bar_m1 = st.m1[k][ia] - s;
        if (bar_m1 == 0.0) continue;
        const CMatrix pa = CMatrix::projector(st.output_basis_a[k].column(ia));
        bar1 += tensor_product({pn, pa, pm, CMatrix::identity(d_b2)}) * bar_m1;
      }
      for (std::size_t ib = 0; ib < d_b2; ++ib) {
        const double bar_m2 = st.m2[k][ib] + s;
        min_bar_m2 = std::min(min_bar_m2, bar_m2);
        if (bar_m2 == 0.0) continue;
        const CMatrix pb = CMatrix::projector(st.output_basis_b[k].column(ib));
        bar2 += tensor_product({pn, CMatrix::identity(d_a2), pm, pb}) * bar_m2;
      }
    }
  }
  if (min_bar_m2 < -kStructureTol)
    throw InternalConsistencyError("constructive_decomposition: shifted kappa2 eigenvalue " +
                                   std::to_string(min_bar_m2) + " is negative");
  bar1 = hermitian_part(bar1);
  bar2 = hermitian_part(bar2);

  const double d = static_cast<double>(layout.d());
  const double d_prime = static_cast<double>(layout.d_prime());
  double p = bar1.trace().real() / d_prime;
  CausalDecomposition dec{p, std::nullopt, std::nullopt};
  if (p >= 1.0 - kAbsentWeight) {
    dec.p = 1.0;
  } else if (p <= kAbsentWeight) {
    dec.p = 0.0;
  }
  if (dec.p > 0.0) dec.w_ab = ProcessMatrix(layout, bar1 * (1.0 / (dec.p * d)));
  if (dec.p < 1.0) dec.w_ba = ProcessMatrix(layout, bar2 * (1.0 / ((1.0 - dec.p) * d)));

  if (dec.w_ab) {
    const auto r = validate_process(*dec.w_ab, 1e-8, MaskVariant::a_before_b);
    if (!r.overall)
      throw InternalConsistencyError("constructive_decomposition: A-before-B part is invalid");
  }
  if (dec.w_ba) {
    const auto r = validate_process(*dec.w_ba, 1e-8, MaskVariant::b_before_a);
    if (!r.overall)
      throw InternalConsistencyError("constructive_decomposition: B-before-A part is invalid");
  }
  return {std::move(dec), std::move(split), std::move(st), std::move(shifts),
          std::move(bar1), std::move(bar2), min_bar_m2};
}

CausalDecomposition constructive_decomposition(const ProcessMatrix& w_eff,
                                               const MeasurementBasis& basis_a1,
                                               const MeasurementBasis& basis_b1, double alpha) {
  return constructive_decomposition_detailed(w_eff, basis_a1, basis_b1, alpha).decomposition;
}

DecompositionCheck verify_decomposition(const ProcessMatrix& w,
                                        const CausalDecomposition& decomposition, double tol) {
  DecompositionCheck check;
  const double p = decomposition.p;
  check.p_in_range = p >= 0.0 && p <= 1.0;
  bool sides_ok = true;
  if (!decomposition.w_ab && p > kAbsentWeight) sides_ok = false;
  if (!decomposition.w_ba && 1.0 - p > kAbsentWeight) sides_ok = false;
  if ((decomposition.w_ab && !(decomposition.w_ab->layout() == w.layout())) ||
      (decomposition.w_ba && !(decomposition.w_ba->layout() == w.layout()))) {
    check.reconstruction_error = std::numeric_limits<double>::infinity();
    return check;
  }

  check.reconstruction_error = frobenius_distance(recombine(decomposition, w.layout()), w.matrix());
  check.reconstruction_ok = check.reconstruction_error < tol;

  check.parts_ok = sides_ok;
  if (decomposition.w_ab) {
    check.ab_report = validate_process(*decomposition.w_ab, tol, MaskVariant::a_before_b);
    check.parts_ok = check.parts_ok && check.ab_report->overall;
  }
  if (decomposition.w_ba) {
    check.ba_report = validate_process(*decomposition.w_ba, tol, MaskVariant::b_before_a);
    check.parts_ok = check.parts_ok && check.ba_report->overall;
  }
  check.passed = check.p_in_range && check.reconstruction_ok && check.parts_ok;
  return check;
}

namespace {

CMatrix pauli_string(const CMatrix& a1, const CMatrix& a2, const CMatrix& b1, const CMatrix& b2) {
  return tensor_product({a1, a2, b1, b2});
}

CMatrix w0_ab_part() {
  return (CMatrix::identity(16) + w0_terms().first) * 0.25;
}

CMatrix w0_ba_part() { return (CMatrix::identity(16) + w0_terms().second) * 0.25; }

}  // namespace

std::pair<CMatrix, CMatrix> w0_terms() {
  using namespace pauli;
  CMatrix first = pauli_string(z(), z(), x(), i2()) * -1.0;
  CMatrix second = (pauli_string(z(), i2(), i2(), x()) + pauli_string(x(), i2(), x(), z())) * 0.5;
  return {std::move(first), std::move(second)};
}

ProcessMatrix w0_process(double p) {
  if (!(p >= 0.0 && p <= 1.0)) throw ContractViolation("w0_process: p must lie in [0,1]");
  return ProcessMatrix(SystemLayout::qubits(), w0_ab_part() * p + w0_ba_part() * (1.0 - p));
}

CausalDecomposition w0_defining_split(double p) {
  if (!(p >= 0.0 && p <= 1.0)) throw ContractViolation("w0_defining_split: p must lie in [0,1]");
  CausalDecomposition dec{p, std::nullopt, std::nullopt};
  if (p > 0.0) dec.w_ab = ProcessMatrix(SystemLayout::qubits(), w0_ab_part());
  if (p < 1.0) dec.w_ba = ProcessMatrix(SystemLayout::qubits(), w0_ba_part());
  return dec;
}

const char* to_string(SeparabilityStatus status) {
  switch (status) {
    case SeparabilityStatus::separable:
      return "separable";
    case SeparabilityStatus::not_separable_up_to_tolerance:
      return "not-separable-up-to-tolerance";
    case SeparabilityStatus::inconclusive:
      return "inconclusive";
  }
  return "unknown";
}

}  // namespace procmat
