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

#include "procmat/effective.hpp"

#include <algorithm>
#include <cmath>

#include "procmat/eigen.hpp"
#include "procmat/errors.hpp"
#include "procmat/tensor.hpp"

namespace procmat {

namespace {

void require_basis(const MeasurementBasis& basis, std::size_t dim, const char* what) {
  if (basis.dim() != dim) throw ShapeError(std::string(what) + ": basis dimension mismatch");
}

struct LocalFrame {
  CMatrix u;
  bool trivial;
};

// U = U_A1 (x) U_A2 (x) U_B1 (x) U_B2; columns are the product basis vectors.
LocalFrame local_frame(const SystemLayout& layout, const MeasurementBasis* a1,
                       const MeasurementBasis* a2, const MeasurementBasis* b1,
                       const MeasurementBasis* b2) {
  const MeasurementBasis* bases[4] = {a1, a2, b1, b2};
  bool trivial = true;
  std::vector<CMatrix> factors;
  for (std::size_t k = 0; k < 4; ++k) {
    const std::size_t dim = layout.dim(static_cast<Factor>(k));
    if (bases[k] == nullptr) {
      factors.push_back(CMatrix::identity(dim));
      continue;
    }
    require_basis(*bases[k], dim, "local_frame");
    trivial = trivial && bases[k]->is_computational(0.0);
    factors.push_back(bases[k]->unitary());
  }
  return {tensor_product(factors), trivial};
}

// Zeroes every entry (r, c) of W expressed in `frame` for which
// keep(r, c) is false, then rotates back.
template <typename Keep>
CMatrix dephase_in_frame(const CMatrix& w, const LocalFrame& frame, Keep keep) {
  CMatrix in_frame = frame.trivial ? w : frame.u.adjoint() * w * frame.u;
  for (std::size_t r = 0; r < in_frame.rows(); ++r)
    for (std::size_t c = 0; c < in_frame.cols(); ++c)
      if (!keep(r, c)) in_frame(r, c) = 0.0;
  if (frame.trivial) return in_frame;
  return hermitian_part(frame.u * in_frame * frame.u.adjoint());
}

}  // namespace

EffectiveProcess luders_input_dephase(const ProcessMatrix& w, const MeasurementBasis& basis_a1,
                                      const MeasurementBasis& basis_b1) {
  const SystemLayout& layout = w.layout();
  const Shape shape = layout.shape();
  const auto frame = local_frame(layout, &basis_a1, nullptr, &basis_b1, nullptr);
  CMatrix eff = dephase_in_frame(w.matrix(), frame, [&](std::size_t r, std::size_t c) {
    return shape.digit(r, kA1) == shape.digit(c, kA1) && shape.digit(r, kB1) == shape.digit(c, kB1);
  });
  return {w, basis_a1, basis_b1, ProcessMatrix(layout, std::move(eff))};
}

ProcessMatrix output_dephase(const ProcessMatrix& w, const MeasurementBasis& basis_a2,
                             const MeasurementBasis& basis_b2) {
  const SystemLayout& layout = w.layout();
  const Shape shape = layout.shape();
  const auto frame = local_frame(layout, nullptr, &basis_a2, nullptr, &basis_b2);
  CMatrix out = dephase_in_frame(w.matrix(), frame, [&](std::size_t r, std::size_t c) {
    return shape.digit(r, kA2) == shape.digit(c, kA2) && shape.digit(r, kB2) == shape.digit(c, kB2);
  });
  return ProcessMatrix(layout, std::move(out));
}

ProcessMatrix classical_effective(const ProcessMatrix& w, const MeasurementBasis& basis_a1,
                                  const MeasurementBasis& basis_a2,
                                  const MeasurementBasis& basis_b1,
                                  const MeasurementBasis& basis_b2) {
  const auto frame = local_frame(w.layout(), &basis_a1, &basis_a2, &basis_b1, &basis_b2);
  CMatrix out =
      dephase_in_frame(w.matrix(), frame, [](std::size_t r, std::size_t c) { return r == c; });
  return ProcessMatrix(w.layout(), std::move(out));
}

InputDiagonality is_input_diagonal(const ProcessMatrix& w, const MeasurementBasis& basis_a1,
                                   const MeasurementBasis& basis_b1, double tol) {
  const SystemLayout& layout = w.layout();
  const Shape shape = layout.shape();
  const auto frame = local_frame(layout, &basis_a1, nullptr, &basis_b1, nullptr);
  const CMatrix in_frame = frame.trivial ? w.matrix() : frame.u.adjoint() * w.matrix() * frame.u;

  // Accumulate squared norms per (n, m, n', m') block.
  const std::size_t da = layout.d_a1(), db = layout.d_b1();
  std::vector<double> block_norm2(da * db * da * db, 0.0);
  for (std::size_t r = 0; r < in_frame.rows(); ++r) {
    const std::size_t br = shape.digit(r, kA1) * db + shape.digit(r, kB1);
    for (std::size_t c = 0; c < in_frame.cols(); ++c) {
      const std::size_t bc = shape.digit(c, kA1) * db + shape.digit(c, kB1);
      if (br != bc) block_norm2[br * da * db + bc] += std::norm(in_frame(r, c));
    }
  }
  InputDiagonality out;
  out.max_off_block_norm = std::sqrt(*std::max_element(block_norm2.begin(), block_norm2.end()));
  out.diagonal = out.max_off_block_norm <= tol;
  return out;
}

CMatrix selective_block(const ProcessMatrix& w, std::size_t n, std::size_t m,
                        const MeasurementBasis& basis_a1, const MeasurementBasis& basis_b1) {
  const SystemLayout& layout = w.layout();
  require_basis(basis_a1, layout.d_a1(), "selective_block");
  require_basis(basis_b1, layout.d_b1(), "selective_block");
  if (n >= layout.d_a1() || m >= layout.d_b1())
    throw ShapeError("selective_block: outcome index out of range");
  const CMatrix p = tensor_product({basis_a1.projector(n), CMatrix::identity(layout.d_a2()),
                                    basis_b1.projector(m), CMatrix::identity(layout.d_b2())});
  return hermitian_part(p * w.matrix() * p);
}

SelectiveUpdate selective_update(const ProcessMatrix& w, std::size_t n, std::size_t m,
                                 const MeasurementBasis& basis_a1,
                                 const MeasurementBasis& basis_b1) {
  CMatrix block = selective_block(w, n, m, basis_a1, basis_b1);
  const double tr = block.trace().real();
  if (tr <= 1e-14) throw DegenerateInputError("selective_update: block has zero trace");
  block *= static_cast<double>(w.layout().output_product()) / tr;
  ProcessMatrix renormalized(w.layout(), std::move(block));
  ValidityReport report = validate_process(renormalized);
  return {std::move(renormalized), std::move(report)};
}

Instrument random_cq_instrument(std::mt19937_64& rng, const MeasurementBasis& basis,
                                std::size_t output_dim, std::size_t outcomes) {
  std::uniform_real_distribution<double> uniform(0.05, 1.0);
  std::normal_distribution<double> normal(0.0, 1.0);
  const std::size_t d_in = basis.dim();

  ConditionalTable p(outcomes, std::vector<double>(d_in));
  for (std::size_t n = 0; n < d_in; ++n) {
    double total = 0.0;
    for (std::size_t i = 0; i < outcomes; ++i) total += (p[i][n] = uniform(rng));
    for (std::size_t i = 0; i < outcomes; ++i) p[i][n] /= total;
  }
  std::vector<CMatrix> states;
  for (std::size_t i = 0; i < outcomes; ++i) {
    CMatrix g(output_dim, output_dim);
    for (auto& e : g.entries()) e = complex(normal(rng), normal(rng));
    CMatrix rho = g * g.adjoint();
    rho *= 1.0 / rho.trace().real();
    states.push_back(hermitian_part(rho));
  }
  return cq_instrument(basis, p, states);
}

double indistinguishability_residual(const ProcessMatrix& w, const ProcessMatrix& w_eff,
                                     const MeasurementBasis& instrument_a1,
                                     const MeasurementBasis& instrument_b1,
                                     std::size_t samples, std::uint64_t seed) {
  if (!(w.layout() == w_eff.layout()))
    throw ShapeError("indistinguishability_residual: layouts differ");
  const SystemLayout& layout = w.layout();
  double worst = 0.0;
  for (std::size_t k = 0; k < samples; ++k) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(k)};
    std::mt19937_64 rng(seq);
    const Instrument alice = random_cq_instrument(rng, instrument_a1, layout.d_a2());
    const Instrument bob = random_cq_instrument(rng, instrument_b1, layout.d_b2());
    const ProbabilityTable p = probability_table(w, alice, bob);
    const ProbabilityTable q = probability_table(w_eff, alice, bob);
    for (std::size_t e = 0; e < p.entries.size(); ++e)
      worst = std::max(worst, std::abs(p.entries[e] - q.entries[e]));
  }
  return worst;
}

double indistinguishability_residual(const ProcessMatrix& w, const EffectiveProcess& effective,
                                     std::size_t samples, std::uint64_t seed) {
  return indistinguishability_residual(w, effective.matrix, effective.basis_a1,
                                       effective.basis_b1, samples, seed);
}

CMatrix dephase_state(const CMatrix& rho, const MeasurementBasis& basis_a,
                      const MeasurementBasis& basis_b) {
  const Shape shape{basis_a.dim(), basis_b.dim()};
  shape.require_matches(rho, "dephase_state");
  CMatrix out(rho.rows(), rho.cols());
  for (std::size_t n = 0; n < basis_a.dim(); ++n)
    for (std::size_t m = 0; m < basis_b.dim(); ++m) {
      const CMatrix p = kron(basis_a.projector(n), basis_b.projector(m));
      out += p * rho * p;
    }
  return hermitian_part(out);
}

PptResult ppt_check(const CMatrix& rho, std::size_t d_a, std::size_t d_b, double tol) {
  if (d_a * d_b > 6 || d_a < 2 || d_b < 2)
    throw ShapeError("ppt_check: PPT decides separability only for 2x2 and 2x3 systems");
  const Shape shape{d_a, d_b};
  shape.require_matches(rho, "ppt_check");
  const double lam = min_eigenvalue(partial_transpose(rho, shape, {1}));
  return {lam >= -tol, lam};
}

}  // namespace procmat
