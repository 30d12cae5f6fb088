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

#include "procmat/instruments.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "procmat/eigen.hpp"
#include "procmat/errors.hpp"
#include "procmat/tensor.hpp"

namespace procmat {

namespace {

constexpr double kCpTol = 1e-9;
constexpr double kImagTol = 1e-10;
constexpr double kStochasticTol = 1e-9;

void require_unit(std::span<const complex> v, const char* what) {
  if (std::abs(vector_norm(v) - 1.0) > 1e-10)
    throw ContractViolation(std::string(what) + ": state vector is not normalized");
}

}  // namespace

CPMap::CPMap(std::size_t input_dim, std::size_t output_dim, CMatrix cj)
    : input_dim_(input_dim), output_dim_(output_dim), cj_(std::move(cj)) {
  if (input_dim == 0 || output_dim == 0) throw ShapeError("CPMap: dimensions must be positive");
  if (!cj_.is_square() || cj_.rows() != input_dim * output_dim)
    throw ShapeError("CPMap: CJ matrix side must equal input_dim * output_dim");
  if (!is_hermitian(cj_, kCpTol)) throw ContractViolation("CPMap: CJ matrix is not Hermitian");
  if (min_eigenvalue(hermitian_part(cj_)) < -kCpTol)
    throw ContractViolation("CPMap: CJ matrix is not positive semidefinite");
}

Instrument::Instrument(std::vector<CPMap> outcomes) : outcomes_(std::move(outcomes)) {
  if (outcomes_.empty()) throw ContractViolation("Instrument: at least one outcome required");
  for (const auto& m : outcomes_)
    if (m.input_dim() != input_dim() || m.output_dim() != output_dim())
      throw ShapeError("Instrument: outcomes must share dimensions");
}

CPMap cj_from_kraus(std::span<const CMatrix> kraus, std::size_t input_dim,
                    std::size_t output_dim) {
  if (kraus.empty()) throw ContractViolation("cj_from_kraus: empty Kraus list");
  const std::size_t n = input_dim * output_dim;
  CMatrix cj(n, n);
  for (const auto& k : kraus) {
    if (k.rows() != output_dim || k.cols() != input_dim)
      throw ShapeError("cj_from_kraus: Kraus operator must be output_dim x input_dim");
    // Each Kraus term contributes v v^dagger with v_(j,r) = conj(K_rj).
    Vector v(n);
    for (std::size_t j = 0; j < input_dim; ++j)
      for (std::size_t r = 0; r < output_dim; ++r) v[j * output_dim + r] = std::conj(k(r, j));
    cj += CMatrix::projector(v);
  }
  return CPMap(input_dim, output_dim, std::move(cj));
}

CPMap measure_reprepare(std::span<const complex> phi1, std::span<const complex> phi2) {
  require_unit(phi1, "measure_reprepare");
  require_unit(phi2, "measure_reprepare");
  const CMatrix k = CMatrix::outer(phi2, phi1);
  return cj_from_kraus(std::span<const CMatrix>(&k, 1), phi1.size(), phi2.size());
}

Instrument classical_instrument(const ClassicalTable& p, const MeasurementBasis& basis_in,
                                const MeasurementBasis& basis_out) {
  const std::size_t d_in = basis_in.dim(), d_out = basis_out.dim();
  if (p.empty()) throw ContractViolation("classical_instrument: empty table");
  std::vector<double> column_sum(d_in, 0.0);
  for (const auto& by_t : p) {
    if (by_t.size() != d_out) throw ShapeError("classical_instrument: table t-dimension mismatch");
    for (const auto& by_l : by_t) {
      if (by_l.size() != d_in) throw ShapeError("classical_instrument: table l-dimension mismatch");
      for (std::size_t l = 0; l < d_in; ++l) {
        if (!(by_l[l] >= 0.0)) throw ContractViolation("classical_instrument: negative probability");
        column_sum[l] += by_l[l];
      }
    }
  }
  for (double s : column_sum)
    if (std::abs(s - 1.0) > kStochasticTol)
      throw ContractViolation("classical_instrument: table is not stochastic");

  std::vector<CPMap> maps;
  for (const auto& by_t : p) {
    CMatrix cj(d_in * d_out, d_in * d_out);
    for (std::size_t t = 0; t < d_out; ++t)
      for (std::size_t l = 0; l < d_in; ++l)
        if (by_t[t][l] != 0.0)
          cj += kron(basis_in.projector(l), basis_out.projector(t)) * by_t[t][l];
    maps.emplace_back(d_in, d_out, std::move(cj));
  }
  return Instrument(std::move(maps));
}

Instrument cq_instrument(const MeasurementBasis& basis_in, const ConditionalTable& p,
                         std::span<const CMatrix> states) {
  const std::size_t d_in = basis_in.dim();
  if (p.empty() || p.size() != states.size())
    throw ContractViolation("cq_instrument: need one state per outcome");
  std::vector<double> column_sum(d_in, 0.0);
  for (const auto& row : p) {
    if (row.size() != d_in) throw ShapeError("cq_instrument: table input-dimension mismatch");
    for (std::size_t n = 0; n < d_in; ++n) {
      if (!(row[n] >= 0.0)) throw ContractViolation("cq_instrument: negative probability");
      column_sum[n] += row[n];
    }
  }
  for (double s : column_sum)
    if (std::abs(s - 1.0) > kStochasticTol)
      throw ContractViolation("cq_instrument: table is not stochastic");

  const std::size_t d_out = states.front().rows();
  for (const auto& rho : states) {
    if (!rho.is_square() || rho.rows() != d_out)
      throw ShapeError("cq_instrument: states must share one square dimension");
    if (!is_hermitian(rho, 1e-10) || std::abs(rho.trace() - 1.0) > 1e-10 ||
        min_eigenvalue(hermitian_part(rho)) < -kCpTol)
      throw ContractViolation("cq_instrument: state is not a density matrix");
  }

  std::vector<CPMap> maps;
  for (std::size_t i = 0; i < p.size(); ++i) {
    CMatrix diag_part(d_in, d_in);
    for (std::size_t n = 0; n < d_in; ++n)
      if (p[i][n] != 0.0) diag_part += basis_in.projector(n) * p[i][n];
    maps.emplace_back(d_in, d_out, kron(diag_part, states[i]));
  }
  return Instrument(std::move(maps));
}

InstrumentReport check_instrument(const Instrument& instrument, double tol) {
  InstrumentReport report;
  report.all_psd = true;
  const std::size_t d_in = instrument.input_dim(), d_out = instrument.output_dim();
  CMatrix total(d_in * d_out, d_in * d_out);
  for (const auto& m : instrument.outcomes()) {
    const double lam = min_eigenvalue(hermitian_part(m.cj()));
    report.outcome_min_eigenvalues.push_back(lam);
    if (lam < -tol) report.all_psd = false;
    total += m.cj();
  }
  const CMatrix reduced = partial_trace(total, Shape{d_in, d_out}, {0});
  report.completeness_residual = max_abs_diff(reduced, CMatrix::identity(d_in));
  report.complete = report.completeness_residual <= tol;
  report.passed = report.all_psd && report.complete;
  return report;
}

double born_probability(const ProcessMatrix& w, const CPMap& alice, const CPMap& bob) {
  const SystemLayout& layout = w.layout();
  if (alice.input_dim() != layout.d_a1() || alice.output_dim() != layout.d_a2() ||
      bob.input_dim() != layout.d_b1() || bob.output_dim() != layout.d_b2())
    throw ShapeError("born_probability: map dimensions do not match the process layout");

  // Tr[W K] = sum_{r,c} W_rc K_cr with K = M_A (x) M_B evaluated on the fly.
  const CMatrix& wm = w.matrix();
  const CMatrix& ma = alice.cj();
  const CMatrix& mb = bob.cj();
  const std::size_t nb = mb.rows();
  complex acc = 0.0;
  for (std::size_t r = 0; r < wm.rows(); ++r) {
    const std::size_t ra = r / nb, rb = r % nb;
    for (std::size_t c = 0; c < wm.cols(); ++c) {
      const complex a = ma(c / nb, ra);
      if (a == complex{}) continue;
      acc += wm(r, c) * a * mb(c % nb, rb);
    }
  }
  if (std::abs(acc.imag()) > kImagTol)
    throw NumericIntegrityError("born_probability: imaginary part " +
                                std::to_string(acc.imag()) + " exceeds tolerance");
  return acc.real();
}

double ProbabilityTable::sum() const { return std::accumulate(entries.begin(), entries.end(), 0.0); }

double ProbabilityTable::min() const { return *std::min_element(entries.begin(), entries.end()); }

ProbabilityTable probability_table(const ProcessMatrix& w, const Instrument& alice,
                                   const Instrument& bob) {
  ProbabilityTable table{alice.size(), bob.size(), {}};
  table.entries.reserve(alice.size() * bob.size());
  for (const auto& ma : alice.outcomes())
    for (const auto& mb : bob.outcomes()) table.entries.push_back(born_probability(w, ma, mb));
  return table;
}

}  // namespace procmat
