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
#include <span>
#include <vector>

#include "procmat/basis.hpp"
#include "procmat/matrix.hpp"
#include "procmat/process.hpp"

namespace procmat {

/// Completely positive map X1 -> X2 in Choi-Jamiolkowski form, input factor
/// first. The convention is
///   cj = [(1 (x) M)(|1>><<1|)]^T,  |1>> = sum_j |jj>,
/// so a measure-and-reprepare map has cj = |phi1><phi1| (x) (|phi2><phi2|)^T.
class CPMap {
 public:
  /// Throws ShapeError on dimension mismatch and ContractViolation unless
  /// `cj` is Hermitian and PSD within 1e-9.
  CPMap(std::size_t input_dim, std::size_t output_dim, CMatrix cj);

  std::size_t input_dim() const { return input_dim_; }
  std::size_t output_dim() const { return output_dim_; }
  const CMatrix& cj() const { return cj_; }

 private:
  std::size_t input_dim_;
  std::size_t output_dim_;
  CMatrix cj_;
};

/// Outcome-indexed CP maps sharing dimensions. Completeness is not enforced
/// here; see check_instrument.
class Instrument {
 public:
  explicit Instrument(std::vector<CPMap> outcomes);

  std::size_t size() const { return outcomes_.size(); }
  const CPMap& operator[](std::size_t k) const { return outcomes_.at(k); }
  std::span<const CPMap> outcomes() const { return outcomes_; }
  std::size_t input_dim() const { return outcomes_.front().input_dim(); }
  std::size_t output_dim() const { return outcomes_.front().output_dim(); }

 private:
  std::vector<CPMap> outcomes_;
};

/// Kraus operators are output_dim x input_dim.
CPMap cj_from_kraus(std::span<const CMatrix> kraus, std::size_t input_dim,
                    std::size_t output_dim);

/// Measure the input onto |phi1>, then prepare |phi2>. Both must be unit
/// vectors (1e-10).
CPMap measure_reprepare(std::span<const complex> phi1, std::span<const complex> phi2);

/// p[k][t][l] = probability of outcome k and preparation t given input l.
using ClassicalTable = std::vector<std::vector<std::vector<double>>>;
/// p[i][n] = probability of outcome i given input n.
using ConditionalTable = std::vector<std::vector<double>>;

/// M_k = sum_{t,l} p(k,t|l) |l><l| (x) |t><t|, diagonal in the given bases.
/// For a real output basis this is the same as preparing |t>.
Instrument classical_instrument(const ClassicalTable& p, const MeasurementBasis& basis_in,
                                const MeasurementBasis& basis_out);

/// M_i = sum_n p(i|n) |n><n| (x) rho_i, with rho_i entered as given (no
/// transpose). To model "prepare rho_i" under the CJ convention above, pass
/// rho_i^T.
Instrument cq_instrument(const MeasurementBasis& basis_in, const ConditionalTable& p,
                         std::span<const CMatrix> states);

struct InstrumentReport {
  std::vector<double> outcome_min_eigenvalues;
  bool all_psd = false;
  /// max-abs entry of Tr_X2(sum_k M_k) - 1_X1
  double completeness_residual = 0.0;
  bool complete = false;
  bool passed = false;
};

InstrumentReport check_instrument(const Instrument& instrument, double tol = 1e-9);

/// Tr[W (M_A (x) M_B)]. Throws ShapeError if the maps do not match the layout
/// and NumericIntegrityError if the imaginary part exceeds 1e-10.
double born_probability(const ProcessMatrix& w, const CPMap& alice, const CPMap& bob);

struct ProbabilityTable {
  std::size_t alice_outcomes = 0;
  std::size_t bob_outcomes = 0;
  std::vector<double> entries;  // row-major, p(i, j)

  double at(std::size_t i, std::size_t j) const { return entries.at(i * bob_outcomes + j); }
  double sum() const;
  double min() const;
};

ProbabilityTable probability_table(const ProcessMatrix& w, const Instrument& alice,
                                   const Instrument& bob);

}  // namespace procmat
