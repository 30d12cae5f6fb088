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
#include <random>

#include "procmat/basis.hpp"
#include "procmat/instruments.hpp"
#include "procmat/process.hpp"

namespace procmat {

/// Process seen by parties who measure their inputs in fixed bases.
struct EffectiveProcess {
  ProcessMatrix source;
  MeasurementBasis basis_a1;
  MeasurementBasis basis_b1;
  ProcessMatrix matrix;
};

/// Non-selective Lueders update on the inputs:
///   W_eff = sum_{n,m} P_(n,m) W P_(n,m),  P_(n,m) = P_n (x) 1 (x) P_m (x) 1.
EffectiveProcess luders_input_dephase(const ProcessMatrix& w, const MeasurementBasis& basis_a1,
                                      const MeasurementBasis& basis_b1);

/// Same update applied to the output factors A2 and B2.
ProcessMatrix output_dephase(const ProcessMatrix& w, const MeasurementBasis& basis_a2,
                             const MeasurementBasis& basis_b2);

/// Keeps only the diagonal of W in the product basis of all four factors.
ProcessMatrix classical_effective(const ProcessMatrix& w, const MeasurementBasis& basis_a1,
                                  const MeasurementBasis& basis_a2,
                                  const MeasurementBasis& basis_b1,
                                  const MeasurementBasis& basis_b2);

struct InputDiagonality {
  bool diagonal = false;
  /// Largest Frobenius norm of a block <n,m| W |n',m'> with (n,m) != (n',m').
  double max_off_block_norm = 0.0;
};

InputDiagonality is_input_diagonal(const ProcessMatrix& w, const MeasurementBasis& basis_a1,
                                   const MeasurementBasis& basis_b1, double tol = 1e-10);

/// P_(n,m) W P_(n,m), not renormalized.
CMatrix selective_block(const ProcessMatrix& w, std::size_t n, std::size_t m,
                        const MeasurementBasis& basis_a1, const MeasurementBasis& basis_b1);

struct SelectiveUpdate {
  ProcessMatrix matrix;  // renormalized to trace d_A2 d_B2
  ValidityReport report;
};

/// Selective update for outcome pair (n, m). Throws DegenerateInputError if
/// the block has (numerically) zero trace.
SelectiveUpdate selective_update(const ProcessMatrix& w, std::size_t n, std::size_t m,
                                 const MeasurementBasis& basis_a1,
                                 const MeasurementBasis& basis_b1);

/// Two-outcome classical-quantum instrument measuring `basis`: p(i|n) from
/// normalized uniform weights, states G G^dagger / Tr with Gaussian G.
Instrument random_cq_instrument(std::mt19937_64& rng, const MeasurementBasis& basis,
                                std::size_t output_dim, std::size_t outcomes = 2);

/// max |Tr[W (M_i (x) M_j)] - Tr[W_eff (M_i (x) M_j)]| over `samples` random
/// CQ instrument pairs measuring `instrument_a1` / `instrument_b1`, and over
/// all outcome pairs. Sample k draws from its own generator seeded with
/// (seed, k).
double indistinguishability_residual(const ProcessMatrix& w, const ProcessMatrix& w_eff,
                                     const MeasurementBasis& instrument_a1,
                                     const MeasurementBasis& instrument_b1,
                                     std::size_t samples, std::uint64_t seed);

/// As above with instruments in the dephasing bases of `effective`.
double indistinguishability_residual(const ProcessMatrix& w, const EffectiveProcess& effective,
                                     std::size_t samples, std::uint64_t seed);

/// sum_{n,m} (P_n (x) P_m) rho (P_n (x) P_m) on a bipartite space d_a x d_b.
CMatrix dephase_state(const CMatrix& rho, const MeasurementBasis& basis_a,
                      const MeasurementBasis& basis_b);

struct PptResult {
  bool ppt = false;
  double min_pt_eigenvalue = 0.0;
};

/// Positive-partial-transpose test on the second factor. Only offered where it
/// decides separability (2x2, 2x3, 3x2); other sizes throw ShapeError.
PptResult ppt_check(const CMatrix& rho, std::size_t d_a, std::size_t d_b, double tol = 1e-12);

}  // namespace procmat
