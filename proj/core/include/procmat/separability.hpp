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
#include <optional>
#include <utility>
#include <vector>

#include "procmat/basis.hpp"
#include "procmat/process.hpp"

namespace procmat {

/// W_eff = (1/d)((1 + lambda0) 1 + kappa1 + kappa2) with kappa1 trivial on
/// B2, kappa2 trivial on A2 and kappa1 + kappa2 >= 0 with zero minimum
/// eigenvalue.
struct KappaSplit {
  SystemLayout layout;
  double lambda0;  // min eigenvalue of d W_eff - 1
  CMatrix kappa1;
  CMatrix kappa2;
  double alpha;  // share of -lambda0 1 assigned to kappa1
};

/// Terms of G = d W_eff - 1 that are nontrivial on B2 go to kappa2; all the
/// rest (including input-only terms) go to kappa1. -lambda0 1 is split as
/// alpha : (1 - alpha). Throws PreconditionError if W_eff has terms outside
/// the valid mask or lambda0 < -1.
KappaSplit kappa_split(const ProcessMatrix& w_eff, double alpha = 1.0);

/// (1/d)((1 + lambda0) 1 + kappa1 + kappa2)
CMatrix reconstruct(const KappaSplit& split);

/// Joint product eigenbasis of kappa1 and kappa2 for an input-diagonal W_eff.
/// Blocks are indexed by k = n * d_B1 + m.
struct EigenStructure {
  SystemLayout layout;
  MeasurementBasis basis_a1;
  MeasurementBasis basis_b1;
  std::vector<CMatrix> block_a;        // A_(n,m), d_A2 x d_A2
  std::vector<CMatrix> block_b;        // B_(n,m), d_B2 x d_B2
  std::vector<CMatrix> output_basis_a;  // columns |a^(n,m)>
  std::vector<CMatrix> output_basis_b;  // columns |b^(n,m)>
  std::vector<std::vector<double>> m1;  // [k][a], ascending
  std::vector<std::vector<double>> m2;  // [k][b], ascending

  double commutator_k1_k2 = 0.0;  // ||[kappa1, kappa2]||_F
  double commutator_k1_p = 0.0;   // max_(n,m) ||[kappa1, P_(n,m)]||_F
  double commutator_p_k2 = 0.0;   // max_(n,m) ||[P_(n,m), kappa2]||_F
  double product_form_residual = 0.0;  // worst ||block - A (x) 1||_F or ||block - 1 (x) B||_F
  double eigen_residual = 0.0;         // worst ||kappa_i psi - m_i psi|| over product vectors
  double min_eigen_sum = 0.0;          // min over indices of m1 + m2

  std::size_t block(std::size_t n, std::size_t m) const { return n * layout.d_b1() + m; }
  double eig1(std::size_t n, std::size_t a, std::size_t m) const { return m1[block(n, m)][a]; }
  double eig2(std::size_t n, std::size_t m, std::size_t b) const { return m2[block(n, m)][b]; }
  /// |n> (x) |a^(n,m)> (x) |m> (x) |b^(n,m)>
  Vector product_vector(std::size_t n, std::size_t a, std::size_t m, std::size_t b) const;
};

/// Tolerance for the structural checks of eigenstructure.
inline constexpr double kStructureTol = 1e-8;

/// Throws PreconditionError if W_eff is not input-diagonal in the given bases
/// and StructureError if a block is not of product form or a commutator
/// exceeds kStructureTol.
EigenStructure eigenstructure(const KappaSplit& split, const MeasurementBasis& basis_a1,
                              const MeasurementBasis& basis_b1, const ProcessMatrix& w_eff);

/// W = p W_ab + (1 - p) W_ba with W_ab trivial on B2 (B cannot signal to A)
/// and W_ba trivial on A2. A side whose weight vanishes is absent.
struct CausalDecomposition {
  double p;
  std::optional<ProcessMatrix> w_ab;
  std::optional<ProcessMatrix> w_ba;
};

CMatrix recombine(const CausalDecomposition& decomposition, const SystemLayout& layout);

struct ConstructiveResult {
  CausalDecomposition decomposition;
  KappaSplit split;
  EigenStructure structure;
  std::vector<double> shifts;  // s(n,m) = min_a m1(n,a,m), indexed like blocks
  CMatrix kappa_bar1;          // acts trivially on B2
  CMatrix kappa_bar2;          // acts trivially on A2
  double min_bar_m2 = 0.0;
};

/// Weight below which a side of a decomposition is treated as absent.
inline constexpr double kAbsentWeight = 1e-12;

/// Builds a causal decomposition of an input-diagonal valid W_eff by shifting
/// s(n,m) = min_a m1(n,a,m) from the kappa1 eigenvalues to the kappa2 ones.
ConstructiveResult constructive_decomposition_detailed(const ProcessMatrix& w_eff,
                                                       const MeasurementBasis& basis_a1,
                                                       const MeasurementBasis& basis_b1,
                                                       double alpha = 1.0);

CausalDecomposition constructive_decomposition(const ProcessMatrix& w_eff,
                                               const MeasurementBasis& basis_a1,
                                               const MeasurementBasis& basis_b1,
                                               double alpha = 1.0);

struct DecompositionCheck {
  double reconstruction_error = 0.0;  // Frobenius
  bool reconstruction_ok = false;
  bool p_in_range = false;
  std::optional<ValidityReport> ab_report;
  std::optional<ValidityReport> ba_report;
  bool parts_ok = false;
  bool passed = false;
};

DecompositionCheck verify_decomposition(const ProcessMatrix& w,
                                        const CausalDecomposition& decomposition,
                                        double tol = 1e-8);

/// (p/d)(1 - Z_A1 Z_A2 X_B1) + ((1-p)/d)(1 + Z_A1 X_B2 / 2 + X_A1 X_B1 Z_B2 / 2)
/// on the qubit layout. Throws ContractViolation unless p in [0,1].
ProcessMatrix w0_process(double p);

/// The two nontrivial operators inside W0's brackets:
/// -Z_A1 Z_A2 X_B1 and (Z_A1 X_B2 + X_A1 X_B1 Z_B2) / 2.
std::pair<CMatrix, CMatrix> w0_terms();

/// The split W0 is defined by: weight p on (1/4)(1 - Z Z X) (A before B).
CausalDecomposition w0_defining_split(double p);

enum class SeparabilityStatus { separable, not_separable_up_to_tolerance, inconclusive };

const char* to_string(SeparabilityStatus status);

struct FeasibilityReport {
  SeparabilityStatus status = SeparabilityStatus::inconclusive;
  /// Final residual when separable, else the best residual seen.
  double residual = 0.0;
  /// Smallest residual over the last plateau window (only set on the cap).
  double plateau_residual = 0.0;
  std::size_t iterations = 0;
  std::optional<CausalDecomposition> decomposition;
};

struct DykstraOptions {
  double tol = 1e-8;
  std::size_t max_iter = 50000;
  double plateau_fraction = 0.1;
};

/// Dykstra alternating projections over X >= 0, X in the A-before-B span,
/// W - X >= 0, W - X in the B-before-A span. The residual is the largest
/// Frobenius distance of the iterate to the four sets (sampled every
/// iteration for the first 100, then every 10th). Infeasibility is only
/// reported heuristically: after max_iter, a residual plateau above 10 tol
/// over the last plateau_fraction of the samples gives
/// not_separable_up_to_tolerance.
FeasibilityReport dykstra_separability(const ProcessMatrix& w, const DykstraOptions& options = {});

}  // namespace procmat
