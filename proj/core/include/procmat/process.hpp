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

#include <bitset>
#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "procmat/matrix.hpp"
#include "procmat/tensor.hpp"

namespace procmat {

/// Tensor factors of a bipartite process, in storage order.
enum Factor : std::size_t { kA1 = 0, kA2 = 1, kB1 = 2, kB2 = 3 };

constexpr Pattern factor_bit(Factor f) { return Pattern{1} << static_cast<std::size_t>(f); }
constexpr Pattern make_pattern(std::initializer_list<Factor> factors) {
  Pattern p = 0;
  for (Factor f : factors) p |= factor_bit(f);
  return p;
}
constexpr bool has_factor(Pattern p, Factor f) { return (p & factor_bit(f)) != 0; }

/// "{A1,B2}" style label; "{}" for the all-identity pattern.
std::string pattern_name(Pattern p);

/// Dimensions of Alice's input/output (A1, A2) and Bob's (B1, B2).
class SystemLayout {
 public:
  SystemLayout(std::size_t d_a1, std::size_t d_a2, std::size_t d_b1, std::size_t d_b2);
  static SystemLayout qubits() { return {2, 2, 2, 2}; }

  std::size_t d_a1() const { return dims_[kA1]; }
  std::size_t d_a2() const { return dims_[kA2]; }
  std::size_t d_b1() const { return dims_[kB1]; }
  std::size_t d_b2() const { return dims_[kB2]; }
  std::size_t dim(Factor f) const { return dims_[f]; }

  /// Input dimension product d_A1 d_B1; W = (1/d)(1 + ...).
  std::size_t d() const { return d_a1() * d_b1(); }
  /// Output dimension product d_A2 d_B2, the trace of every valid W.
  std::size_t output_product() const { return d_a2() * d_b2(); }
  std::size_t d_total() const { return d_a1() * d_a2() * d_b1() * d_b2(); }
  std::size_t d_prime() const { return d() * d_a2() * d_b2(); }
  Shape shape() const { return Shape{d_a1(), d_a2(), d_b1(), d_b2()}; }

  friend bool operator==(const SystemLayout&, const SystemLayout&) = default;

 private:
  std::size_t dims_[4];
};

/// Hermitian operator on A1 (x) A2 (x) B1 (x) B2. Construction only checks
/// shape and Hermiticity (1e-10); use validate_process for the full check.
class ProcessMatrix {
 public:
  ProcessMatrix(SystemLayout layout, CMatrix matrix);

  const SystemLayout& layout() const { return layout_; }
  const CMatrix& matrix() const { return matrix_; }

 private:
  SystemLayout layout_;
  CMatrix matrix_;
};

enum class MaskVariant { general, a_before_b, b_before_a };

/// Which Hilbert-Schmidt term patterns a process may contain.
class TermMask {
 public:
  explicit TermMask(std::bitset<16> allowed) : allowed_(allowed) {}
  bool allows(Pattern p) const { return p < 16 && allowed_.test(p); }
  std::vector<Pattern> allowed_patterns() const;
  const std::bitset<16>& bits() const { return allowed_; }

 private:
  std::bitset<16> allowed_;
};

/// general: A2 needs B1, B2 needs A1, and A2/B2 never appear together.
/// a_before_b additionally drops every B2 pattern; b_before_a every A2 one.
TermMask allowed_term_mask(MaskVariant variant);

struct OffendingTerm {
  Pattern pattern;
  double max_coefficient;  // largest |c_T| over basis elements with that pattern
};

struct ValidityReport {
  bool is_psd = false;
  double min_eigenvalue = 0.0;
  bool trace_ok = false;
  double trace = 0.0;
  bool mask_ok = false;
  std::vector<OffendingTerm> offending;
  bool overall = false;
};

/// Minimum eigenvalue allowed for a PSD verdict on a matrix of side n.
double psd_tolerance(std::size_t side);

/// Checks positivity (min eigenvalue >= -1e-9 * side), trace d_A2 d_B2 within
/// `tol`, and that every Hilbert-Schmidt coefficient outside `variant`'s mask
/// is below `tol` in magnitude.
ValidityReport validate_process(const ProcessMatrix& w, double tol = 1e-8,
                                MaskVariant variant = MaskVariant::general);

/// Orthogonal projection onto the span of the allowed terms. With `normalize`
/// the identity coefficient is reset so that the trace equals d_A2 d_B2.
CMatrix project_to_valid_span(const CMatrix& h, const SystemLayout& layout,
                              bool normalize = false,
                              MaskVariant variant = MaskVariant::general);

/// Seeded random valid process (1/d)(1 + t G), G a random traceless operator in
/// the valid span and t = strength / |min eig G|, so min eig (d W) = 1 - strength.
/// strength must lie in (0,1).
ProcessMatrix random_process(std::uint64_t seed, const SystemLayout& layout,
                             double strength = 0.9);

/// (1/d) 1: no signalling in either direction.
ProcessMatrix identity_process(const SystemLayout& layout);

/// Alice's output fed to Bob's input through the identity channel; Alice's
/// input is maximally mixed and Bob's output is discarded. Needs d_A2 == d_B1.
ProcessMatrix channel_process(const SystemLayout& layout);

}  // namespace procmat
