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

#include "procmat/process.hpp"

#include <cmath>
#include <random>

#include "procmat/eigen.hpp"
#include "procmat/errors.hpp"
#include "procmat/hs_basis.hpp"

namespace procmat {

std::string pattern_name(Pattern p) {
  static constexpr const char* kNames[] = {"A1", "A2", "B1", "B2"};
  std::string out = "{";
  bool first = true;
  for (std::size_t k = 0; k < 4; ++k) {
    if (!(p & (Pattern{1} << k))) continue;
    if (!first) out += ",";
    out += kNames[k];
    first = false;
  }
  return out + "}";
}

SystemLayout::SystemLayout(std::size_t d_a1, std::size_t d_a2, std::size_t d_b1,
                           std::size_t d_b2)
    : dims_{d_a1, d_a2, d_b1, d_b2} {
  for (auto d : dims_)
    if (d == 0) throw ShapeError("SystemLayout: dimensions must be positive");
}

ProcessMatrix::ProcessMatrix(SystemLayout layout, CMatrix matrix)
    : layout_(layout), matrix_(std::move(matrix)) {
  layout_.shape().require_matches(matrix_, "ProcessMatrix");
  if (!is_hermitian(matrix_, 1e-10)) throw ContractViolation("ProcessMatrix: matrix is not Hermitian");
}

std::vector<Pattern> TermMask::allowed_patterns() const {
  std::vector<Pattern> out;
  for (Pattern p = 0; p < 16; ++p)
    if (allowed_.test(p)) out.push_back(p);
  return out;
}

TermMask allowed_term_mask(MaskVariant variant) {
  std::bitset<16> bits;
  for (Pattern p = 0; p < 16; ++p) {
    const bool a2 = has_factor(p, kA2), b2 = has_factor(p, kB2);
    bool ok = (!a2 || has_factor(p, kB1)) && (!b2 || has_factor(p, kA1)) && !(a2 && b2);
    if (variant == MaskVariant::a_before_b) ok = ok && !b2;
    if (variant == MaskVariant::b_before_a) ok = ok && !a2;
    bits.set(p, ok);
  }
  return TermMask(bits);
}

double psd_tolerance(std::size_t side) { return 1e-9 * static_cast<double>(side); }

ValidityReport validate_process(const ProcessMatrix& w, double tol, MaskVariant variant) {
  const SystemLayout& layout = w.layout();
  ValidityReport report;

  report.min_eigenvalue = min_eigenvalue(w.matrix());
  report.is_psd = report.min_eigenvalue >= -psd_tolerance(layout.d_total());

  report.trace = w.matrix().trace().real();
  report.trace_ok = std::abs(report.trace - static_cast<double>(layout.output_product())) < tol;

  const TermMask mask = allowed_term_mask(variant);
  const HSDecomposition hs = hs_decompose(w.matrix(), layout.shape());
  double worst[16] = {};
  for (std::size_t t = 0; t < hs.coefficients.size(); ++t) {
    const Pattern p = hs.pattern_of(t);
    worst[p] = std::max(worst[p], std::abs(hs.coefficients[t]));
  }
  for (Pattern p = 0; p < 16; ++p)
    if (!mask.allows(p) && worst[p] >= tol) report.offending.push_back({p, worst[p]});
  report.mask_ok = report.offending.empty();

  report.overall = report.is_psd && report.trace_ok && report.mask_ok;
  return report;
}

CMatrix project_to_valid_span(const CMatrix& h, const SystemLayout& layout, bool normalize,
                              MaskVariant variant) {
  const Shape shape = layout.shape();
  shape.require_matches(h, "project_to_valid_span");
  const TermMask mask = allowed_term_mask(variant);
  CMatrix out = keep_patterns(h, shape, [&](Pattern p) { return mask.allows(p); });
  if (normalize) {
    const double n = static_cast<double>(layout.d_total());
    const double shift =
        (static_cast<double>(layout.output_product()) - out.trace().real()) / n;
    for (std::size_t i = 0; i < out.rows(); ++i) out(i, i) += shift;
  }
  return out;
}

ProcessMatrix random_process(std::uint64_t seed, const SystemLayout& layout, double strength) {
  if (!(strength > 0.0 && strength < 1.0))
    throw ContractViolation("random_process: strength must lie in (0,1)");
  const std::size_t n = layout.d_total();
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  CMatrix g(n, n);
  for (auto& e : g.entries()) e = complex(normal(rng), normal(rng));

  CMatrix traceless = project_to_valid_span(hermitian_part(g), layout);
  const complex shift = traceless.trace() / static_cast<double>(n);
  for (std::size_t i = 0; i < n; ++i) traceless(i, i) -= shift;

  const double d = static_cast<double>(layout.d());
  CMatrix w = CMatrix::identity(n);
  if (traceless.frobenius_norm() > 1e-12) {
    const double lam = min_eigenvalue(traceless);
    const double t = strength / std::abs(lam);
    w += traceless * t;
  }
  w *= 1.0 / d;
  return ProcessMatrix(layout, hermitian_part(w));
}

ProcessMatrix identity_process(const SystemLayout& layout) {
  const std::size_t n = layout.d_total();
  return ProcessMatrix(layout, CMatrix::identity(n) * (1.0 / static_cast<double>(layout.d())));
}

ProcessMatrix channel_process(const SystemLayout& layout) {
  if (layout.d_a2() != layout.d_b1())
    throw ShapeError("channel_process: Alice's output and Bob's input dimensions differ");
  const std::size_t k = layout.d_a2();
  CMatrix phi(k * k, k * k);  // sum_{jl} |jj><ll|
  for (std::size_t j = 0; j < k; ++j)
    for (std::size_t l = 0; l < k; ++l) phi(j * k + j, l * k + l) = 1.0;
  CMatrix w = tensor_product({CMatrix::identity(layout.d_a1()) *
                                  (1.0 / static_cast<double>(layout.d_a1())),
                              phi, CMatrix::identity(layout.d_b2())});
  return ProcessMatrix(layout, std::move(w));
}

}  // namespace procmat
