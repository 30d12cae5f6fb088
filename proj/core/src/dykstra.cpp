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

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "procmat/eigen.hpp"
#include "procmat/errors.hpp"
#include "procmat/separability.hpp"

namespace procmat {

namespace {

// PSD projection that reuses the previous eigenbasis as a starting guess.
class WarmPsd {
 public:
  explicit WarmPsd(std::size_t n) : guess_(CMatrix::identity(n)) {}

  CMatrix project(const CMatrix& m) {
    auto eig = hermitian_eig_warm(hermitian_part(m), guess_);
    guess_ = eig.vectors;
    return psd_part(eig);
  }

  // Frobenius distance from `m` to the PSD cone.
  double distance(const CMatrix& m) {
    auto eig = hermitian_eig_warm(hermitian_part(m), guess_);
    guess_ = eig.vectors;
    double s = 0.0;
    for (double lam : eig.values)
      if (lam < 0.0) s += lam * lam;
    return std::sqrt(s);
  }

 private:
  CMatrix guess_;
};

CMatrix project_span(const CMatrix& m, const SystemLayout& layout, MaskVariant variant) {
  const TermMask mask = allowed_term_mask(variant);
  return keep_patterns(m, layout.shape(), [&](Pattern p) { return mask.allows(p); });
}

// Nearest X with X in the A-before-B span and W - X in the B-before-A span.
CMatrix project_affine(const CMatrix& x, const CMatrix& w, const SystemLayout& layout) {
  const TermMask ab = allowed_term_mask(MaskVariant::a_before_b);
  const TermMask ba = allowed_term_mask(MaskVariant::b_before_a);
  const auto xs = pattern_components(x, layout.shape());
  const auto ws = pattern_components(w, layout.shape());
  CMatrix out(x.rows(), x.cols());
  for (Pattern p = 0; p < xs.size(); ++p) {
    if (ab.allows(p) && ba.allows(p)) {
      out += xs[p];
    } else if (ab.allows(p)) {
      out += ws[p];
    }
  }
  return hermitian_part(out);
}

std::optional<CausalDecomposition> extract(const CMatrix& x, const ProcessMatrix& w) {
  const SystemLayout& layout = w.layout();
  const CMatrix xa = project_affine(x, w.matrix(), layout);
  const double outputs = static_cast<double>(layout.output_product());
  const double p_raw = xa.trace().real() / outputs;
  CausalDecomposition dec{std::clamp(p_raw, 0.0, 1.0), std::nullopt, std::nullopt};
  if (dec.p >= 1.0 - kAbsentWeight) dec.p = 1.0;
  if (dec.p <= kAbsentWeight) dec.p = 0.0;
  try {
    if (dec.p > 0.0) dec.w_ab = ProcessMatrix(layout, xa * (1.0 / dec.p));
    if (dec.p < 1.0) dec.w_ba = ProcessMatrix(layout, (w.matrix() - xa) * (1.0 / (1.0 - dec.p)));
  } catch (const ContractViolation&) {
    return std::nullopt;
  }
  return dec;
}

constexpr std::size_t kBurnIn = 100;
constexpr std::size_t kResidualStride = 10;

}  // namespace

FeasibilityReport dykstra_separability(const ProcessMatrix& w, const DykstraOptions& options) {
  const ValidityReport validity = validate_process(w);
  if (!validity.overall) throw ContractViolation("dykstra_separability: W is not a valid process");

  const SystemLayout& layout = w.layout();
  const std::size_t n = layout.d_total();
  const CMatrix& wm = w.matrix();

  CMatrix x = wm * 0.5;
  std::vector<CMatrix> corrections(4, CMatrix(n, n));
  WarmPsd psd_x(n), psd_rest(n), dist_x(n), dist_rest(n);

  FeasibilityReport report;
  report.residual = std::numeric_limits<double>::infinity();
  std::vector<double> history;
  history.reserve(kBurnIn + options.max_iter / kResidualStride + 1);
  double target = options.tol;

  for (std::size_t it = 1; it <= options.max_iter; ++it) {
    CMatrix z = x + corrections[0];
    x = psd_x.project(z);
    corrections[0] = z - x;

    z = x + corrections[1];
    x = project_span(z, layout, MaskVariant::a_before_b);
    corrections[1] = z - x;

    z = x + corrections[2];
    x = wm - psd_rest.project(wm - z);
    corrections[2] = z - x;

    z = x + corrections[3];
    x = wm - project_span(wm - z, layout, MaskVariant::b_before_a);
    corrections[3] = z - x;

    report.iterations = it;
    // The membership residual costs two extra eigensolves; after a short
    // burn-in it is sampled every kResidualStride iterations.
    if (it > kBurnIn && it % kResidualStride != 0 && it != options.max_iter) continue;
    const double residual = std::max(
        {dist_x.distance(x),
         frobenius_distance(x, project_span(x, layout, MaskVariant::a_before_b)),
         dist_rest.distance(wm - x)});
    history.push_back(residual);
    report.residual = std::min(report.residual, residual);

    if (residual < target) {
      auto dec = extract(x, w);
      if (dec && verify_decomposition(w, *dec, options.tol).passed) {
        report.status = SeparabilityStatus::separable;
        report.residual = residual;
        report.decomposition = std::move(dec);
        return report;
      }
      // Converged in residual but the rescaled parts miss the validity
      // tolerances; keep iterating towards a tighter target.
      target = std::max(target * 0.1, 1e-15);
    }
  }

  const std::size_t window =
      std::max<std::size_t>(1, static_cast<std::size_t>(options.plateau_fraction * history.size()));
  report.plateau_residual = *std::min_element(history.end() - window, history.end());
  report.status = report.plateau_residual > 10.0 * options.tol
                      ? SeparabilityStatus::not_separable_up_to_tolerance
                      : SeparabilityStatus::inconclusive;
  return report;
}

}  // namespace procmat
