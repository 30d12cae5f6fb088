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

#include "procmat/tensor.hpp"

#include <algorithm>
#include <string>

#include "procmat/errors.hpp"

namespace procmat {

Shape::Shape(std::vector<std::size_t> factor_dims) : dims_(std::move(factor_dims)), total_(1) {
  if (dims_.empty()) throw ShapeError("Shape: at least one factor required");
  strides_.resize(dims_.size());
  for (std::size_t k = dims_.size(); k-- > 0;) {
    if (dims_[k] == 0) throw ShapeError("Shape: factor dimensions must be positive");
    strides_[k] = total_;
    total_ *= dims_[k];
  }
}

void Shape::require_matches(const CMatrix& m, const char* what) const {
  if (!m.is_square() || m.rows() != total_) {
    throw ShapeError(std::string(what) + ": matrix side " + std::to_string(m.rows()) +
                     " does not match shape total " + std::to_string(total_));
  }
}

CMatrix kron(const CMatrix& a, const CMatrix& b) {
  CMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) {
      const complex aij = a(i, j);
      if (aij == complex{}) continue;
      for (std::size_t k = 0; k < b.rows(); ++k)
        for (std::size_t l = 0; l < b.cols(); ++l)
          out(i * b.rows() + k, j * b.cols() + l) = aij * b(k, l);
    }
  return out;
}

Vector kron(std::span<const complex> a, std::span<const complex> b) {
  Vector out(a.size() * b.size());
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t k = 0; k < b.size(); ++k) out[i * b.size() + k] = a[i] * b[k];
  return out;
}

CMatrix tensor_product(std::span<const CMatrix> factors) {
  if (factors.empty()) throw ShapeError("tensor_product: empty factor list");
  CMatrix out = factors.front();
  for (std::size_t k = 1; k < factors.size(); ++k) out = kron(out, factors[k]);
  return out;
}

CMatrix tensor_product(std::initializer_list<CMatrix> factors) {
  return tensor_product(std::span<const CMatrix>(factors.begin(), factors.size()));
}

namespace {

std::vector<bool> factor_flags(const Shape& shape, std::span<const std::size_t> subset,
                               const char* what) {
  std::vector<bool> flags(shape.factors(), false);
  for (std::size_t k : subset) {
    if (k >= shape.factors()) {
      throw ShapeError(std::string(what) + ": factor index " + std::to_string(k) +
                       " out of range for " + std::to_string(shape.factors()) + " factors");
    }
    flags[k] = true;
  }
  return flags;
}

}  // namespace

CMatrix partial_trace(const CMatrix& m, const Shape& shape, std::span<const std::size_t> keep) {
  shape.require_matches(m, "partial_trace");
  const auto kept = factor_flags(shape, keep, "partial_trace");

  std::vector<std::size_t> kept_dims;
  for (std::size_t k = 0; k < shape.factors(); ++k)
    if (kept[k]) kept_dims.push_back(shape.dim(k));
  std::size_t out_dim = 1;
  for (auto d : kept_dims) out_dim *= d;

  // Flat index -> (kept index, traced index).
  const std::size_t n = shape.total();
  std::vector<std::size_t> kept_index(n), traced_index(n);
  for (std::size_t i = 0; i < n; ++i) {
    std::size_t ki = 0, ti = 0;
    for (std::size_t k = 0; k < shape.factors(); ++k) {
      const std::size_t digit = shape.digit(i, k);
      if (kept[k]) {
        ki = ki * shape.dim(k) + digit;
      } else {
        ti = ti * shape.dim(k) + digit;
      }
    }
    kept_index[i] = ki;
    traced_index[i] = ti;
  }

  CMatrix out(out_dim, out_dim);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (traced_index[i] == traced_index[j]) out(kept_index[i], kept_index[j]) += m(i, j);
  return out;
}

CMatrix partial_trace(const CMatrix& m, const Shape& shape,
                      std::initializer_list<std::size_t> keep) {
  return partial_trace(m, shape, std::span<const std::size_t>(keep.begin(), keep.size()));
}

CMatrix partial_transpose(const CMatrix& m, const Shape& shape,
                          std::span<const std::size_t> subset) {
  shape.require_matches(m, "partial_transpose");
  const auto flip = factor_flags(shape, subset, "partial_transpose");
  const std::size_t n = shape.total();
  CMatrix out(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      std::size_t ti = i, tj = j;
      for (std::size_t k = 0; k < shape.factors(); ++k) {
        if (!flip[k]) continue;
        const std::size_t di = shape.digit(i, k), dj = shape.digit(j, k);
        const std::size_t s = shape.stride(k);
        ti = ti - di * s + dj * s;
        tj = tj - dj * s + di * s;
      }
      out(ti, tj) = m(i, j);
    }
  }
  return out;
}

CMatrix partial_transpose(const CMatrix& m, const Shape& shape,
                          std::initializer_list<std::size_t> subset) {
  return partial_transpose(m, shape, std::span<const std::size_t>(subset.begin(), subset.size()));
}

CMatrix trivialize_factor(const CMatrix& m, const Shape& shape, std::size_t k) {
  shape.require_matches(m, "trivialize_factor");
  if (k >= shape.factors()) throw ShapeError("trivialize_factor: factor index out of range");
  const std::size_t n = shape.total();
  const std::size_t d = shape.dim(k);
  const std::size_t s = shape.stride(k);

  // reduced(i0, j0) = sum_a m(i0 + a s, j0 + a s) for indices with digit k zero.
  CMatrix reduced(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t di = shape.digit(i, k);
    const std::size_t i0 = i - di * s;
    const std::size_t j_base = di * s;
    for (std::size_t j0 = 0; j0 < n; ++j0) {
      if (shape.digit(j0, k) != 0) continue;
      reduced(i0, j0) += m(i, j0 + j_base);
    }
  }
  CMatrix out(n, n);
  const double inv_d = 1.0 / static_cast<double>(d);
  for (std::size_t i0 = 0; i0 < n; ++i0) {
    if (shape.digit(i0, k) != 0) continue;
    for (std::size_t j0 = 0; j0 < n; ++j0) {
      if (shape.digit(j0, k) != 0) continue;
      const complex v = reduced(i0, j0) * inv_d;
      for (std::size_t a = 0; a < d; ++a) out(i0 + a * s, j0 + a * s) = v;
    }
  }
  return out;
}

std::vector<CMatrix> pattern_components(const CMatrix& m, const Shape& shape) {
  shape.require_matches(m, "pattern_components");
  std::vector<CMatrix> parts{m};
  for (std::size_t k = 0; k < shape.factors(); ++k) {
    std::vector<CMatrix> next;
    next.reserve(parts.size() * 2);
    // Component index keeps bit k for "traceless on k"; lower bits already set.
    for (const auto& part : parts) next.push_back(trivialize_factor(part, shape, k));
    for (std::size_t p = 0; p < parts.size(); ++p) next.push_back(parts[p] - next[p]);
    // next[p] has bit k clear, next[parts.size() + p] has bit k set.
    parts = std::move(next);
  }
  return parts;
}

}  // namespace procmat
