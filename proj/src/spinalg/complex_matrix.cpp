// Copyright 2026 The nvsync Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "nvsync/spinalg/complex_matrix.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "nvsync/spinalg/kernels.hpp"

namespace nvsync {
namespace {

void require_same_dim(const ComplexMatrix& a, const ComplexMatrix& b, const char* what) {
  if (a.dim() != b.dim()) {
    throw std::invalid_argument(std::string(what) + ": dimension mismatch (" +
                                std::to_string(a.dim()) + " vs " + std::to_string(b.dim()) +
                                ")");
  }
}

}  // namespace

ComplexMatrix::ComplexMatrix(std::size_t dim) : dim_(dim), data_(dim * dim) {}

ComplexMatrix::ComplexMatrix(std::initializer_list<std::initializer_list<cplx>> rows)
    : ComplexMatrix(rows.size()) {
  std::size_t i = 0;
  for (const auto& row : rows) {
    if (row.size() != dim_) throw std::invalid_argument("ComplexMatrix: ragged initializer");
    std::copy(row.begin(), row.end(), data_.begin() + static_cast<std::ptrdiff_t>(i * dim_));
    ++i;
  }
}

ComplexMatrix ComplexMatrix::identity(std::size_t dim) {
  ComplexMatrix m(dim);
  for (std::size_t i = 0; i < dim; ++i) m(i, i) = 1.0;
  return m;
}

ComplexMatrix ComplexMatrix::diagonal(std::span<const cplx> entries) {
  ComplexMatrix m(entries.size());
  for (std::size_t i = 0; i < entries.size(); ++i) m(i, i) = entries[i];
  return m;
}

ComplexMatrix ComplexMatrix::diagonal(std::span<const double> entries) {
  ComplexMatrix m(entries.size());
  for (std::size_t i = 0; i < entries.size(); ++i) m(i, i) = entries[i];
  return m;
}

ComplexMatrix ComplexMatrix::adjoint() const {
  ComplexMatrix out(dim_);
  for (std::size_t i = 0; i < dim_; ++i)
    for (std::size_t j = 0; j < dim_; ++j) out(j, i) = std::conj((*this)(i, j));
  return out;
}

ComplexMatrix& ComplexMatrix::operator+=(const ComplexMatrix& other) {
  require_same_dim(*this, other, "operator+=");
  for (std::size_t k = 0; k < data_.size(); ++k) data_[k] += other.data_[k];
  return *this;
}

ComplexMatrix& ComplexMatrix::operator-=(const ComplexMatrix& other) {
  require_same_dim(*this, other, "operator-=");
  for (std::size_t k = 0; k < data_.size(); ++k) data_[k] -= other.data_[k];
  return *this;
}

ComplexMatrix& ComplexMatrix::operator*=(cplx scale) {
  for (auto& v : data_) v *= scale;
  return *this;
}

ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b) {
  require_same_dim(a, b, "operator*");
  ComplexMatrix c(a.dim());
  kernels::active().gemm(a.dim(), a.data().data(), b.data().data(), c.data().data());
  return c;
}

double ComplexMatrix::max_abs() const {
  double m = 0.0;
  for (const auto& v : data_) m = std::max(m, std::abs(v));
  return m;
}

bool ComplexMatrix::is_hermitian(double rel_tol) const {
  const double scale = std::max(max_abs(), 1.0e-300);
  const double tol = max_abs() > 0.0 ? rel_tol * scale : rel_tol;
  for (std::size_t i = 0; i < dim_; ++i)
    for (std::size_t j = i; j < dim_; ++j)
      if (std::abs((*this)(i, j) - std::conj((*this)(j, i))) > tol) return false;
  return true;
}

bool ComplexMatrix::is_unitary(double tol) const {
  return max_abs_diff(adjoint() * *this, identity(dim_)) <= tol;
}

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
  const std::size_t na = a.dim();
  const std::size_t nb = b.dim();
  ComplexMatrix out(na * nb);
  for (std::size_t i = 0; i < na; ++i)
    for (std::size_t j = 0; j < na; ++j) {
      const cplx aij = a(i, j);
      if (aij == cplx{}) continue;
      for (std::size_t k = 0; k < nb; ++k)
        for (std::size_t l = 0; l < nb; ++l) out(i * nb + k, j * nb + l) = aij * b(k, l);
    }
  return out;
}

cplx trace(const ComplexMatrix& m) {
  cplx t{};
  for (std::size_t i = 0; i < m.dim(); ++i) t += m(i, i);
  return t;
}

cplx trace_adjoint_product(const ComplexMatrix& a, const ComplexMatrix& b) {
  require_same_dim(a, b, "trace_adjoint_product");
  return kernels::active().dotc(a.data().size(), a.data().data(), b.data().data());
}

ComplexMatrix diag_times(std::span<const cplx> d, const ComplexMatrix& m) {
  if (d.size() != m.dim()) throw std::invalid_argument("diag_times: dimension mismatch");
  ComplexMatrix out(m.dim());
  kernels::active().diag_left(m.dim(), d.data(), m.data().data(), out.data().data());
  return out;
}

ComplexMatrix commutator(const ComplexMatrix& a, const ComplexMatrix& b) {
  return a * b - b * a;
}

double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b) {
  require_same_dim(a, b, "max_abs_diff");
  double m = 0.0;
  for (std::size_t k = 0; k < a.data().size(); ++k)
    m = std::max(m, std::abs(a.data()[k] - b.data()[k]));
  return m;
}

ComplexMatrix submatrix(const ComplexMatrix& m, std::span<const std::size_t> indices) {
  ComplexMatrix out(indices.size());
  for (std::size_t i = 0; i < indices.size(); ++i)
    for (std::size_t j = 0; j < indices.size(); ++j) {
      if (indices[i] >= m.dim() || indices[j] >= m.dim())
        throw std::out_of_range("submatrix: index out of range");
      out(i, j) = m(indices[i], indices[j]);
    }
  return out;
}

}  // namespace nvsync
