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

#pragma once

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

namespace nvsync {

using cplx = std::complex<double>;

/// Square, row-major, dense complex matrix. Value type; the small dimensions
/// used here (<= 18 for physical models, <= ~100 for quadrature) make copies
/// cheap.
class ComplexMatrix {
 public:
  ComplexMatrix() = default;
  /// Zero matrix of the given dimension.
  explicit ComplexMatrix(std::size_t dim);
  /// Row-major construction; rows.size() must be dim and every row of length dim.
  ComplexMatrix(std::initializer_list<std::initializer_list<cplx>> rows);

  static ComplexMatrix identity(std::size_t dim);
  static ComplexMatrix diagonal(std::span<const cplx> entries);
  static ComplexMatrix diagonal(std::span<const double> entries);

  std::size_t dim() const { return dim_; }
  bool empty() const { return dim_ == 0; }

  cplx& operator()(std::size_t row, std::size_t col) { return data_[row * dim_ + col]; }
  const cplx& operator()(std::size_t row, std::size_t col) const {
    return data_[row * dim_ + col];
  }

  std::span<cplx> data() { return data_; }
  std::span<const cplx> data() const { return data_; }

  ComplexMatrix adjoint() const;

  ComplexMatrix& operator+=(const ComplexMatrix& other);
  ComplexMatrix& operator-=(const ComplexMatrix& other);
  ComplexMatrix& operator*=(cplx scale);

  friend ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b) { return a += b; }
  friend ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b) { return a -= b; }
  friend ComplexMatrix operator*(ComplexMatrix a, cplx s) { return a *= s; }
  friend ComplexMatrix operator*(cplx s, ComplexMatrix a) { return a *= s; }
  friend ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b);

  double max_abs() const;

  /// M == M^dagger to within rel_tol * max|M| (absolute rel_tol for the zero matrix).
  bool is_hermitian(double rel_tol = 1e-12) const;
  /// ||U^dagger U - I||_max <= tol.
  bool is_unitary(double tol = 1e-10) const;

  friend bool operator==(const ComplexMatrix&, const ComplexMatrix&) = default;

 private:
  std::size_t dim_ = 0;
  std::vector<cplx> data_;
};

/// Kronecker product; dim = a.dim() * b.dim().
ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);

cplx trace(const ComplexMatrix& m);
/// Tr(a^dagger b).
cplx trace_adjoint_product(const ComplexMatrix& a, const ComplexMatrix& b);
/// diag(d) * m.
ComplexMatrix diag_times(std::span<const cplx> d, const ComplexMatrix& m);
/// a*b - b*a.
ComplexMatrix commutator(const ComplexMatrix& a, const ComplexMatrix& b);
double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b);
/// Rows and columns picked by `indices`, in that order.
ComplexMatrix submatrix(const ComplexMatrix& m, std::span<const std::size_t> indices);

}  // namespace nvsync
