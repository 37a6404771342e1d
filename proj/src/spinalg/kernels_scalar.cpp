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

#include "nvsync/spinalg/kernels.hpp"

namespace nvsync::kernels::scalar {

void gemm(std::size_t n, const cplx* a, const cplx* b, cplx* c) {
  for (std::size_t i = 0; i < n; ++i) {
    double* crow = reinterpret_cast<double*>(c + i * n);
    for (std::size_t j = 0; j < 2 * n; ++j) crow[j] = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
      const double ar = a[i * n + k].real();
      const double ai = a[i * n + k].imag();
      if (ar == 0.0 && ai == 0.0) continue;
      const double* brow = reinterpret_cast<const double*>(b + k * n);
      for (std::size_t j = 0; j < n; ++j) {
        const double br = brow[2 * j];
        const double bi = brow[2 * j + 1];
        crow[2 * j] += ar * br - ai * bi;
        crow[2 * j + 1] += ar * bi + ai * br;
      }
    }
  }
}

cplx dotc(std::size_t len, const cplx* a, const cplx* b) {
  double re = 0.0;
  double im = 0.0;
  for (std::size_t k = 0; k < len; ++k) {
    const double ar = a[k].real();
    const double ai = a[k].imag();
    const double br = b[k].real();
    const double bi = b[k].imag();
    re += ar * br + ai * bi;
    im += ar * bi - ai * br;
  }
  return {re, im};
}

void diag_left(std::size_t n, const cplx* d, const cplx* a, cplx* c) {
  for (std::size_t i = 0; i < n; ++i) {
    const double dr = d[i].real();
    const double di = d[i].imag();
    for (std::size_t j = 0; j < n; ++j) {
      const double ar = a[i * n + j].real();
      const double ai = a[i * n + j].imag();
      c[i * n + j] = cplx(dr * ar - di * ai, dr * ai + di * ar);
    }
  }
}

}  // namespace nvsync::kernels::scalar
