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

// Compiled with -mavx2 -mfma. Nothing in here may run before the dispatcher
// has confirmed CPU support.

#include "nvsync/spinalg/kernels.hpp"

#if NVSYNC_HAVE_AVX2_KERNELS

#include <immintrin.h>

namespace nvsync::kernels::avx2 {
namespace {

// (ar + i ai) * (two packed complex values in b)
inline __m256d cmul_bcast(__m256d ar, __m256d ai, __m256d b) {
  const __m256d bswap = _mm256_permute_pd(b, 0b0101);
  return _mm256_fmaddsub_pd(ar, b, _mm256_mul_pd(ai, bswap));
}

inline __m128d cmul_bcast(__m128d ar, __m128d ai, __m128d b) {
  const __m128d bswap = _mm_permute_pd(b, 0b01);
  return _mm_fmaddsub_pd(ar, b, _mm_mul_pd(ai, bswap));
}

}  // namespace

void gemm(std::size_t n, const cplx* a, const cplx* b, cplx* c) {
  const double* bd = reinterpret_cast<const double*>(b);
  for (std::size_t i = 0; i < n; ++i) {
    double* crow = reinterpret_cast<double*>(c + i * n);
    std::size_t j = 0;
    // Eight complex columns per pass, accumulators held in registers over k.
    for (; j + 8 <= n; j += 8) {
      __m256d acc0 = _mm256_setzero_pd();
      __m256d acc1 = _mm256_setzero_pd();
      __m256d acc2 = _mm256_setzero_pd();
      __m256d acc3 = _mm256_setzero_pd();
      for (std::size_t k = 0; k < n; ++k) {
        const cplx aik = a[i * n + k];
        if (aik.real() == 0.0 && aik.imag() == 0.0) continue;
        const __m256d ar = _mm256_set1_pd(aik.real());
        const __m256d ai = _mm256_set1_pd(aik.imag());
        const double* brow = bd + 2 * (k * n + j);
        acc0 = _mm256_add_pd(acc0, cmul_bcast(ar, ai, _mm256_loadu_pd(brow)));
        acc1 = _mm256_add_pd(acc1, cmul_bcast(ar, ai, _mm256_loadu_pd(brow + 4)));
        acc2 = _mm256_add_pd(acc2, cmul_bcast(ar, ai, _mm256_loadu_pd(brow + 8)));
        acc3 = _mm256_add_pd(acc3, cmul_bcast(ar, ai, _mm256_loadu_pd(brow + 12)));
      }
      _mm256_storeu_pd(crow + 2 * j, acc0);
      _mm256_storeu_pd(crow + 2 * j + 4, acc1);
      _mm256_storeu_pd(crow + 2 * j + 8, acc2);
      _mm256_storeu_pd(crow + 2 * j + 12, acc3);
    }
    for (; j + 2 <= n; j += 2) {
      __m256d acc = _mm256_setzero_pd();
      for (std::size_t k = 0; k < n; ++k) {
        const cplx aik = a[i * n + k];
        if (aik.real() == 0.0 && aik.imag() == 0.0) continue;
        const __m256d ar = _mm256_set1_pd(aik.real());
        const __m256d ai = _mm256_set1_pd(aik.imag());
        acc = _mm256_add_pd(acc, cmul_bcast(ar, ai, _mm256_loadu_pd(bd + 2 * (k * n + j))));
      }
      _mm256_storeu_pd(crow + 2 * j, acc);
    }
    if (j < n) {
      __m128d acc = _mm_setzero_pd();
      for (std::size_t k = 0; k < n; ++k) {
        const cplx aik = a[i * n + k];
        if (aik.real() == 0.0 && aik.imag() == 0.0) continue;
        const __m128d ar = _mm_set1_pd(aik.real());
        const __m128d ai = _mm_set1_pd(aik.imag());
        acc = _mm_add_pd(acc, cmul_bcast(ar, ai, _mm_loadu_pd(bd + 2 * (k * n + j))));
      }
      _mm_storeu_pd(crow + 2 * j, acc);
    }
  }
}

cplx dotc(std::size_t len, const cplx* a, const cplx* b) {
  const double* ad = reinterpret_cast<const double*>(a);
  const double* bd = reinterpret_cast<const double*>(b);
  // re accumulates ar*br + ai*bi lane-wise; im accumulates ar*bi - ai*br.
  __m256d re = _mm256_setzero_pd();
  __m256d im = _mm256_setzero_pd();
  std::size_t k = 0;
  for (; k + 2 <= len; k += 2) {
    const __m256d av = _mm256_loadu_pd(ad + 2 * k);
    const __m256d bv = _mm256_loadu_pd(bd + 2 * k);
    re = _mm256_fmadd_pd(av, bv, re);
    im = _mm256_fmadd_pd(av, _mm256_permute_pd(bv, 0b0101), im);
  }
  alignas(32) double r[4];
  alignas(32) double s[4];
  _mm256_store_pd(r, re);
  _mm256_store_pd(s, im);
  // r = (ar0 br0, ai0 bi0, ar1 br1, ai1 bi1); s = (ar0 bi0, ai0 br0, ...)
  double sum_re = (r[0] + r[1]) + (r[2] + r[3]);
  double sum_im = (s[0] - s[1]) + (s[2] - s[3]);
  for (; k < len; ++k) {
    sum_re += a[k].real() * b[k].real() + a[k].imag() * b[k].imag();
    sum_im += a[k].real() * b[k].imag() - a[k].imag() * b[k].real();
  }
  return {sum_re, sum_im};
}

void diag_left(std::size_t n, const cplx* d, const cplx* a, cplx* c) {
  const double* ad = reinterpret_cast<const double*>(a);
  double* cd = reinterpret_cast<double*>(c);
  for (std::size_t i = 0; i < n; ++i) {
    const __m256d dr = _mm256_set1_pd(d[i].real());
    const __m256d di = _mm256_set1_pd(d[i].imag());
    std::size_t j = 0;
    for (; j + 2 <= n; j += 2) {
      const std::size_t off = 2 * (i * n + j);
      _mm256_storeu_pd(cd + off, cmul_bcast(dr, di, _mm256_loadu_pd(ad + off)));
    }
    if (j < n) {
      const std::size_t off = 2 * (i * n + j);
      const __m128d r = cmul_bcast(_mm_set1_pd(d[i].real()), _mm_set1_pd(d[i].imag()),
                                   _mm_loadu_pd(ad + off));
      _mm_storeu_pd(cd + off, r);
    }
  }
}

}  // namespace nvsync::kernels::avx2

#endif
