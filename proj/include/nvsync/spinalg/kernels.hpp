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

// Dense complex inner loops used by ComplexMatrix.
//
// Every kernel has a portable scalar reference implementation and, on x86-64,
// an AVX2+FMA variant built in its own translation unit. The variant is picked
// once at first use from CPUID; NVSYNC_ISA=scalar forces the reference path.
// All matrices are row-major, interleaved (re, im) std::complex<double>.

#include <complex>
#include <cstddef>
#include <string_view>

namespace nvsync::kernels {

using cplx = std::complex<double>;

enum class Isa { scalar, avx2 };

// c = a * b for n x n matrices. c must not alias a or b.
using GemmFn = void (*)(std::size_t n, const cplx* a, const cplx* b, cplx* c);
// Returns sum_k conj(a[k]) * b[k] over len entries, i.e. Tr(A^dagger B) for matrices.
using DotcFn = cplx (*)(std::size_t len, const cplx* a, const cplx* b);
// c[i, j] = d[i] * a[i, j] (left multiplication by a diagonal matrix).
using DiagLeftFn = void (*)(std::size_t n, const cplx* d, const cplx* a, cplx* c);

namespace scalar {
void gemm(std::size_t n, const cplx* a, const cplx* b, cplx* c);
cplx dotc(std::size_t len, const cplx* a, const cplx* b);
void diag_left(std::size_t n, const cplx* d, const cplx* a, cplx* c);
}  // namespace scalar

#if defined(__x86_64__) || defined(_M_X64)
#define NVSYNC_HAVE_AVX2_KERNELS 1
namespace avx2 {
void gemm(std::size_t n, const cplx* a, const cplx* b, cplx* c);
cplx dotc(std::size_t len, const cplx* a, const cplx* b);
void diag_left(std::size_t n, const cplx* d, const cplx* a, cplx* c);
}  // namespace avx2
#else
#define NVSYNC_HAVE_AVX2_KERNELS 0
#endif

struct KernelTable {
  Isa isa;
  GemmFn gemm;
  DotcFn dotc;
  DiagLeftFn diag_left;
};

/// True when the running CPU can execute the AVX2 variants.
bool cpu_has_avx2();

/// Kernel table for an explicit ISA. Throws std::runtime_error if the CPU
/// cannot run it.
const KernelTable& table_for(Isa isa);

/// The table used by ComplexMatrix, resolved once per process.
const KernelTable& active();

std::string_view isa_name(Isa isa);

}  // namespace nvsync::kernels
