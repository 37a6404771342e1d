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

#include <cstdlib>
#include <stdexcept>
#include <string>

#include "nvsync/spinalg/kernels.hpp"

namespace nvsync::kernels {
namespace {

constexpr KernelTable kScalar{Isa::scalar, &scalar::gemm, &scalar::dotc, &scalar::diag_left};
#if NVSYNC_HAVE_AVX2_KERNELS
constexpr KernelTable kAvx2{Isa::avx2, &avx2::gemm, &avx2::dotc, &avx2::diag_left};
#endif

const KernelTable& resolve() {
  if (const char* env = std::getenv("NVSYNC_ISA")) {
    const std::string want(env);
    if (want == "scalar") return kScalar;
    if (want == "avx2") return table_for(Isa::avx2);
    if (!want.empty() && want != "auto") {
      throw std::runtime_error("NVSYNC_ISA must be one of auto, scalar, avx2; got '" + want +
                               "'");
    }
  }
  return cpu_has_avx2() ? table_for(Isa::avx2) : kScalar;
}

}  // namespace

bool cpu_has_avx2() {
#if NVSYNC_HAVE_AVX2_KERNELS && (defined(__GNUC__) || defined(__clang__))
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
  return false;
#endif
}

const KernelTable& table_for(Isa isa) {
  if (isa == Isa::scalar) return kScalar;
#if NVSYNC_HAVE_AVX2_KERNELS
  if (cpu_has_avx2()) return kAvx2;
#endif
  throw std::runtime_error("AVX2 kernels requested but not supported on this CPU");
}

const KernelTable& active() {
  static const KernelTable& table = resolve();
  return table;
}

std::string_view isa_name(Isa isa) {
  switch (isa) {
    case Isa::scalar:
      return "scalar";
    case Isa::avx2:
      return "avx2";
  }
  return "unknown";
}

}  // namespace nvsync::kernels
