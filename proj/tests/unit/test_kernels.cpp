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

#include <gtest/gtest.h>

#include <random>
#include <vector>

#include "nvsync/spinalg/complex_matrix.hpp"
#include "nvsync/spinalg/kernels.hpp"
#include "oracles.hpp"

namespace nvsync::kernels {
namespace {

std::vector<cplx> random_vector(std::size_t len, std::mt19937_64& rng) {
  std::normal_distribution<double> g(0.0, 1.0);
  std::vector<cplx> v(len);
  for (auto& x : v) x = cplx(g(rng), g(rng));
  return v;
}

double max_diff(const std::vector<cplx>& a, const std::vector<cplx>& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

TEST(Kernels, ScalarGemmMatchesNaiveProduct) {
  std::mt19937_64 rng(1);
  for (std::size_t n : {1u, 2u, 3u, 7u, 12u, 18u}) {
    ComplexMatrix a(n);
    ComplexMatrix b(n);
    const auto va = random_vector(n * n, rng);
    const auto vb = random_vector(n * n, rng);
    std::copy(va.begin(), va.end(), a.data().begin());
    std::copy(vb.begin(), vb.end(), b.data().begin());
    std::vector<cplx> c(n * n);
    scalar::gemm(n, va.data(), vb.data(), c.data());
    const auto ref = oracle::naive_mul(a, b);
    std::vector<cplx> want(ref.data().begin(), ref.data().end());
    EXPECT_LE(max_diff(c, want), 1e-13 * static_cast<double>(n));
  }
}

TEST(Kernels, ScalarGemmKeepsExactZeros) {
  // Block-diagonal inputs must give exact zeros off the blocks.
  const std::size_t n = 4;
  std::vector<cplx> a(n * n), b(n * n), c(n * n);
  a[0] = b[0] = 2.0;
  a[1 * n + 1] = b[1 * n + 1] = cplx(0.0, 1.0);
  a[2 * n + 3] = b[3 * n + 2] = 1.5;
  scalar::gemm(n, a.data(), b.data(), c.data());
  EXPECT_EQ(c[0 * n + 1], cplx{});
  EXPECT_EQ(c[2 * n + 0], cplx{});
}

class Avx2Equivalence : public ::testing::Test {
 protected:
  void SetUp() override {
    if (!NVSYNC_HAVE_AVX2_KERNELS || !cpu_has_avx2()) GTEST_SKIP() << "AVX2 not available";
  }
};

TEST_F(Avx2Equivalence, Gemm) {
#if NVSYNC_HAVE_AVX2_KERNELS
  std::mt19937_64 rng(2);
  for (std::size_t n = 1; n <= 40; ++n) {
    const auto a = random_vector(n * n, rng);
    const auto b = random_vector(n * n, rng);
    std::vector<cplx> c_ref(n * n), c_simd(n * n);
    scalar::gemm(n, a.data(), b.data(), c_ref.data());
    avx2::gemm(n, a.data(), b.data(), c_simd.data());
    EXPECT_LE(max_diff(c_ref, c_simd), 1e-13 * static_cast<double>(n)) << "n = " << n;
  }
#endif
}

TEST_F(Avx2Equivalence, Dotc) {
#if NVSYNC_HAVE_AVX2_KERNELS
  std::mt19937_64 rng(3);
  for (std::size_t len = 0; len <= 130; ++len) {
    const auto a = random_vector(len, rng);
    const auto b = random_vector(len, rng);
    const cplx ref = scalar::dotc(len, a.data(), b.data());
    const cplx simd = avx2::dotc(len, a.data(), b.data());
    EXPECT_LE(std::abs(ref - simd), 1e-13 * static_cast<double>(len + 1)) << "len = " << len;
  }
#endif
}

TEST_F(Avx2Equivalence, DiagLeft) {
#if NVSYNC_HAVE_AVX2_KERNELS
  std::mt19937_64 rng(4);
  for (std::size_t n = 1; n <= 25; ++n) {
    const auto d = random_vector(n, rng);
    const auto a = random_vector(n * n, rng);
    std::vector<cplx> c_ref(n * n), c_simd(n * n);
    scalar::diag_left(n, d.data(), a.data(), c_ref.data());
    avx2::diag_left(n, d.data(), a.data(), c_simd.data());
    EXPECT_LE(max_diff(c_ref, c_simd), 1e-14) << "n = " << n;
  }
#endif
}

TEST_F(Avx2Equivalence, GemmKeepsExactZeros) {
#if NVSYNC_HAVE_AVX2_KERNELS
  const std::size_t n = 12;
  std::mt19937_64 rng(5);
  std::vector<cplx> a(n * n), b(n * n), c(n * n);
  std::normal_distribution<double> g(0.0, 1.0);
  // 2x2 blocks on the diagonal, as in every rotating-frame propagator.
  for (std::size_t blk = 0; blk < n; blk += 2)
    for (std::size_t i = blk; i < blk + 2; ++i)
      for (std::size_t j = blk; j < blk + 2; ++j) {
        a[i * n + j] = cplx(g(rng), g(rng));
        b[i * n + j] = cplx(g(rng), g(rng));
      }
  avx2::gemm(n, a.data(), b.data(), c.data());
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (i / 2 != j / 2) {
        EXPECT_EQ(c[i * n + j], cplx{}) << i << "," << j;
      }
#endif
}

TEST(Kernels, TablesAndNames) {
  EXPECT_EQ(table_for(Isa::scalar).isa, Isa::scalar);
  EXPECT_EQ(isa_name(Isa::scalar), "scalar");
  EXPECT_EQ(isa_name(Isa::avx2), "avx2");
  const Isa active_isa = active().isa;
  EXPECT_TRUE(active_isa == Isa::scalar || active_isa == Isa::avx2);
  if (!cpu_has_avx2()) {
    EXPECT_THROW(table_for(Isa::avx2), std::runtime_error);
  }
}

}  // namespace
}  // namespace nvsync::kernels
