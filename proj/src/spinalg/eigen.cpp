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

#include "nvsync/spinalg/eigen.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace nvsync {
namespace {

constexpr int kMaxSweeps = 64;

double off_diagonal_norm2(const ComplexMatrix& a) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.dim(); ++i)
    for (std::size_t j = i + 1; j < a.dim(); ++j) s += std::norm(a(i, j));
  return s;
}

// One complex Jacobi rotation zeroing a(p, q). The rotation is
// G = D * R with D = diag(1, exp(-i phi)) on (p, q) making the pair real and R
// the real symmetric Jacobi rotation.
void rotate(ComplexMatrix& a, ComplexMatrix& v, std::size_t p, std::size_t q) {
  const cplx apq = a(p, q);
  const double mag = std::abs(apq);
  const cplx phase = apq / mag;  // exp(i phi)
  const double app = a(p, p).real();
  const double aqq = a(q, q).real();
  const double theta = (aqq - app) / (2.0 * mag);
  const double t = (theta >= 0.0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
  const double c = 1.0 / std::sqrt(t * t + 1.0);
  const double s = t * c;

  const cplx g_pp = c;
  const cplx g_pq = s;
  const cplx g_qp = -s * std::conj(phase);
  const cplx g_qq = c * std::conj(phase);
  const std::size_t n = a.dim();

  // a <- a G (columns p, q), v <- v G
  for (std::size_t k = 0; k < n; ++k) {
    const cplx akp = a(k, p);
    const cplx akq = a(k, q);
    a(k, p) = akp * g_pp + akq * g_qp;
    a(k, q) = akp * g_pq + akq * g_qq;
    const cplx vkp = v(k, p);
    const cplx vkq = v(k, q);
    v(k, p) = vkp * g_pp + vkq * g_qp;
    v(k, q) = vkp * g_pq + vkq * g_qq;
  }
  // a <- G^dagger a (rows p, q)
  for (std::size_t k = 0; k < n; ++k) {
    const cplx apk = a(p, k);
    const cplx aqk = a(q, k);
    a(p, k) = std::conj(g_pp) * apk + std::conj(g_qp) * aqk;
    a(q, k) = std::conj(g_pq) * apk + std::conj(g_qq) * aqk;
  }
  a(p, q) = 0.0;
  a(q, p) = 0.0;
  a(p, p) = a(p, p).real();
  a(q, q) = a(q, q).real();
}

}  // namespace

HermitianEigen eigh(const ComplexMatrix& h) {
  if (!h.is_hermitian(1e-12)) {
    throw std::invalid_argument("eigh: matrix is not Hermitian");
  }
  const std::size_t n = h.dim();
  ComplexMatrix a = h;
  // Symmetrize so round-off in the input cannot bias the iteration.
  for (std::size_t i = 0; i < n; ++i) {
    a(i, i) = a(i, i).real();
    for (std::size_t j = i + 1; j < n; ++j) {
      const cplx avg = 0.5 * (a(i, j) + std::conj(a(j, i)));
      a(i, j) = avg;
      a(j, i) = std::conj(avg);
    }
  }
  ComplexMatrix v = ComplexMatrix::identity(n);

  double frob2 = 0.0;
  for (const auto& x : a.data()) frob2 += std::norm(x);
  const double eps = std::numeric_limits<double>::epsilon();
  const double stop = eps * eps * frob2 * 1e-2;

  for (int sweep = 0; sweep < kMaxSweeps; ++sweep) {
    if (off_diagonal_norm2(a) <= stop) break;
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const double mag = std::abs(a(p, q));
        if (mag == 0.0) continue;
        const double dp = std::abs(a(p, p).real());
        const double dq = std::abs(a(q, q).real());
        if (sweep > 3 && mag < 0.25 * eps * dp && mag < 0.25 * eps * dq) {
          a(p, q) = 0.0;
          a(q, p) = 0.0;
          continue;
        }
        rotate(a, v, p, q);
      }
    }
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) {
    return a(x, x).real() < a(y, y).real();
  });
  HermitianEigen out{std::vector<double>(n), ComplexMatrix(n)};
  for (std::size_t k = 0; k < n; ++k) {
    out.values[k] = a(order[k], order[k]).real();
    for (std::size_t i = 0; i < n; ++i) out.vectors(i, k) = v(i, order[k]);
  }
  return out;
}

std::vector<std::vector<std::size_t>> coupled_blocks(const ComplexMatrix& h) {
  const std::size_t n = h.dim();
  std::vector<std::size_t> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (h(i, j) != cplx{} || h(j, i) != cplx{}) {
        const std::size_t ri = find(i);
        const std::size_t rj = find(j);
        if (ri != rj) parent[std::max(ri, rj)] = std::min(ri, rj);
      }
  std::vector<std::vector<std::size_t>> blocks;
  std::vector<std::size_t> slot(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t r = find(i);
    if (slot[r] == n) {
      slot[r] = blocks.size();
      blocks.emplace_back();
    }
    blocks[slot[r]].push_back(i);
  }
  return blocks;
}

ComplexMatrix expm_hermitian(const ComplexMatrix& h, double t) {
  if (!h.is_hermitian(1e-12)) {
    throw std::invalid_argument("expm_hermitian: generator is not Hermitian");
  }
  const std::size_t n = h.dim();
  ComplexMatrix u(n);
  if (t == 0.0) return ComplexMatrix::identity(n);

  for (const auto& block : coupled_blocks(h)) {
    if (block.size() == 1) {
      const std::size_t i = block.front();
      u(i, i) = std::polar(1.0, -h(i, i).real() * t);
      continue;
    }
    const HermitianEigen eig = eigh(submatrix(h, block));
    const std::size_t m = block.size();
    std::vector<cplx> phases(m);
    for (std::size_t k = 0; k < m; ++k) phases[k] = std::polar(1.0, -eig.values[k] * t);
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j = 0; j < m; ++j) {
        cplx s{};
        for (std::size_t k = 0; k < m; ++k)
          s += eig.vectors(i, k) * phases[k] * std::conj(eig.vectors(j, k));
        u(block[i], block[j]) = s;
      }
  }
  return u;
}

}  // namespace nvsync
