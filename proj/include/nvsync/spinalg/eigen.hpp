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

#include <cstddef>
#include <vector>

#include "nvsync/spinalg/complex_matrix.hpp"

namespace nvsync {

/// h = vectors * diag(values) * vectors^dagger, eigenvalues ascending,
/// eigenvectors in columns.
struct HermitianEigen {
  std::vector<double> values;
  ComplexMatrix vectors;
};

/// Cyclic complex Jacobi diagonalization. Throws std::invalid_argument when h
/// is not Hermitian to 1e-12 relative.
HermitianEigen eigh(const ComplexMatrix& h);

/// Index sets of the connected components of the nonzero pattern of h
/// (h(i,j) != 0 links i and j). Components are ordered by smallest index.
std::vector<std::vector<std::size_t>> coupled_blocks(const ComplexMatrix& h);

/// exp(-i h t) for Hermitian h (rad/us) and t (us). Diagonalizes each coupled
/// block separately, so diagonal generators are exponentiated exactly.
ComplexMatrix expm_hermitian(const ComplexMatrix& h, double t);

}  // namespace nvsync
