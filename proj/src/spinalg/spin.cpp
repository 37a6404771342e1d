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

#include "nvsync/spinalg/spin.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace nvsync {

SpinOperators spin_ops(double s) {
  if (s != 0.5 && s != 1.0) {
    throw std::invalid_argument("spin_ops: unsupported spin " + std::to_string(s) +
                                " (expected 1/2 or 1)");
  }
  const auto dim = static_cast<std::size_t>(std::lround(2.0 * s + 1.0));
  SpinOperators ops{s, ComplexMatrix(dim), ComplexMatrix(dim), ComplexMatrix(dim)};

  // S+ |m> = sqrt(s(s+1) - m(m+1)) |m+1>; row index i <-> m = s - i.
  ComplexMatrix splus(dim);
  for (std::size_t i = 0; i < dim; ++i) {
    const double m = s - static_cast<double>(i);
    ops.sz(i, i) = m;
    if (i > 0) splus(i - 1, i) = std::sqrt(s * (s + 1.0) - m * (m + 1.0));
  }
  const ComplexMatrix sminus = splus.adjoint();
  ops.sx = (splus + sminus) * cplx(0.5, 0.0);
  ops.sy = (splus - sminus) * cplx(0.0, -0.5);
  return ops;
}

}  // namespace nvsync
