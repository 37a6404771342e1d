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

#include "nvsync/spinalg/complex_matrix.hpp"

namespace nvsync {

/// Angular-momentum matrices in the |s, m> basis ordered m = s, s-1, ..., -s.
struct SpinOperators {
  double spin = 0.0;
  ComplexMatrix sx;
  ComplexMatrix sy;
  ComplexMatrix sz;

  std::size_t multiplicity() const { return sz.dim(); }
};

/// Spin-1/2 and spin-1 only; anything else throws std::invalid_argument.
SpinOperators spin_ops(double s);

}  // namespace nvsync
