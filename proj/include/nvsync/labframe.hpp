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

// Lab-frame propagation with the full cosine drive, used to check the
// rotating-wave models.
//
// H(t) = H0 + b1_tilde cos(omega0 t + phase) Sx on the full space. The
// rotating frame is psi_rot = exp(i K t) psi_lab with K = -omega0 Sz + H_nuc,
// which maps H0 onto the RWA diagonal.

#include <cstddef>
#include <vector>

#include "nvsync/spinalg/complex_matrix.hpp"
#include "nvsync/systems.hpp"

namespace nvsync {

struct DriveSpec {
  double b1_tilde = 0.0;  // rad/us, sqrt(2) times the RWA amplitude
  double omega0 = 0.0;    // rad/us
  double phase = 0.0;     // rad
};

/// Drive matching an RWA amplitude b1 on the chosen transition.
DriveSpec drive_for(const SystemSpec& spec, const TransitionChoice& choice, double b1);

/// (2 pi / |omega0|) / 40.
double default_time_step(double omega0);

struct LabPropagation {
  ComplexMatrix u;
  std::size_t steps = 0;
  double dt = 0.0;  // step actually used, t / steps
};

/// Midpoint exponential product over [0, t]. dt = 0 selects the default; the
/// step is shrunk so that an integer number of steps covers t. Throws when dt
/// exceeds a twentieth of the drive period.
LabPropagation propagate_lab(const SystemSpec& spec, const DriveSpec& drive, double t,
                             double dt = 0.0);

/// Full-space indices of the RWA basis of `model`, in model order.
std::vector<std::size_t> rwa_embedding(const RwaModel& model);

/// exp(i K t) u_lab restricted to the RWA basis.
ComplexMatrix to_rotating_frame(const ComplexMatrix& u_lab, const SystemSpec& spec,
                                const TransitionChoice& choice, double t);

/// Average gate fidelity between two unitaries of equal dimension.
double comparison_fidelity(const ComplexMatrix& a, const ComplexMatrix& b);

/// Largest population reaching m_s = +1 from any RWA basis input.
double plus_one_leakage(const ComplexMatrix& u_lab, const RwaModel& model);

struct LabValidation {
  double fidelity = 0.0;       // rotating-frame lab gate vs exp(-i H~ t)
  double max_abs_error = 0.0;  // entrywise
  double plus_one_leakage = 0.0;
  std::size_t steps = 0;
  double dt = 0.0;
};

/// Compares the lab-frame evolution for duration t with the RWA drive
/// propagator at amplitude b1.
LabValidation validate_rwa(const SystemSpec& spec, const TransitionChoice& choice, double b1,
                           double t, double dt = 0.0);

}  // namespace nvsync
