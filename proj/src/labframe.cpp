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

#include "nvsync/labframe.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "nvsync/gates.hpp"
#include "nvsync/spinalg/eigen.hpp"

namespace nvsync {
namespace {

constexpr double kPi = std::numbers::pi;

// exp(-i h dt) for a small dense Hermitian h.
ComplexMatrix step_exponential(const ComplexMatrix& h, double dt) {
  const HermitianEigen eig = eigh(h);
  const std::size_t n = h.dim();
  ComplexMatrix out(n);
  for (std::size_t k = 0; k < n; ++k) {
    const cplx ph = std::polar(1.0, -eig.values[k] * dt);
    for (std::size_t i = 0; i < n; ++i) {
      const cplx vik = eig.vectors(i, k) * ph;
      for (std::size_t j = 0; j < n; ++j) out(i, j) += vik * std::conj(eig.vectors(j, k));
    }
  }
  return out;
}

}  // namespace

DriveSpec drive_for(const SystemSpec& spec, const TransitionChoice& choice, double b1) {
  return DriveSpec{std::sqrt(2.0) * b1, drive_frequency(spec, choice), 0.0};
}

double default_time_step(double omega0) {
  if (omega0 == 0.0) throw std::invalid_argument("default_time_step: omega0 must be nonzero");
  return (2.0 * kPi / std::abs(omega0)) / 40.0;
}

LabPropagation propagate_lab(const SystemSpec& spec, const DriveSpec& drive, double t,
                             double dt) {
  if (!(drive.b1_tilde >= 0.0)) throw std::invalid_argument("propagate_lab: b1_tilde must be >= 0");
  if (!(t >= 0.0)) throw std::invalid_argument("propagate_lab: t must be >= 0");
  const double requested = dt == 0.0 ? default_time_step(drive.omega0) : dt;
  const double period = 2.0 * kPi / std::abs(drive.omega0);
  if (!(requested > 0.0) || requested > period / 20.0) {
    throw std::invalid_argument("propagate_lab: dt must be positive and at most (2 pi / omega0) / 20");
  }

  const ComplexMatrix h0 = build_static_hamiltonian(spec);
  const ComplexMatrix sx = electron_sx(spec.reg);
  const std::size_t n = h0.dim();
  LabPropagation out{ComplexMatrix::identity(n), 0, 0.0};
  if (t == 0.0) return out;

  const auto steps = static_cast<std::size_t>(std::ceil(t / requested - 1e-9));
  const double h = t / static_cast<double>(steps);
  out.steps = steps;
  out.dt = h;

  // The secular Hamiltonian keeps nuclear quantum numbers, so each connected
  // block of H0 + Sx is propagated on its own.
  for (const auto& block : coupled_blocks(h0 + sx)) {
    const ComplexMatrix h0_b = submatrix(h0, block);
    const ComplexMatrix sx_b = submatrix(sx, block);
    ComplexMatrix u_b = ComplexMatrix::identity(block.size());
    for (std::size_t k = 0; k < steps; ++k) {
      const double t_mid = (static_cast<double>(k) + 0.5) * h;
      const double c = drive.b1_tilde * std::cos(drive.omega0 * t_mid + drive.phase);
      u_b = step_exponential(h0_b + sx_b * c, h) * u_b;
    }
    for (std::size_t i = 0; i < block.size(); ++i)
      for (std::size_t j = 0; j < block.size(); ++j) out.u(block[i], block[j]) = u_b(i, j);
  }
  return out;
}

std::vector<std::size_t> rwa_embedding(const RwaModel& model) {
  std::vector<std::size_t> idx;
  idx.reserve(model.dim);
  for (const auto& label : model.basis) {
    idx.push_back(full_index(model.reg, label.electron == 0 ? 0 : -1, label.nuclear));
  }
  return idx;
}

ComplexMatrix to_rotating_frame(const ComplexMatrix& u_lab, const SystemSpec& spec,
                                const TransitionChoice& choice, double t) {
  if (u_lab.dim() != full_dim(spec.reg)) {
    throw std::invalid_argument("to_rotating_frame: lab unitary does not match the register");
  }
  const RwaModel model = build_rwa_model(spec, choice);
  const ComplexMatrix k_op = nuclear_hamiltonian(spec) - electron_sz(spec.reg) * model.omega0;
  std::vector<cplx> frame(k_op.dim());
  for (std::size_t i = 0; i < frame.size(); ++i) frame[i] = std::polar(1.0, k_op(i, i).real() * t);
  const auto idx = rwa_embedding(model);
  return submatrix(diag_times(frame, u_lab), idx);
}

double comparison_fidelity(const ComplexMatrix& a, const ComplexMatrix& b) {
  return avg_gate_fidelity(b, TargetGate{TargetLabel::CNOT_4, a, {}});
}

double plus_one_leakage(const ComplexMatrix& u_lab, const RwaModel& model) {
  std::vector<std::size_t> plus;
  for (const auto& c : model.configs) plus.push_back(full_index(model.reg, 1, c));
  double worst = 0.0;
  for (std::size_t col : rwa_embedding(model)) {
    double p = 0.0;
    for (std::size_t row : plus) p += std::norm(u_lab(row, col));
    worst = std::max(worst, p);
  }
  return worst;
}

LabValidation validate_rwa(const SystemSpec& spec, const TransitionChoice& choice, double b1,
                           double t, double dt) {
  const RwaModel model = build_rwa_model(spec, choice);
  const LabPropagation lab = propagate_lab(spec, drive_for(spec, choice, b1), t, dt);
  const ComplexMatrix rot = to_rotating_frame(lab.u, spec, choice, t);
  const ComplexMatrix rwa = drive_propagator(model, b1, t);
  LabValidation v;
  v.fidelity = comparison_fidelity(rwa, rot);
  v.max_abs_error = max_abs_diff(rwa, rot);
  v.plus_one_leakage = plus_one_leakage(lab.u, model);
  v.steps = lab.steps;
  v.dt = lab.dt;
  return v;
}

}  // namespace nvsync
