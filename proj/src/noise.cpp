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

#include "nvsync/noise.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "nvsync/spinalg/eigen.hpp"

namespace nvsync {

NoiseSpec NoiseSpec::from_sigma(double sigma, std::size_t order) {
  NoiseSpec n;
  n.sigma = sigma;
  n.quadrature_order = order;
  return n;
}

NoiseSpec NoiseSpec::from_t2star(double t2_star, std::size_t order) {
  NoiseSpec n;
  n.t2_star = t2_star;
  n.quadrature_order = order;
  return n;
}

void NoiseSpec::validate() const {
  if (sigma.has_value() == t2_star.has_value()) {
    throw std::invalid_argument("NoiseSpec: give exactly one of sigma and t2_star");
  }
  if (sigma && !(*sigma > 0.0)) throw std::invalid_argument("NoiseSpec: sigma must be > 0");
  if (t2_star && !(*t2_star > 0.0)) throw std::invalid_argument("NoiseSpec: t2_star must be > 0");
  if (quadrature_order < 3) throw std::invalid_argument("NoiseSpec: quadrature order must be >= 3");
}

double NoiseSpec::resolved_sigma() const {
  validate();
  return sigma ? *sigma : sigma_from_t2star(*t2_star);
}

double sigma_from_t2star(double t2_star) {
  if (!(t2_star > 0.0)) throw std::invalid_argument("sigma_from_t2star: T2* must be > 0");
  return std::sqrt(2.0) / t2_star;
}

Quadrature gauss_hermite(std::size_t order) {
  if (order < 1) throw std::invalid_argument("gauss_hermite: order must be >= 1");
  // Golub-Welsch on the Jacobi matrix of the monic probabilists' Hermite
  // recurrence x He_k = He_{k+1} + k He_{k-1}.
  ComplexMatrix jac(order);
  for (std::size_t k = 0; k + 1 < order; ++k) {
    const double b = std::sqrt(static_cast<double>(k + 1));
    jac(k, k + 1) = b;
    jac(k + 1, k) = b;
  }
  const HermitianEigen eig = eigh(jac);
  Quadrature q{eig.values, std::vector<double>(order)};
  for (std::size_t k = 0; k < order; ++k) q.weights[k] = std::norm(eig.vectors(0, k));
  // The rule is symmetric; enforce it exactly.
  for (std::size_t i = 0; i < order / 2; ++i) {
    const std::size_t j = order - 1 - i;
    const double x = 0.5 * (q.nodes[j] - q.nodes[i]);
    const double w = 0.5 * (q.weights[i] + q.weights[j]);
    q.nodes[i] = -x;
    q.nodes[j] = x;
    q.weights[i] = w;
    q.weights[j] = w;
  }
  if (order % 2 == 1) q.nodes[order / 2] = 0.0;
  double total = 0.0;
  for (double w : q.weights) total += w;
  for (double& w : q.weights) w /= total;
  return q;
}

RwaModel shifted_rwa_model(const RwaModel& model, double delta_b) {
  RwaModel out = model;
  for (std::size_t i = 0; i < out.dim; ++i)
    if (out.basis[i].electron == 1) out.h_diag[i] -= delta_b;
  return out;
}

double noise_averaged_fidelity(const RwaModel& model, const PulseSchedule& schedule,
                               const TargetGate& target, const NoiseSpec& noise) {
  const double sigma = noise.resolved_sigma();
  const Quadrature q = gauss_hermite(noise.quadrature_order);
  double acc = 0.0;
  for (std::size_t i = 0; i < q.nodes.size(); ++i) {
    const RwaModel shifted = shifted_rwa_model(model, sigma * q.nodes[i]);
    acc += q.weights[i] * avg_gate_fidelity(compose_gate(shifted, schedule), target);
  }
  return std::clamp(acc, 0.0, 1.0);
}

double noise_averaged_fidelity(const SystemSpec& spec, const TransitionChoice& choice,
                               const PulseSchedule& schedule, const TargetGate& target,
                               const NoiseSpec& noise) {
  return noise_averaged_fidelity(build_rwa_model(spec, choice), schedule, target, noise);
}

ScanResult noise_scan(const SystemSpec& spec, const TransitionChoice& choice,
                      const std::vector<double>& b1_values, const std::vector<double>& t2_values,
                      SchedulePolicy policy, std::size_t order, std::size_t workers) {
  if (b1_values.empty() || t2_values.empty()) throw std::invalid_argument("noise_scan: empty axis");
  const RwaModel model = build_rwa_model(spec, choice);
  const TargetGate target = target_for(model);
  const std::size_t cols = t2_values.size();
  ScanResult r;
  r.axis1_name = "b1";
  r.axis1 = b1_values;
  r.axis2_name = "t2_star";
  r.axis2 = t2_values;
  r.fidelity.resize(b1_values.size() * cols);
  r.t_g.resize(b1_values.size());
  r.spec = spec;
  r.choice = choice;
  r.policy = std::string(schedule_policy_name(policy));
  for (double t2 : t2_values) NoiseSpec::from_t2star(t2, order).validate();
  parallel_for(b1_values.size(), resolve_workers(workers), [&](std::size_t i) {
    const PulseSchedule s = schedule_for(model, b1_values[i], policy);
    r.t_g[i] = s.t_g;
    for (std::size_t j = 0; j < cols; ++j) {
      r.fidelity[i * cols + j] =
          noise_averaged_fidelity(model, s, target, NoiseSpec::from_t2star(t2_values[j], order));
    }
  });
  return r;
}

}  // namespace nvsync
