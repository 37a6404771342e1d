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

// Quasi-static Overhauser noise: a Gaussian z-field offset dB on the electron,
// frozen for the duration of one gate, averaged by Gauss-Hermite quadrature.

#include <cstddef>
#include <optional>
#include <vector>

#include "nvsync/gates.hpp"
#include "nvsync/sync.hpp"
#include "nvsync/systems.hpp"

namespace nvsync {

inline constexpr std::size_t kDefaultQuadratureOrder = 41;

/// Exactly one of sigma (rad/us) and t2_star (us) is set.
struct NoiseSpec {
  std::optional<double> sigma;
  std::optional<double> t2_star;
  std::size_t quadrature_order = kDefaultQuadratureOrder;

  static NoiseSpec from_sigma(double sigma, std::size_t order = kDefaultQuadratureOrder);
  static NoiseSpec from_t2star(double t2_star, std::size_t order = kDefaultQuadratureOrder);

  /// Throws std::invalid_argument unless exactly one positive width is set and
  /// quadrature_order >= 3.
  void validate() const;
  double resolved_sigma() const;
};

/// sigma = sqrt(2) / T2*, so <exp(i dB t)> = exp(-(t / T2*)^2).
double sigma_from_t2star(double t2_star);

/// Probabilists' Gauss-Hermite rule: nodes ascending, weights summing to 1, so
/// sum_i w_i f(x_i) approximates E[f(X)] for X ~ N(0, 1).
struct Quadrature {
  std::vector<double> nodes;
  std::vector<double> weights;
};
Quadrature gauss_hermite(std::size_t order);

/// The model seen with an electron field offset dB: every m_s = -1 level moves
/// by -dB, m_s = 0 levels stay.
RwaModel shifted_rwa_model(const RwaModel& model, double delta_b);

/// Quadrature average of F(dB) for a fixed schedule. Order 41 resolves the
/// integrand while sigma * (t_g + t_w) stays below about 10.
double noise_averaged_fidelity(const SystemSpec& spec, const TransitionChoice& choice,
                               const PulseSchedule& schedule, const TargetGate& target,
                               const NoiseSpec& noise);
/// Same on a prebuilt model.
double noise_averaged_fidelity(const RwaModel& model, const PulseSchedule& schedule,
                               const TargetGate& target, const NoiseSpec& noise);

/// F_avg over (b1, T2*) with schedules from `policy`. axis1 = b1, axis2 = T2*.
ScanResult noise_scan(const SystemSpec& spec, const TransitionChoice& choice,
                      const std::vector<double>& b1_values, const std::vector<double>& t2_values,
                      SchedulePolicy policy, std::size_t order = kDefaultQuadratureOrder,
                      std::size_t workers = 0);

}  // namespace nvsync
