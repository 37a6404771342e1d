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

// Gate composition and the average gate fidelity.
//
// A gate attempt is drive -> virtual nuclear phases -> free wait:
//   U = exp(-i H0~ t_w) V(phases) exp(-i H~(b1) t_g).
// Virtual phases are per nuclear configuration: V multiplies both electron
// states of configuration k by exp(-i phi_k). phi of the first configuration
// is 0 by convention, which only fixes the global phase.

#include <optional>
#include <string_view>
#include <vector>

#include "nvsync/spinalg/complex_matrix.hpp"
#include "nvsync/systems.hpp"

namespace nvsync {

struct VirtualPhase {
  NuclearConfig level;
  double phase = 0.0;  // radians, (-pi, pi]
};

struct PulseSchedule {
  double b1 = 0.0;   // rad/us
  double t_g = 0.0;  // us
  double t_w = 0.0;  // us
  std::vector<VirtualPhase> virtual_phases;

  /// Throws std::invalid_argument on b1 < 0, t_g <= 0, t_w < 0 or a phase
  /// outside (-pi, pi].
  void validate() const;
};

enum class TargetLabel { CNOT_4, CNOT_on_6, CCNOT_on_12 };

std::string_view target_name(TargetLabel label);

struct TargetGate {
  TargetLabel label = TargetLabel::CNOT_4;
  ComplexMatrix u_target;
  /// Indices of the larger gate's basis the target acts on; empty when the
  /// target spans the whole space.
  std::vector<std::size_t> subspace;

  std::size_t dim() const { return u_target.dim(); }
};

struct GateReport {
  ComplexMatrix u_act;
  double fidelity = 0.0;                // against the full-model target
  double fidelity_computational = 0.0;  // against the computational projection
  double total_time = 0.0;              // t_g + t_w
  double leakage = 0.0;
};

/// Omega = sqrt(b1^2 + delta^2) / 2.
double rabi_frequency(double b1, double delta);

/// k * 2 pi / |a_eff| - t_g for the smallest k >= 1 giving a nonnegative time.
double waiting_time(double a_eff, double t_g);

/// Virtual phase theta for the 15N sync point (n, m):
/// pi/2 + a_par t_g / 2 + pi (n + m), wrapped to (-pi, pi].
double phase_correction(int n, int m, double t_g, double a_par);

/// Wraps an angle to (-pi, pi].
double wrap_phase(double phi);

/// Drive propagator exp(-i H~(b1) t) of the model.
ComplexMatrix drive_propagator(const RwaModel& model, double b1, double t);
/// Free evolution exp(-i H0~ t), as a matrix and as its diagonal.
ComplexMatrix free_propagator(const RwaModel& model, double t);
std::vector<cplx> free_phases(const RwaModel& model, double t);

ComplexMatrix compose_gate(const RwaModel& model, const PulseSchedule& schedule);

/// F = (d + |Tr(U_target^dagger U_eff)|^2) / (d (d + 1)); a larger u_act is
/// restricted to target.subspace first.
double avg_gate_fidelity(const ComplexMatrix& u_act, const TargetGate& target);

/// CNOT_4 is the 4x4 CNOT with the electron as target (rows 3 and 4 of the
/// identity swapped). CNOT_on_6 and CCNOT_on_12 are electron X on the first
/// nuclear configuration of the 14N and 14N-13C model orderings, identity elsewhere.
TargetGate build_target(TargetLabel label, std::size_t dim);

/// Electron X on the model's resonant configuration, identity elsewhere.
TargetGate target_for(const RwaModel& model);
/// target_for restricted to the computational subspace (d = 4 or 8).
TargetGate computational_target(const RwaModel& model);

/// 1 - min over computational inputs of the population kept in the
/// computational subspace.
double leakage(const ComplexMatrix& u_act, const RwaModel& model);

GateReport evaluate_gate(const RwaModel& model, const PulseSchedule& schedule);

/// How the virtual phases of a schedule are chosen.
enum class PhasePolicy {
  half_pi,       // resonant configuration gets -pi/2 (the R_z(pi/2) correction)
  sync_formula,  // phases that undo the block phases of an ideally synchronized gate
  optimized,     // closed-form maximizer of |Tr(T^dagger U)|
};

/// How sweep schedules pick t_w and phases.
enum class SchedulePolicy {
  corrected,        // t_w from waiting_time, half_pi phases
  uncorrected,      // t_w = 0, sync_formula phases
  phase_optimized,  // t_w = 0, optimized phases
};

std::string_view phase_policy_name(PhasePolicy policy);
PhasePolicy parse_phase_policy(std::string_view name);
std::string_view schedule_policy_name(SchedulePolicy policy);
SchedulePolicy parse_schedule_policy(std::string_view name);

/// Virtual phases for a given drive + wait.
std::vector<VirtualPhase> choose_phases(const RwaModel& model, double b1, double t_g, double t_w,
                                        PhasePolicy policy);

/// Phases maximizing the fidelity of exp(-i H0~ t_w) V U against target, and
/// the resulting |Tr(T^dagger U_eff)|.
struct OptimalPhases {
  std::vector<VirtualPhase> phases;
  double overlap = 0.0;
};
OptimalPhases optimal_phases(const RwaModel& model, const ComplexMatrix& undressed,
                             const TargetGate& target);

PulseSchedule make_schedule(const RwaModel& model, double b1, double t_g, double t_w,
                            PhasePolicy policy);
/// t_g = pi / b1 and t_w, phases per policy.
PulseSchedule schedule_for(const RwaModel& model, double b1, SchedulePolicy policy);

}  // namespace nvsync
