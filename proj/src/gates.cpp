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

#include "nvsync/gates.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "nvsync/spinalg/eigen.hpp"

namespace nvsync {
namespace {

constexpr double kPi = std::numbers::pi;

std::vector<VirtualPhase> phases_from_raw(const RwaModel& model, const std::vector<double>& raw) {
  std::vector<VirtualPhase> out;
  out.reserve(raw.size());
  for (std::size_t k = 0; k < raw.size(); ++k)
    out.push_back({model.configs[k], wrap_phase(raw[k] - raw[0])});
  return out;
}

TargetGate x_on_pair(TargetLabel label, std::size_t dim, std::size_t pair) {
  TargetGate t{label, ComplexMatrix::identity(dim), {}};
  const std::size_t lo = 2 * pair;
  t.u_target(lo, lo) = 0.0;
  t.u_target(lo + 1, lo + 1) = 0.0;
  t.u_target(lo, lo + 1) = 1.0;
  t.u_target(lo + 1, lo) = 1.0;
  return t;
}

TargetLabel label_for(Register reg) {
  switch (reg) {
    case Register::N15:
      return TargetLabel::CNOT_4;
    case Register::N14:
      return TargetLabel::CNOT_on_6;
    case Register::N14_C13:
      return TargetLabel::CCNOT_on_12;
  }
  return TargetLabel::CNOT_4;
}

}  // namespace

void PulseSchedule::validate() const {
  if (!(b1 >= 0.0)) throw std::invalid_argument("PulseSchedule: b1 must be >= 0");
  if (!(t_g > 0.0)) throw std::invalid_argument("PulseSchedule: t_g must be > 0");
  if (!(t_w >= 0.0)) throw std::invalid_argument("PulseSchedule: t_w must be >= 0");
  for (const auto& p : virtual_phases) {
    if (!(p.phase > -kPi && p.phase <= kPi)) {
      throw std::invalid_argument("PulseSchedule: virtual phase outside (-pi, pi]");
    }
  }
}

std::string_view target_name(TargetLabel label) {
  switch (label) {
    case TargetLabel::CNOT_4:
      return "CNOT_4";
    case TargetLabel::CNOT_on_6:
      return "CNOT_on_6";
    case TargetLabel::CCNOT_on_12:
      return "CCNOT_on_12";
  }
  return "unknown";
}

double rabi_frequency(double b1, double delta) { return 0.5 * std::hypot(b1, delta); }

double waiting_time(double a_eff, double t_g) {
  if (a_eff == 0.0) throw std::invalid_argument("waiting_time: a_eff must be nonzero");
  if (t_g < 0.0) throw std::invalid_argument("waiting_time: t_g must be >= 0");
  const double period = 2.0 * kPi / std::abs(a_eff);
  const double k = std::max(1.0, std::ceil(t_g / period - 1e-12));
  return std::max(0.0, k * period - t_g);
}

double wrap_phase(double phi) {
  double r = std::remainder(phi, 2.0 * kPi);
  if (r <= -kPi) r += 2.0 * kPi;
  return r;
}

double phase_correction(int n, int m, double t_g, double a_par) {
  if (n < 0 || m < 1) throw std::invalid_argument("phase_correction: need n >= 0, m >= 1");
  return wrap_phase(0.5 * kPi + 0.5 * a_par * t_g + kPi * ((n + m) % 2));
}

ComplexMatrix drive_propagator(const RwaModel& model, double b1, double t) {
  return expm_hermitian(model.hamiltonian(b1), t);
}

std::vector<cplx> free_phases(const RwaModel& model, double t) {
  std::vector<cplx> d(model.dim);
  for (std::size_t i = 0; i < model.dim; ++i) d[i] = std::polar(1.0, -model.h_diag[i] * t);
  return d;
}

ComplexMatrix free_propagator(const RwaModel& model, double t) {
  const auto d = free_phases(model, t);
  return ComplexMatrix::diagonal(std::span<const cplx>(d));
}

ComplexMatrix compose_gate(const RwaModel& model, const PulseSchedule& schedule) {
  schedule.validate();
  std::vector<double> phi(model.configs.size(), 0.0);
  for (const auto& p : schedule.virtual_phases) phi[model.pair_of(p.level)] = p.phase;
  std::vector<cplx> d(model.dim);
  for (std::size_t i = 0; i < model.dim; ++i) {
    d[i] = std::polar(1.0, -phi[i / 2] - model.h_diag[i] * schedule.t_w);
  }
  return diag_times(d, drive_propagator(model, schedule.b1, schedule.t_g));
}

double avg_gate_fidelity(const ComplexMatrix& u_act, const TargetGate& target) {
  const std::size_t d = target.dim();
  if (d == 0) throw std::invalid_argument("avg_gate_fidelity: empty target");
  cplx tr;
  if (target.subspace.empty()) {
    if (u_act.dim() != d) {
      throw std::invalid_argument("avg_gate_fidelity: dimension " + std::to_string(u_act.dim()) +
                                  " does not match target dimension " + std::to_string(d));
    }
    tr = trace_adjoint_product(target.u_target, u_act);
  } else {
    if (target.subspace.size() != d ||
        std::any_of(target.subspace.begin(), target.subspace.end(),
                    [&](std::size_t i) { return i >= u_act.dim(); })) {
      throw std::invalid_argument("avg_gate_fidelity: target subspace does not fit the gate");
    }
    tr = trace_adjoint_product(target.u_target, submatrix(u_act, target.subspace));
  }
  const double dd = static_cast<double>(d);
  return std::clamp((dd + std::norm(tr)) / (dd * (dd + 1.0)), 0.0, 1.0);
}

TargetGate build_target(TargetLabel label, std::size_t dim) {
  const std::size_t expected = label == TargetLabel::CNOT_4 ? 4 : (label == TargetLabel::CNOT_on_6 ? 6 : 12);
  if (dim != expected) {
    throw std::invalid_argument("build_target: " + std::string(target_name(label)) +
                                " needs dim " + std::to_string(expected) + ", got " +
                                std::to_string(dim));
  }
  return x_on_pair(label, dim, label == TargetLabel::CNOT_4 ? 1 : 0);
}

TargetGate target_for(const RwaModel& model) {
  return x_on_pair(label_for(model.reg), model.dim, model.resonant_pair);
}

TargetGate computational_target(const RwaModel& model) {
  const TargetGate full = target_for(model);
  const auto idx = model.computational_indices();
  return TargetGate{full.label, submatrix(full.u_target, idx), idx};
}

double leakage(const ComplexMatrix& u_act, const RwaModel& model) {
  const auto idx = model.computational_indices();
  double worst = 1.0;
  for (std::size_t col : idx) {
    double kept = 0.0;
    for (std::size_t row : idx) kept += std::norm(u_act(row, col));
    worst = std::min(worst, kept);
  }
  return std::clamp(1.0 - worst, 0.0, 1.0);
}

GateReport evaluate_gate(const RwaModel& model, const PulseSchedule& schedule) {
  GateReport r;
  r.u_act = compose_gate(model, schedule);
  r.fidelity = avg_gate_fidelity(r.u_act, target_for(model));
  r.fidelity_computational = avg_gate_fidelity(r.u_act, computational_target(model));
  r.total_time = schedule.t_g + schedule.t_w;
  r.leakage = leakage(r.u_act, model);
  return r;
}

std::string_view phase_policy_name(PhasePolicy policy) {
  switch (policy) {
    case PhasePolicy::half_pi:
      return "half_pi";
    case PhasePolicy::sync_formula:
      return "sync_formula";
    case PhasePolicy::optimized:
      return "optimized";
  }
  return "unknown";
}

PhasePolicy parse_phase_policy(std::string_view name) {
  if (name == "half_pi") return PhasePolicy::half_pi;
  if (name == "sync_formula") return PhasePolicy::sync_formula;
  if (name == "optimized") return PhasePolicy::optimized;
  throw std::invalid_argument("unknown phase policy '" + std::string(name) +
                              "' (expected half_pi, sync_formula or optimized)");
}

std::string_view schedule_policy_name(SchedulePolicy policy) {
  switch (policy) {
    case SchedulePolicy::corrected:
      return "corrected";
    case SchedulePolicy::uncorrected:
      return "uncorrected";
    case SchedulePolicy::phase_optimized:
      return "phase_optimized";
  }
  return "unknown";
}

SchedulePolicy parse_schedule_policy(std::string_view name) {
  if (name == "corrected") return SchedulePolicy::corrected;
  if (name == "uncorrected") return SchedulePolicy::uncorrected;
  if (name == "phase_optimized") return SchedulePolicy::phase_optimized;
  throw std::invalid_argument("unknown schedule policy '" + std::string(name) +
                              "' (expected corrected, uncorrected or phase_optimized)");
}

OptimalPhases optimal_phases(const RwaModel& model, const ComplexMatrix& undressed,
                             const TargetGate& target) {
  std::vector<std::size_t> sub = target.subspace;
  if (sub.empty()) {
    sub.resize(target.dim());
    for (std::size_t i = 0; i < sub.size(); ++i) sub[i] = i;
  }
  if (undressed.dim() != model.dim || sub.size() != target.dim()) {
    throw std::invalid_argument("optimal_phases: target does not match the model");
  }
  std::vector<cplx> tau(model.configs.size());
  for (std::size_t a = 0; a < sub.size(); ++a)
    for (std::size_t b = 0; b < sub.size(); ++b) {
      if (sub[a] / 2 != sub[b] / 2) continue;
      tau[sub[a] / 2] += std::conj(target.u_target(a, b)) * undressed(sub[a], sub[b]);
    }
  OptimalPhases out;
  std::vector<double> raw(tau.size());
  for (std::size_t k = 0; k < tau.size(); ++k) {
    raw[k] = std::abs(tau[k]) > 0.0 ? std::arg(tau[k]) : 0.0;
    out.overlap += std::abs(tau[k]);
  }
  out.phases = phases_from_raw(model, raw);
  return out;
}

std::vector<VirtualPhase> choose_phases(const RwaModel& model, double b1, double t_g, double t_w,
                                        PhasePolicy policy) {
  const std::size_t r = model.resonant_pair;
  std::vector<double> raw(model.configs.size(), 0.0);
  switch (policy) {
    case PhasePolicy::half_pi:
      raw[r] = -0.5 * kPi;
      return phases_from_raw(model, raw);
    case PhasePolicy::sync_formula: {
      // Resonant block: -i sin(b1 t_g / 2) X; a synchronized off-resonant
      // block: exp(-i delta t_g / 2) (-1)^m 1 with m = Omega t_g / pi.
      const double res = std::sin(0.5 * b1 * t_g) >= 0.0 ? -0.5 * kPi : 0.5 * kPi;
      for (std::size_t k = 0; k < raw.size(); ++k) {
        if (k == r) continue;
        const double delta = model.detuning(k);
        const double m_eff = std::round(rabi_frequency(b1, delta) * t_g / kPi);
        raw[k] = -0.5 * delta * t_g + kPi * m_eff - res;
      }
      return phases_from_raw(model, raw);
    }
    case PhasePolicy::optimized: {
      const ComplexMatrix u = diag_times(free_phases(model, t_w), drive_propagator(model, b1, t_g));
      return optimal_phases(model, u, target_for(model)).phases;
    }
  }
  return phases_from_raw(model, raw);
}

PulseSchedule make_schedule(const RwaModel& model, double b1, double t_g, double t_w,
                            PhasePolicy policy) {
  return PulseSchedule{b1, t_g, t_w, choose_phases(model, b1, t_g, t_w, policy)};
}

PulseSchedule schedule_for(const RwaModel& model, double b1, SchedulePolicy policy) {
  if (!(b1 > 0.0)) throw std::invalid_argument("schedule_for: b1 must be > 0");
  const double t_g = kPi / b1;
  switch (policy) {
    case SchedulePolicy::corrected:
      return make_schedule(model, b1, t_g, waiting_time(model.a_eff, t_g), PhasePolicy::half_pi);
    case SchedulePolicy::uncorrected:
      return make_schedule(model, b1, t_g, 0.0, PhasePolicy::sync_formula);
    case SchedulePolicy::phase_optimized:
      return make_schedule(model, b1, t_g, 0.0, PhasePolicy::optimized);
  }
  throw std::invalid_argument("schedule_for: bad policy");
}

}  // namespace nvsync
