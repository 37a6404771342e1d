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

// Synchronization points and fidelity scans.
//
// A drive b1 is synchronized when every off-resonant block completes whole
// Rabi cycles while the resonant block completes a pi rotation (or an odd
// multiple). For one off-resonant detuning a the exact points are
//   b1 = |a| sqrt((2n+1)^2 / (4 m^2 - (2n+1)^2)),  2n+1 < 2m,
// reached at t_g = (2n+1) pi / b1.

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "nvsync/gates.hpp"
#include "nvsync/systems.hpp"

namespace nvsync {

struct SyncPoint {
  std::optional<int> n;  // labels, set for analytic points only
  std::optional<int> m;
  double b1 = 0.0;   // rad/us
  double t_g = 0.0;  // us
  double fidelity = 0.0;  // t_w = 0
  double t_w_opt = 0.0;   // us
  double fidelity_tw_opt = 0.0;
  bool exact = false;
};

/// b1 of the exact point (n, m) for detuning a_par.
double exact_sync_b1(int n, int m, double a_par);

/// All (n, m) with m <= max_m and 2n+1 < 2m, by descending b1. Fidelities are
/// left at 0; see evaluate_sync_point.
std::vector<SyncPoint> analytic_sync_points(double a_par, int max_m);

/// |detuning| shared by every off-resonant pair (relative spread <= 1e-9),
/// the case where the analytic points are exact for the whole register.
std::optional<double> uniform_detuning(const RwaModel& model);

/// Fills fidelity (sync_formula phases, t_w = 0) and the t_w-optimized fidelity
/// (optimized phases) of a point on the given model.
SyncPoint evaluate_sync_point(const RwaModel& model, SyncPoint point);

/// Axes are stored in internal units (rad/us, us); fidelity is row-major with
/// axis1 outermost.
struct ScanResult {
  std::string axis1_name;
  std::vector<double> axis1;
  std::string axis2_name;
  std::vector<double> axis2;  // empty for 1-D sweeps
  std::vector<double> fidelity;
  std::vector<double> fidelity_computational;  // 1-D sweeps only
  std::vector<double> t_g;                     // per axis1 entry
  std::vector<double> t_w;                     // per axis1 entry, 1-D sweeps only
  SystemSpec spec;
  TransitionChoice choice;
  std::string policy;

  std::size_t cols() const { return axis2.empty() ? 1 : axis2.size(); }
  double at(std::size_t i, std::size_t j = 0) const { return fidelity[i * cols() + j]; }
};

/// 1 where F > threshold, same layout as scan.fidelity.
std::vector<std::uint8_t> high_fidelity_mask(const ScanResult& scan, double threshold = 0.99);

/// Worker count: requested if nonzero, else NVSYNC_WORKERS, else the hardware
/// concurrency (at least 1).
std::size_t resolve_workers(std::size_t requested);

/// Runs body(i) for i in [0, count) on up to `workers` threads. Each index is
/// visited exactly once; callers write results by index.
void parallel_for(std::size_t count, std::size_t workers,
                  const std::function<void(std::size_t)>& body);

/// F at t_g = pi / b1 for each b1.
ScanResult sweep_b1(const SystemSpec& spec, const TransitionChoice& choice,
                    const std::vector<double>& b1_values, SchedulePolicy policy,
                    std::size_t workers = 0);

/// F(b1, t_w) with t_g = pi / b1.
ScanResult scan_b1_tw(const SystemSpec& spec, const TransitionChoice& choice,
                      const std::vector<double>& b1_values, const std::vector<double>& tw_values,
                      PhasePolicy phases, std::size_t workers = 0);

struct SyncSearchOptions {
  /// rad/us; when both are 0 the range is [0.05, 3] times the smallest
  /// off-resonant detuning of the model.
  double b1_min = 0.0;
  double b1_max = 0.0;
  std::size_t count = 4000;
  double threshold = 0.99;
  PhasePolicy phases = PhasePolicy::optimized;
  std::size_t tw_samples = 64;
  std::size_t workers = 0;
};

/// Local maxima of F(b1) at t_g = pi / b1, t_w = 0, refined by golden-section
/// search, each also evaluated with an optimized t_w in [0, 2 pi / a_eff].
/// Points where either variant reaches the threshold are returned by
/// descending b1.
std::vector<SyncPoint> find_sync_numeric(const SystemSpec& spec, const TransitionChoice& choice,
                                         const SyncSearchOptions& options = {});

/// Full-model fidelity of drive (b1, t_g), wait t_w, phases per policy.
double fidelity_at(const RwaModel& model, double b1, double t_g, double t_w, PhasePolicy phases);

/// Best t_w in [0, 2 pi / a_eff] for fixed b1 (grid of `samples` + golden refinement).
std::pair<double, double> optimize_waiting_time(const RwaModel& model, double b1, double t_g,
                                                PhasePolicy phases, std::size_t samples = 64);

/// Linearly spaced values, both ends included; count >= 2.
std::vector<double> linspace(double start, double stop, std::size_t count);

}  // namespace nvsync
