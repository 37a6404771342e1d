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

#include "nvsync/sync.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <numbers>
#include <stdexcept>
#include <string_view>
#include <thread>
#include <utility>

namespace nvsync {
namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kInvPhi = 0.6180339887498949;  // 1 / golden ratio

// Golden-section maximization of f on [lo, hi]; returns (argmax, max).
template <typename F>
std::pair<double, double> golden_max(F&& f, double lo, double hi, int iterations = 80) {
  double x1 = hi - kInvPhi * (hi - lo);
  double x2 = lo + kInvPhi * (hi - lo);
  double f1 = f(x1);
  double f2 = f(x2);
  for (int it = 0; it < iterations && (hi - lo) > 1e-14 * std::max(1.0, std::abs(hi)); ++it) {
    if (f1 < f2) {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + kInvPhi * (hi - lo);
      f2 = f(x2);
    } else {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi - kInvPhi * (hi - lo);
      f1 = f(x1);
    }
  }
  return f1 >= f2 ? std::pair{x1, f1} : std::pair{x2, f2};
}

double fidelity_from_undressed(const RwaModel& model, const ComplexMatrix& undressed,
                               const TargetGate& target, double b1, double t_g, double t_w,
                               PhasePolicy phases) {
  if (phases == PhasePolicy::optimized) {
    const double overlap = optimal_phases(model, undressed, target).overlap;
    const double d = static_cast<double>(target.dim());
    return std::clamp((d + overlap * overlap) / (d * (d + 1.0)), 0.0, 1.0);
  }
  const auto vp = choose_phases(model, b1, t_g, t_w, phases);
  std::vector<cplx> v(model.dim);
  for (std::size_t i = 0; i < model.dim; ++i) v[i] = std::polar(1.0, -vp[i / 2].phase);
  return avg_gate_fidelity(diag_times(v, undressed), target);
}

}  // namespace

double exact_sync_b1(int n, int m, double a_par) {
  const double odd = 2.0 * n + 1.0;
  if (n < 0 || m < 1 || !(odd < 2.0 * m)) {
    throw std::invalid_argument("exact_sync_b1: need n >= 0, m >= 1 and 2n+1 < 2m");
  }
  return std::abs(a_par) * std::sqrt(odd * odd / (4.0 * m * m - odd * odd));
}

std::vector<SyncPoint> analytic_sync_points(double a_par, int max_m) {
  if (a_par == 0.0) throw std::invalid_argument("analytic_sync_points: a_par must be nonzero");
  if (max_m < 1) throw std::invalid_argument("analytic_sync_points: max_m must be >= 1");
  std::vector<SyncPoint> out;
  for (int m = 1; m <= max_m; ++m) {
    for (int n = 0; 2 * n + 1 < 2 * m; ++n) {
      SyncPoint p;
      p.n = n;
      p.m = m;
      p.b1 = exact_sync_b1(n, m, a_par);
      p.t_g = (2.0 * n + 1.0) * kPi / p.b1;
      p.exact = true;
      out.push_back(p);
    }
  }
  std::stable_sort(out.begin(), out.end(),
                   [](const SyncPoint& a, const SyncPoint& b) { return a.b1 > b.b1; });
  return out;
}

std::optional<double> uniform_detuning(const RwaModel& model) {
  std::optional<double> common;
  for (std::size_t k = 0; k < model.drive_pairs.size(); ++k) {
    if (k == model.resonant_pair) continue;
    const double d = std::abs(model.detuning(k));
    if (!common) {
      common = d;
    } else if (std::abs(d - *common) > 1e-9 * std::max(d, *common)) {
      return std::nullopt;
    }
  }
  if (common && *common == 0.0) return std::nullopt;
  return common;
}

SyncPoint evaluate_sync_point(const RwaModel& model, SyncPoint point) {
  point.fidelity = fidelity_at(model, point.b1, point.t_g, 0.0, PhasePolicy::sync_formula);
  const auto [tw, f] = optimize_waiting_time(model, point.b1, point.t_g, PhasePolicy::optimized);
  point.t_w_opt = tw;
  point.fidelity_tw_opt = f;
  return point;
}

double fidelity_at(const RwaModel& model, double b1, double t_g, double t_w, PhasePolicy phases) {
  const ComplexMatrix undressed =
      diag_times(free_phases(model, t_w), drive_propagator(model, b1, t_g));
  return fidelity_from_undressed(model, undressed, target_for(model), b1, t_g, t_w, phases);
}

std::pair<double, double> optimize_waiting_time(const RwaModel& model, double b1, double t_g,
                                                PhasePolicy phases, std::size_t samples) {
  if (samples < 2) throw std::invalid_argument("optimize_waiting_time: samples must be >= 2");
  if (model.a_eff == 0.0) throw std::invalid_argument("optimize_waiting_time: a_eff is zero");
  const ComplexMatrix ud = drive_propagator(model, b1, t_g);
  const TargetGate target = target_for(model);
  auto f = [&](double tw) {
    return fidelity_from_undressed(model, diag_times(free_phases(model, tw), ud), target, b1, t_g,
                                   tw, phases);
  };
  const double period = 2.0 * kPi / std::abs(model.a_eff);
  const double step = period / static_cast<double>(samples - 1);
  std::size_t best = 0;
  double best_f = -1.0;
  for (std::size_t j = 0; j < samples; ++j) {
    const double v = f(static_cast<double>(j) * step);
    if (v > best_f) {
      best_f = v;
      best = j;
    }
  }
  const double lo = std::max(0.0, (static_cast<double>(best) - 1.0) * step);
  const double hi = std::min(period, (static_cast<double>(best) + 1.0) * step);
  auto refined = golden_max(f, lo, hi);
  if (refined.second < best_f) refined = {static_cast<double>(best) * step, best_f};
  return refined;
}

std::vector<std::uint8_t> high_fidelity_mask(const ScanResult& scan, double threshold) {
  std::vector<std::uint8_t> mask(scan.fidelity.size());
  for (std::size_t k = 0; k < mask.size(); ++k) mask[k] = scan.fidelity[k] > threshold ? 1 : 0;
  return mask;
}

std::size_t resolve_workers(std::size_t requested) {
  if (requested > 0) return requested;
  if (const char* env = std::getenv("NVSYNC_WORKERS")) {
    std::size_t v = 0;
    const std::string_view s(env);
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec == std::errc{} && ptr == s.data() + s.size() && v > 0) return v;
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

void parallel_for(std::size_t count, std::size_t workers,
                  const std::function<void(std::size_t)>& body) {
  const std::size_t threads = std::min(std::max<std::size_t>(workers, 1), count);
  if (threads <= 1) {
    for (std::size_t i = 0; i < count; ++i) body(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  auto run = [&] {
    for (std::size_t i = next.fetch_add(1); i < count; i = next.fetch_add(1)) {
      try {
        body(i);
      } catch (...) {
        const std::lock_guard lock(error_mutex);
        if (!error) error = std::current_exception();
      }
    }
  };
  std::vector<std::jthread> pool;
  pool.reserve(threads);
  for (std::size_t t = 0; t < threads; ++t) pool.emplace_back(run);
  pool.clear();
  if (error) std::rethrow_exception(error);
}

ScanResult sweep_b1(const SystemSpec& spec, const TransitionChoice& choice,
                    const std::vector<double>& b1_values, SchedulePolicy policy,
                    std::size_t workers) {
  if (b1_values.empty()) throw std::invalid_argument("sweep_b1: empty b1 axis");
  for (double b : b1_values)
    if (!(b > 0.0)) throw std::invalid_argument("sweep_b1: b1 values must be > 0");
  const RwaModel model = build_rwa_model(spec, choice);
  const std::size_t n = b1_values.size();
  ScanResult r;
  r.axis1_name = "b1";
  r.axis1 = b1_values;
  r.fidelity.resize(n);
  r.fidelity_computational.resize(n);
  r.t_g.resize(n);
  r.t_w.resize(n);
  r.spec = spec;
  r.choice = choice;
  r.policy = std::string(schedule_policy_name(policy));
  parallel_for(n, resolve_workers(workers), [&](std::size_t i) {
    const PulseSchedule s = schedule_for(model, b1_values[i], policy);
    const GateReport g = evaluate_gate(model, s);
    r.fidelity[i] = g.fidelity;
    r.fidelity_computational[i] = g.fidelity_computational;
    r.t_g[i] = s.t_g;
    r.t_w[i] = s.t_w;
  });
  return r;
}

ScanResult scan_b1_tw(const SystemSpec& spec, const TransitionChoice& choice,
                      const std::vector<double>& b1_values, const std::vector<double>& tw_values,
                      PhasePolicy phases, std::size_t workers) {
  if (b1_values.empty() || tw_values.empty()) {
    throw std::invalid_argument("scan_b1_tw: empty axis");
  }
  for (double b : b1_values)
    if (!(b > 0.0)) throw std::invalid_argument("scan_b1_tw: b1 values must be > 0");
  for (double tw : tw_values)
    if (!(tw >= 0.0)) throw std::invalid_argument("scan_b1_tw: t_w values must be >= 0");
  const RwaModel model = build_rwa_model(spec, choice);
  const TargetGate target = target_for(model);
  const std::size_t rows = b1_values.size();
  const std::size_t cols = tw_values.size();
  ScanResult r;
  r.axis1_name = "b1";
  r.axis1 = b1_values;
  r.axis2_name = "t_w";
  r.axis2 = tw_values;
  r.fidelity.resize(rows * cols);
  r.t_g.resize(rows);
  r.spec = spec;
  r.choice = choice;
  r.policy = std::string(phase_policy_name(phases));
  parallel_for(rows, resolve_workers(workers), [&](std::size_t i) {
    const double b1 = b1_values[i];
    const double t_g = kPi / b1;
    const ComplexMatrix ud = drive_propagator(model, b1, t_g);
    r.t_g[i] = t_g;
    for (std::size_t j = 0; j < cols; ++j) {
      const double tw = tw_values[j];
      r.fidelity[i * cols + j] = fidelity_from_undressed(
          model, diag_times(free_phases(model, tw), ud), target, b1, t_g, tw, phases);
    }
  });
  return r;
}

std::vector<SyncPoint> find_sync_numeric(const SystemSpec& spec, const TransitionChoice& choice,
                                         const SyncSearchOptions& options) {
  if (!(options.threshold > 0.0 && options.threshold < 1.0)) {
    throw std::invalid_argument("find_sync_numeric: threshold must lie in (0, 1)");
  }
  if (options.count < 3) throw std::invalid_argument("find_sync_numeric: count must be >= 3");
  const RwaModel model = build_rwa_model(spec, choice);
  double lo = options.b1_min;
  double hi = options.b1_max;
  if (lo == 0.0 && hi == 0.0) {
    const double scale = model.min_off_resonant_detuning();
    lo = 0.05 * scale;
    hi = 3.0 * scale;
  }
  if (!(lo > 0.0 && hi > lo)) throw std::invalid_argument("find_sync_numeric: empty b1 range");

  auto f0 = [&](double b1) { return fidelity_at(model, b1, kPi / b1, 0.0, options.phases); };
  const std::vector<double> grid = linspace(lo, hi, options.count);
  std::vector<double> values(grid.size());
  parallel_for(grid.size(), resolve_workers(options.workers),
               [&](std::size_t i) { values[i] = f0(grid[i]); });

  std::vector<std::size_t> peaks;
  for (std::size_t j = 1; j + 1 < grid.size(); ++j)
    if (values[j] >= values[j - 1] && values[j] > values[j + 1]) peaks.push_back(j);

  std::vector<SyncPoint> found(peaks.size());
  std::vector<std::uint8_t> keep(peaks.size(), 0);
  parallel_for(peaks.size(), resolve_workers(options.workers), [&](std::size_t k) {
    const std::size_t j = peaks[k];
    auto [b1, f] = golden_max(f0, grid[j - 1], grid[j + 1]);
    if (f < values[j]) {
      b1 = grid[j];
      f = values[j];
    }
    SyncPoint p;
    p.b1 = b1;
    p.t_g = kPi / b1;
    p.fidelity = f;
    const auto [tw, ftw] =
        optimize_waiting_time(model, b1, p.t_g, options.phases, options.tw_samples);
    p.t_w_opt = tw;
    p.fidelity_tw_opt = std::max(ftw, f);
    if (ftw < f) p.t_w_opt = 0.0;
    found[k] = p;
    keep[k] = (f >= options.threshold || ftw >= options.threshold) ? 1 : 0;
  });

  std::vector<SyncPoint> out;
  for (std::size_t k = found.size(); k-- > 0;)
    if (keep[k]) out.push_back(found[k]);
  return out;
}

std::vector<double> linspace(double start, double stop, std::size_t count) {
  if (count < 2) throw std::invalid_argument("linspace: count must be >= 2");
  std::vector<double> v(count);
  const double step = (stop - start) / static_cast<double>(count - 1);
  for (std::size_t i = 0; i < count; ++i) v[i] = start + step * static_cast<double>(i);
  v.back() = stop;
  return v;
}

}  // namespace nvsync
