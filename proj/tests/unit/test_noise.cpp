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

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "nvsync/noise.hpp"
#include "oracles.hpp"

namespace nvsync {
namespace {

constexpr double kPi = std::numbers::pi;

struct N15Sync {
  SystemSpec spec = SystemSpec::make(Register::N15);
  TransitionChoice choice = TransitionChoice::standard(Register::N15);
  RwaModel model = build_rwa_model(spec, choice);
  TargetGate target = target_for(model);
  PulseSchedule schedule =
      schedule_for(model, spec.constants.a_par_15n / std::sqrt(3.0), SchedulePolicy::uncorrected);
};

TEST(Noise, SigmaFromT2star) {
  EXPECT_NEAR(sigma_from_t2star(std::sqrt(2.0)), 1.0, 1e-15);
  EXPECT_NEAR(sigma_from_t2star(2.0), 1.0 / std::sqrt(2.0), 1e-15);
  EXPECT_THROW(sigma_from_t2star(0.0), std::invalid_argument);
  EXPECT_NEAR(NoiseSpec::from_t2star(2.0).resolved_sigma(), 1.0 / std::sqrt(2.0), 1e-15);
  EXPECT_EQ(NoiseSpec::from_sigma(0.3).resolved_sigma(), 0.3);
}

TEST(Noise, SpecValidation) {
  EXPECT_NO_THROW(NoiseSpec::from_sigma(1.0).validate());
  EXPECT_THROW(NoiseSpec::from_sigma(1.0, 2).validate(), std::invalid_argument);
  EXPECT_THROW(NoiseSpec::from_sigma(0.0).validate(), std::invalid_argument);
  EXPECT_THROW(NoiseSpec::from_t2star(-1.0).validate(), std::invalid_argument);
  EXPECT_THROW(NoiseSpec{}.validate(), std::invalid_argument);
  NoiseSpec both = NoiseSpec::from_sigma(1.0);
  both.t2_star = 2.0;
  EXPECT_THROW(both.validate(), std::invalid_argument);
  N15Sync s;
  EXPECT_THROW(noise_averaged_fidelity(s.model, s.schedule, s.target, NoiseSpec::from_sigma(1.0, 1)),
               std::invalid_argument);
}

TEST(Noise, QuadratureMoments) {
  for (std::size_t order : {3u, 5u, 12u, 41u, 81u}) {
    const auto q = gauss_hermite(order);
    ASSERT_EQ(q.nodes.size(), order);
    EXPECT_TRUE(std::is_sorted(q.nodes.begin(), q.nodes.end()));
    double total = 0.0;
    for (double w : q.weights) {
      EXPECT_GE(w, 0.0);
      total += w;
    }
    EXPECT_NEAR(total, 1.0, 1e-14);
    // Exact through degree 2 order - 1: E[X^2k] = (2k-1)!!.
    double dfact = 1.0;
    for (std::size_t k = 1; 2 * k <= std::min<std::size_t>(2 * order - 1, 30); ++k) {
      dfact *= static_cast<double>(2 * k - 1);
      double moment = 0.0;
      double odd = 0.0;
      for (std::size_t i = 0; i < order; ++i) {
        moment += q.weights[i] * std::pow(q.nodes[i], 2.0 * k);
        odd += q.weights[i] * std::pow(q.nodes[i], 2.0 * k - 1);
      }
      EXPECT_NEAR(moment / dfact, 1.0, 1e-9) << "order " << order << " k " << k;
      EXPECT_NEAR(odd, 0.0, 1e-9 * dfact);
    }
  }
  EXPECT_THROW(gauss_hermite(0), std::invalid_argument);
}

// Free-induction decay: E[cos(dB t)] = exp(-(t / T2*)^2).
TEST(Noise, QuadratureReproducesFreeInductionDecay) {
  const auto q = gauss_hermite(41);
  for (double t2 : {2.0, 7.0, 90.0})
    for (double t : {0.1, 1.0, 2.0, 4.0}) {
      const double sigma = sigma_from_t2star(t2);
      double acc = 0.0;
      for (std::size_t i = 0; i < q.nodes.size(); ++i) acc += q.weights[i] * std::cos(sigma * q.nodes[i] * t);
      EXPECT_NEAR(acc, std::exp(-(t / t2) * (t / t2)), 1e-10) << t2 << " " << t;
    }
}

TEST(Noise, ShiftedModel) {
  N15Sync s;
  const auto same = shifted_rwa_model(s.model, 0.0);
  EXPECT_EQ(same.h_diag, s.model.h_diag);
  const auto moved = shifted_rwa_model(s.model, 0.25);
  for (std::size_t i = 0; i < s.model.dim; ++i) {
    const double want = s.model.h_diag[i] - (s.model.basis[i].electron == 1 ? 0.25 : 0.0);
    EXPECT_EQ(moved.h_diag[i], want);
  }
  EXPECT_EQ(moved.a_eff, s.model.a_eff);
}

TEST(Noise, VanishingNoiseIsNoiseless) {
  N15Sync s;
  const double clean = avg_gate_fidelity(compose_gate(s.model, s.schedule), s.target);
  const double f = noise_averaged_fidelity(s.spec, s.choice, s.schedule, s.target, NoiseSpec::from_sigma(1e-9));
  EXPECT_NEAR(f, clean, 1e-9);
}

TEST(Noise, QuadratureMatchesMonteCarlo) {
  N15Sync s;
  for (double t2 : {2.0, 7.0}) {
    const double sigma = sigma_from_t2star(t2);
    const double gh = noise_averaged_fidelity(s.model, s.schedule, s.target, NoiseSpec::from_t2star(t2));
    const double mc = oracle::monte_carlo_average(
        [&](double db) {
          return avg_gate_fidelity(compose_gate(shifted_rwa_model(s.model, db), s.schedule), s.target);
        },
        sigma, 100000, 20261014);
    EXPECT_NEAR(gh, mc, 2e-3) << t2;
  }
}

TEST(Noise, QuadratureConverged) {
  const auto spec = SystemSpec::make(Register::N15);
  const auto choice = TransitionChoice::standard(Register::N15);
  const auto model = build_rwa_model(spec, choice);
  const auto target = target_for(model);
  for (double b1 : {0.05 * model.a_eff, 2.0, model.a_eff / std::sqrt(3.0), 30.0})
    for (auto policy : {SchedulePolicy::corrected, SchedulePolicy::uncorrected}) {
      const auto sched = schedule_for(model, b1, policy);
      for (double t2 : {2.0, 7.0, 90.0}) {
        const double f41 = noise_averaged_fidelity(model, sched, target, NoiseSpec::from_t2star(t2, 41));
        const double f81 = noise_averaged_fidelity(model, sched, target, NoiseSpec::from_t2star(t2, 81));
        EXPECT_NEAR(f41, f81, 1e-6) << b1 << " " << t2;
      }
    }
}

TEST(Noise, BoundedByNodeMaximum) {
  N15Sync s;
  const auto q = gauss_hermite(41);
  const double sigma = sigma_from_t2star(2.0);
  double best = 0.0;
  for (double x : q.nodes)
    best = std::max(best, avg_gate_fidelity(compose_gate(shifted_rwa_model(s.model, sigma * x), s.schedule), s.target));
  const double f = noise_averaged_fidelity(s.model, s.schedule, s.target, NoiseSpec::from_sigma(sigma));
  EXPECT_LE(f, best + 1e-15);
  EXPECT_GE(f, 0.0);
}

TEST(Noise, MonotoneInNoiseStrength) {
  const auto spec = SystemSpec::make(Register::N15);
  const auto model = build_rwa_model(spec, TransitionChoice::standard(Register::N15));
  const auto target = target_for(model);
  for (const auto& p : analytic_sync_points(model.a_eff, 3)) {
    const auto sched = make_schedule(model, p.b1, p.t_g, 0.0, PhasePolicy::sync_formula);
    double prev = 1.0;
    for (double sigma : {0.01, 0.05, 0.1, 0.3, 0.7, 1.0, 2.0}) {
      const double f = noise_averaged_fidelity(model, sched, target, NoiseSpec::from_sigma(sigma));
      EXPECT_LE(f, prev + 1e-9) << *p.n << "," << *p.m << " sigma " << sigma;
      prev = f;
    }
  }
}

TEST(Noise, OnResonanceIsBest) {
  N15Sync s;
  const double sigma = sigma_from_t2star(2.0);
  const double f0 = avg_gate_fidelity(compose_gate(s.model, s.schedule), s.target);
  for (double db : {sigma, -sigma})
    EXPECT_GE(f0, avg_gate_fidelity(compose_gate(shifted_rwa_model(s.model, db), s.schedule), s.target));
}

TEST(Noise, WeakDrivingSuffersMore) {
  const auto spec = SystemSpec::make(Register::N15);
  const auto choice = TransitionChoice::standard(Register::N15);
  const double a = spec.constants.a_par_15n;
  const auto scan = noise_scan(spec, choice, {a / 50.0, a / std::sqrt(3.0)}, {2.0}, SchedulePolicy::uncorrected, 41, 1);
  // The weak point uses the corrected policy to be a fair comparison.
  const auto weak = noise_scan(spec, choice, {a / 50.0}, {2.0}, SchedulePolicy::corrected, 41, 1);
  EXPECT_LT(weak.at(0, 0), scan.at(1, 0));
  EXPECT_GT(scan.at(1, 0), 0.9);
}

TEST(Noise, ScanLayoutAndDeterminism) {
  const auto spec = SystemSpec::make(Register::N14);
  const auto choice = TransitionChoice::standard(Register::N14);
  const std::vector<double> b1 = {0.5, 1.0, 2.0, 4.0, 8.0};
  const std::vector<double> t2 = {2.0, 7.0, 90.0};
  const auto a = noise_scan(spec, choice, b1, t2, SchedulePolicy::phase_optimized, 21, 1);
  const auto b = noise_scan(spec, choice, b1, t2, SchedulePolicy::phase_optimized, 21, 3);
  EXPECT_EQ(a.axis2_name, "t2_star");
  EXPECT_EQ(a.cols(), 3u);
  EXPECT_EQ(a.fidelity.size(), 15u);
  EXPECT_EQ(a.fidelity, b.fidelity);
  for (std::size_t i = 0; i < b1.size(); ++i) {
    EXPECT_NEAR(a.t_g[i], kPi / b1[i], 1e-15);
    // Longer T2* means less noise.
    EXPECT_GE(a.at(i, 2), a.at(i, 0) - 1e-9);
  }
  EXPECT_THROW(noise_scan(spec, choice, {}, t2, SchedulePolicy::corrected), std::invalid_argument);
  EXPECT_THROW(noise_scan(spec, choice, b1, {0.0}, SchedulePolicy::corrected), std::invalid_argument);
}

}  // namespace
}  // namespace nvsync
