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

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "nvsync/gates.hpp"
#include "nvsync/labframe.hpp"

namespace nvsync {
namespace {

constexpr double kPi = std::numbers::pi;

TEST(Labframe, DriveFor) {
  const auto spec = SystemSpec::make(Register::N15);
  const auto choice = TransitionChoice::standard(Register::N15);
  const auto d = drive_for(spec, choice, 2.0);
  EXPECT_NEAR(d.b1_tilde, 2.0 * std::sqrt(2.0), 1e-15);
  EXPECT_EQ(d.omega0, drive_frequency(spec, choice));
  EXPECT_NEAR(default_time_step(d.omega0), 2.0 * kPi / std::abs(d.omega0) / 40.0, 1e-18);
  EXPECT_THROW(default_time_step(0.0), std::invalid_argument);
}

TEST(Labframe, ZeroDriveIsStaticEvolution) {
  for (auto reg : {Register::N15, Register::N14, Register::N14_C13}) {
    const auto spec = SystemSpec::make(reg);
    const auto choice = TransitionChoice::standard(reg);
    DriveSpec drive = drive_for(spec, choice, 0.0);
    const double t = 0.01;
    const auto lab = propagate_lab(spec, drive, t);
    const auto h0 = build_static_hamiltonian(spec);
    for (std::size_t i = 0; i < h0.dim(); ++i)
      for (std::size_t j = 0; j < h0.dim(); ++j) {
        const cplx want = i == j ? std::polar(1.0, -h0(i, i).real() * t) : cplx{};
        ASSERT_LE(std::abs(lab.u(i, j) - want), 1e-9) << register_name(reg);
      }
    // In the rotating frame this is the drive-off RWA evolution.
    const auto rot = to_rotating_frame(lab.u, spec, choice, t);
    const auto model = build_rwa_model(spec, choice);
    EXPECT_LE(max_abs_diff(rot, free_propagator(model, t)), 1e-8);
  }
}

TEST(Labframe, StepCountCoversDuration) {
  const auto spec = SystemSpec::make(Register::N15);
  const auto drive = drive_for(spec, TransitionChoice::standard(Register::N15), 1.0);
  const double dt = default_time_step(drive.omega0);
  const auto lab = propagate_lab(spec, drive, 1000.5 * dt);
  EXPECT_EQ(lab.steps, 1001u);
  EXPECT_NEAR(lab.dt * lab.steps, 1000.5 * dt, 1e-15);
  EXPECT_LE(lab.dt, dt);
  EXPECT_TRUE(lab.u.is_unitary(1e-8));
  const auto none = propagate_lab(spec, drive, 0.0);
  EXPECT_EQ(none.u, ComplexMatrix::identity(6));
  EXPECT_EQ(none.steps, 0u);
}

TEST(Labframe, RejectsCoarseStep) {
  const auto spec = SystemSpec::make(Register::N15);
  const auto drive = drive_for(spec, TransitionChoice::standard(Register::N15), 1.0);
  const double period = 2.0 * kPi / std::abs(drive.omega0);
  EXPECT_THROW(propagate_lab(spec, drive, 0.01, period / 19.0), std::invalid_argument);
  EXPECT_NO_THROW(propagate_lab(spec, drive, 0.001, period / 20.0));
  EXPECT_THROW(propagate_lab(spec, drive, 0.01, -1e-6), std::invalid_argument);
  EXPECT_THROW(propagate_lab(spec, drive, -1.0), std::invalid_argument);
  DriveSpec bad = drive;
  bad.b1_tilde = -1.0;
  EXPECT_THROW(propagate_lab(spec, bad, 0.01), std::invalid_argument);
}

// Second order: halving dt cuts the error by about four.
TEST(Labframe, MidpointRuleIsSecondOrder) {
  const auto spec = SystemSpec::make(Register::N15);
  DriveSpec drive = drive_for(spec, TransitionChoice::standard(Register::N15), 300.0);
  const double period = 2.0 * kPi / std::abs(drive.omega0);
  const double t = 25.3 * period;
  const auto ref = propagate_lab(spec, drive, t, period / 640.0).u;
  const double e1 = max_abs_diff(propagate_lab(spec, drive, t, period / 20.0).u, ref);
  const double e2 = max_abs_diff(propagate_lab(spec, drive, t, period / 40.0).u, ref);
  const double e3 = max_abs_diff(propagate_lab(spec, drive, t, period / 80.0).u, ref);
  EXPECT_GT(e1, 1e-9);
  EXPECT_NEAR(e1 / e2, 4.0, 0.6);
  EXPECT_NEAR(e2 / e3, 4.0, 0.6);
}

TEST(Labframe, FrameAtZeroTimeIsProjection) {
  const auto spec = SystemSpec::make(Register::N14);
  const auto choice = TransitionChoice::standard(Register::N14);
  const auto model = build_rwa_model(spec, choice);
  const auto id = to_rotating_frame(ComplexMatrix::identity(9), spec, choice, 0.0);
  EXPECT_EQ(id, ComplexMatrix::identity(6));
  ComplexMatrix u(9);
  for (std::size_t i = 0; i < 9; ++i) u(i, i) = std::polar(1.0, 0.3 * i);
  const auto rot = to_rotating_frame(u, spec, choice, 0.77);
  for (std::size_t i = 0; i < 6; ++i)
    for (std::size_t j = 0; j < 6; ++j)
      if (i != j) {
        EXPECT_EQ(rot(i, j), cplx{});
      }
  EXPECT_THROW(to_rotating_frame(ComplexMatrix::identity(6), spec, choice, 0.0),
               std::invalid_argument);
  const auto emb = rwa_embedding(model);
  ASSERT_EQ(emb.size(), 6u);
  EXPECT_EQ(emb[0], full_index(Register::N14, 0, model.configs[0]));
  EXPECT_EQ(emb[1], full_index(Register::N14, -1, model.configs[0]));
}

TEST(Labframe, ComparisonFidelity) {
  const auto a = ComplexMatrix::identity(3);
  EXPECT_NEAR(comparison_fidelity(a, a * std::polar(1.0, 1.0)), 1.0, 1e-15);
  const ComplexMatrix b = ComplexMatrix::diagonal(std::vector<double>{1, 1, -1});
  EXPECT_NEAR(comparison_fidelity(a, b), (3.0 + 1.0) / 12.0, 1e-15);
}

// Short runs here; the full-gate comparison lives in the acceptance binary.
TEST(Labframe, AgreesWithRwaN15) {
  const auto spec = SystemSpec::make(Register::N15);
  const double b1 = spec.constants.a_par_15n / std::sqrt(3.0);
  const auto v = validate_rwa(spec, TransitionChoice::standard(Register::N15), b1, 0.05);
  EXPECT_GE(v.fidelity, 1.0 - 1e-3);
  EXPECT_LE(v.max_abs_error, 5e-3);
  EXPECT_LE(v.plus_one_leakage, 1e-5);
}

TEST(Labframe, AgreesWithRwaN14) {
  const auto spec = SystemSpec::make(Register::N14);
  const double b1 = 0.1 * std::abs(spec.constants.a_par_14n);
  const auto v = validate_rwa(spec, TransitionChoice::standard(Register::N14), b1, 0.1);
  EXPECT_GE(v.fidelity, 1.0 - 1e-3);
  EXPECT_LE(v.plus_one_leakage, 1e-5);
}

TEST(Labframe, AgreesWithRwaTwelveLevel) {
  const auto spec = SystemSpec::make(Register::N14_C13);
  const double b1 = 0.1 * std::abs(spec.constants.a_par_14n);
  const auto v = validate_rwa(spec, TransitionChoice::standard(Register::N14_C13), b1, 0.05);
  EXPECT_GE(v.fidelity, 1.0 - 1e-3);
  EXPECT_LE(v.plus_one_leakage, 1e-5);
  EXPECT_GT(v.steps, 0u);
}

}  // namespace
}  // namespace nvsync
