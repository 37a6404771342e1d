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

// Internal units: angular frequency in rad/us, time in us, field in tesla.
// Linear frequencies (MHz) only appear at I/O boundaries.

#include <numbers>

namespace nvsync::units {

inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

/// MHz (linear) -> rad/us.
constexpr double from_mhz(double mhz) { return kTwoPi * mhz; }
/// rad/us -> MHz (linear).
constexpr double to_mhz(double rad_per_us) { return rad_per_us / kTwoPi; }

}  // namespace nvsync::units
