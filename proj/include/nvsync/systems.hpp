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

// Physical constants and Hamiltonian builders for NV-center registers.
//
// Three registers are supported: NV-15N (electron + spin-1/2 nitrogen),
// NV-14N (electron + spin-1 nitrogen) and NV-14N-13C (electron + spin-1
// nitrogen + one spin-1/2 carbon). The hyperfine interaction is kept in its
// secular form A_par Sz Iz; perpendicular components are dropped.
//
// Qubit encoding, shared by every module:
//   electron   |0>_e = m_s = 0,     |1>_e = m_s = -1   (m_s = +1 is excluded)
//   15N        |0>_n = m = +1/2,    |1>_n = m = -1/2
//   14N        |0>_N = m = 0,       |1>_N = m = +1,    m = -1 is a leakage level
//   13C        |0>_C = m = +1/2,    |1>_C = m = -1/2

#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "nvsync/spinalg/complex_matrix.hpp"
#include "nvsync/units.hpp"

namespace nvsync {

enum class Register { N15, N14, N14_C13 };

std::string_view register_name(Register reg);
/// Accepts "N15", "N14", "N14_C13" (case-sensitive). Throws std::invalid_argument.
Register parse_register(std::string_view name);

/// All rates in rad/us, gyromagnetic ratios in rad/(us T).
struct PhysicalConstants {
  double zero_field_splitting;  // D
  double gamma_e;
  double gamma_n_15n;
  double gamma_n_14n;
  double gamma_n_13c;
  double a_par_15n;
  double a_perp_15n;  // stored for reference, not used by any builder
  double a_par_14n;
  double a_perp_14n;  // stored for reference, not used by any builder
  double quadrupole_14n;

  static PhysicalConstants defaults();
};

inline constexpr double kDefaultBz = 0.5;                            // T
inline constexpr double kDefaultAzz13C = units::from_mhz(0.43);      // rad/us

struct SystemSpec {
  Register reg = Register::N15;
  double bz = kDefaultBz;
  /// Secular 13C coupling; required iff reg == N14_C13.
  std::optional<double> a_zz_13c;
  PhysicalConstants constants = PhysicalConstants::defaults();

  /// System with default constants; fills a_zz_13c for N14_C13.
  static SystemSpec make(Register reg, double bz = kDefaultBz);
  /// Throws std::invalid_argument on Bz <= 0 or an A_zz/register mismatch.
  void validate() const;
};

/// Nuclear magnetic quantum numbers, stored doubled so half-integers are exact.
struct NuclearConfig {
  int two_m_n = 0;
  std::optional<int> two_m_c;

  friend bool operator==(const NuclearConfig&, const NuclearConfig&) = default;
};

/// e.g. "mN=+1/2" or "mN=+1,mC=-1/2".
std::string to_string(const NuclearConfig& config);

/// Nuclear state conditioning the driven electron transition.
struct TransitionChoice {
  NuclearConfig condition;

  static TransitionChoice nitrogen(int two_m_n) { return {{two_m_n, std::nullopt}}; }
  static TransitionChoice nitrogen_carbon(int two_m_n, int two_m_c) {
    return {{two_m_n, two_m_c}};
  }
  /// The C_nNOT_e / CC_nNOT_e transition used throughout: 15N m=-1/2,
  /// 14N m=+1, 14N-13C {mN=+1, mC=+1/2}.
  static TransitionChoice standard(Register reg);
};

/// Throws std::invalid_argument when the quantum numbers do not belong to the
/// register's nuclear multiplets.
void validate_choice(Register reg, const TransitionChoice& choice);

/// Nuclear configurations in model order: carbon outermost (+1/2, -1/2),
/// nitrogen descending.
std::vector<NuclearConfig> nuclear_configs(Register reg);
/// The subset spanning the nuclear computational subspace.
std::vector<NuclearConfig> computational_configs(Register reg);

/// Full-space (electron spin-1 x nuclei) dimension: 6, 9 or 18.
std::size_t full_dim(Register reg);
/// Index in the full space for electron m_s in {+1, 0, -1}. Ordering is
/// electron (m_s descending) x nitrogen (descending) x carbon (descending).
std::size_t full_index(Register reg, int m_s, const NuclearConfig& config);

/// Secular static Hamiltonian H0 = D Sz^2 + gamma_e Bz Sz
///   + sum_j [Q_j Iz_j^2 + gamma_j Bz Iz_j + A_j Sz Iz_j] on the full space.
ComplexMatrix build_static_hamiltonian(const SystemSpec& spec);
/// Nuclear Zeeman + quadrupole part alone; generates the nuclear interaction picture.
ComplexMatrix nuclear_hamiltonian(const SystemSpec& spec);
/// Sz (x) 1 and Sx (x) 1 on the full space.
ComplexMatrix electron_sz(Register reg);
ComplexMatrix electron_sx(Register reg);

/// E(m_s, config) of the static Hamiltonian.
double level_energy(const SystemSpec& spec, int m_s, const NuclearConfig& config);

/// Resonance of m_s=0 <-> m_s=-1 conditioned on choice.
double drive_frequency(const SystemSpec& spec, const TransitionChoice& choice);

struct BasisLabel {
  NuclearConfig nuclear;
  int electron = 0;  // 0 -> m_s = 0, 1 -> m_s = -1
};

/// Rotating-frame model on the m_s in {0, -1} subspace. Basis: every nuclear
/// configuration k contributes (k, |0>_e) at 2k and (k, |1>_e) at 2k+1. The
/// drive amplitude b1 is symbolic; hamiltonian(b1) materializes it.
struct RwaModel {
  Register reg = Register::N15;
  std::size_t dim = 0;
  std::vector<NuclearConfig> configs;
  std::vector<BasisLabel> basis;
  /// Drive-off diagonal (H0 tilde), rad/us: 0 on |0>_e, detuning on |1>_e.
  std::vector<double> h_diag;
  std::vector<std::pair<std::size_t, std::size_t>> drive_pairs;
  std::size_t resonant_pair = 0;
  double omega0 = 0.0;
  /// Conditional shift setting the waiting-time period 2 pi / a_eff.
  double a_eff = 0.0;

  ComplexMatrix hamiltonian(double b1) const;
  ComplexMatrix free_hamiltonian() const;
  /// Detuning of pair k (h_diag at its |1>_e slot).
  double detuning(std::size_t pair) const { return h_diag[drive_pairs[pair].second]; }
  /// Basis indices of the computational subspace, in model order.
  std::vector<std::size_t> computational_indices() const;
  /// Pair index of a nuclear configuration; throws if absent.
  std::size_t pair_of(const NuclearConfig& config) const;
  /// Smallest nonzero |detuning| over the off-resonant pairs.
  double min_off_resonant_detuning() const;
};

RwaModel build_rwa_model(const SystemSpec& spec, const TransitionChoice& choice);

/// Separation between the m_s=+1 and m_s=-1 transition frequencies:
/// 2 gamma_e Bz below the level crossing, 2 D above it.
double detuning_margin(const SystemSpec& spec);

/// Both 15N ground-state anticrossing fields (D +- A/2) / (gamma_e -+ gamma_n),
/// tesla; first = upper signs. Throws for registers other than N15.
std::pair<double, double> gslac_resonance(const SystemSpec& spec);

}  // namespace nvsync
