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

#include "nvsync/systems.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "nvsync/spinalg/spin.hpp"

namespace nvsync {
namespace {

using units::from_mhz;

bool has_carbon(Register reg) { return reg == Register::N14_C13; }
int nitrogen_two_spin(Register reg) { return reg == Register::N15 ? 1 : 2; }

// Position of a doubled quantum number in a descending multiplet.
std::size_t level_index(int two_spin, int two_m) {
  return static_cast<std::size_t>((two_spin - two_m) / 2);
}

struct Operators {
  ComplexMatrix electron_sz, electron_sx;
  ComplexMatrix nitrogen_iz;
  ComplexMatrix carbon_iz;  // empty unless the register has a carbon
};

// Embeds electron (x) nitrogen (x) carbon single-particle operators.
Operators embed(Register reg) {
  const SpinOperators s = spin_ops(1.0);
  const SpinOperators n = spin_ops(nitrogen_two_spin(reg) / 2.0);
  const auto id_e = ComplexMatrix::identity(3);
  const auto id_n = ComplexMatrix::identity(n.multiplicity());
  Operators ops;
  if (has_carbon(reg)) {
    const SpinOperators c = spin_ops(0.5);
    const auto id_c = ComplexMatrix::identity(2);
    ops.electron_sz = kron(s.sz, kron(id_n, id_c));
    ops.electron_sx = kron(s.sx, kron(id_n, id_c));
    ops.nitrogen_iz = kron(id_e, kron(n.sz, id_c));
    ops.carbon_iz = kron(id_e, kron(id_n, c.sz));
  } else {
    ops.electron_sz = kron(s.sz, id_n);
    ops.electron_sx = kron(s.sx, id_n);
    ops.nitrogen_iz = kron(id_e, n.sz);
  }
  return ops;
}

double nitrogen_gamma(const SystemSpec& spec) {
  return spec.reg == Register::N15 ? spec.constants.gamma_n_15n : spec.constants.gamma_n_14n;
}
double nitrogen_a_par(const SystemSpec& spec) {
  return spec.reg == Register::N15 ? spec.constants.a_par_15n : spec.constants.a_par_14n;
}
double nitrogen_quadrupole(const SystemSpec& spec) {
  return spec.reg == Register::N15 ? 0.0 : spec.constants.quadrupole_14n;
}

}  // namespace

std::string_view register_name(Register reg) {
  switch (reg) {
    case Register::N15:
      return "N15";
    case Register::N14:
      return "N14";
    case Register::N14_C13:
      return "N14_C13";
  }
  return "unknown";
}

Register parse_register(std::string_view name) {
  if (name == "N15") return Register::N15;
  if (name == "N14") return Register::N14;
  if (name == "N14_C13") return Register::N14_C13;
  throw std::invalid_argument("unknown register '" + std::string(name) +
                              "' (expected N15, N14 or N14_C13)");
}

PhysicalConstants PhysicalConstants::defaults() {
  return PhysicalConstants{
      .zero_field_splitting = from_mhz(2880.0),
      .gamma_e = from_mhz(28000.0),
      .gamma_n_15n = from_mhz(-4.3),
      .gamma_n_14n = from_mhz(3.1),
      .gamma_n_13c = from_mhz(10.705),
      .a_par_15n = from_mhz(3.03),
      .a_perp_15n = from_mhz(3.65),
      .a_par_14n = from_mhz(-2.16),
      .a_perp_14n = from_mhz(-2.7),
      .quadrupole_14n = from_mhz(-4.96),
  };
}

SystemSpec SystemSpec::make(Register reg, double bz) {
  SystemSpec spec;
  spec.reg = reg;
  spec.bz = bz;
  if (reg == Register::N14_C13) spec.a_zz_13c = kDefaultAzz13C;
  return spec;
}

void SystemSpec::validate() const {
  if (!(bz > 0.0)) throw std::invalid_argument("SystemSpec: Bz must be positive");
  if (has_carbon(reg) != a_zz_13c.has_value()) {
    throw std::invalid_argument(
        "SystemSpec: A_zz_13C must be given exactly when the register is N14_C13");
  }
}

std::string to_string(const NuclearConfig& config) {
  auto half = [](int two_m, bool half_integer) {
    std::string sign = two_m > 0 ? "+" : (two_m < 0 ? "-" : "");
    const int mag = std::abs(two_m);
    if (half_integer) return sign + std::to_string(mag) + "/2";
    return sign + std::to_string(mag / 2);
  };
  std::string out = "mN=" + half(config.two_m_n, config.two_m_n % 2 != 0);
  if (config.two_m_c) out += ",mC=" + half(*config.two_m_c, true);
  return out;
}

TransitionChoice TransitionChoice::standard(Register reg) {
  switch (reg) {
    case Register::N15:
      return nitrogen(-1);
    case Register::N14:
      return nitrogen(2);
    case Register::N14_C13:
      return nitrogen_carbon(2, 1);
  }
  throw std::invalid_argument("TransitionChoice::standard: bad register");
}

void validate_choice(Register reg, const TransitionChoice& choice) {
  const auto configs = nuclear_configs(reg);
  if (std::find(configs.begin(), configs.end(), choice.condition) == configs.end()) {
    throw std::invalid_argument("transition condition " + to_string(choice.condition) +
                                " is not a nuclear state of register " +
                                std::string(register_name(reg)));
  }
}

std::vector<NuclearConfig> nuclear_configs(Register reg) {
  const int two_i = nitrogen_two_spin(reg);
  std::vector<NuclearConfig> out;
  auto add_nitrogen = [&](std::optional<int> two_m_c) {
    for (int two_m = two_i; two_m >= -two_i; two_m -= 2) out.push_back({two_m, two_m_c});
  };
  if (has_carbon(reg)) {
    add_nitrogen(1);
    add_nitrogen(-1);
  } else {
    add_nitrogen(std::nullopt);
  }
  return out;
}

std::vector<NuclearConfig> computational_configs(Register reg) {
  auto all = nuclear_configs(reg);
  if (reg == Register::N15) return all;
  std::erase_if(all, [](const NuclearConfig& c) { return c.two_m_n == -2; });
  return all;
}

std::size_t full_dim(Register reg) {
  return 3 * static_cast<std::size_t>(nitrogen_two_spin(reg) + 1) * (has_carbon(reg) ? 2 : 1);
}

std::size_t full_index(Register reg, int m_s, const NuclearConfig& config) {
  if (m_s < -1 || m_s > 1) throw std::out_of_range("full_index: m_s outside {-1, 0, 1}");
  const int two_i = nitrogen_two_spin(reg);
  const std::size_t n_dim = static_cast<std::size_t>(two_i + 1);
  const std::size_t c_dim = has_carbon(reg) ? 2 : 1;
  const std::size_t e = static_cast<std::size_t>(1 - m_s);
  const std::size_t n = level_index(two_i, config.two_m_n);
  const std::size_t c = has_carbon(reg) ? level_index(1, config.two_m_c.value()) : 0;
  return (e * n_dim + n) * c_dim + c;
}

ComplexMatrix build_static_hamiltonian(const SystemSpec& spec) {
  spec.validate();
  const Operators ops = embed(spec.reg);
  const auto& k = spec.constants;
  const ComplexMatrix& sz = ops.electron_sz;
  const ComplexMatrix& iz = ops.nitrogen_iz;

  ComplexMatrix h = (sz * sz) * k.zero_field_splitting;
  h += sz * (k.gamma_e * spec.bz);
  h += (iz * iz) * nitrogen_quadrupole(spec);
  h += iz * (nitrogen_gamma(spec) * spec.bz);
  h += (sz * iz) * nitrogen_a_par(spec);
  if (has_carbon(spec.reg)) {
    const ComplexMatrix& cz = ops.carbon_iz;
    h += cz * (k.gamma_n_13c * spec.bz);
    h += (sz * cz) * spec.a_zz_13c.value();
  }
  return h;
}

ComplexMatrix nuclear_hamiltonian(const SystemSpec& spec) {
  spec.validate();
  const Operators ops = embed(spec.reg);
  const ComplexMatrix& iz = ops.nitrogen_iz;
  ComplexMatrix h = (iz * iz) * nitrogen_quadrupole(spec);
  h += iz * (nitrogen_gamma(spec) * spec.bz);
  if (has_carbon(spec.reg)) h += ops.carbon_iz * (spec.constants.gamma_n_13c * spec.bz);
  return h;
}

ComplexMatrix electron_sz(Register reg) { return embed(reg).electron_sz; }
ComplexMatrix electron_sx(Register reg) { return embed(reg).electron_sx; }

double level_energy(const SystemSpec& spec, int m_s, const NuclearConfig& config) {
  const ComplexMatrix h = build_static_hamiltonian(spec);
  const std::size_t i = full_index(spec.reg, m_s, config);
  return h(i, i).real();
}

double drive_frequency(const SystemSpec& spec, const TransitionChoice& choice) {
  validate_choice(spec.reg, choice);
  const ComplexMatrix h = build_static_hamiltonian(spec);
  const std::size_t lower = full_index(spec.reg, 0, choice.condition);
  const std::size_t upper = full_index(spec.reg, -1, choice.condition);
  return h(upper, upper).real() - h(lower, lower).real();
}

ComplexMatrix RwaModel::hamiltonian(double b1) const {
  ComplexMatrix h = ComplexMatrix::diagonal(std::span<const double>(h_diag));
  for (const auto& [lo, hi] : drive_pairs) {
    h(lo, hi) = 0.5 * b1;
    h(hi, lo) = 0.5 * b1;
  }
  return h;
}

ComplexMatrix RwaModel::free_hamiltonian() const {
  return ComplexMatrix::diagonal(std::span<const double>(h_diag));
}

std::vector<std::size_t> RwaModel::computational_indices() const {
  const auto comp = computational_configs(reg);
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < basis.size(); ++i)
    if (std::find(comp.begin(), comp.end(), basis[i].nuclear) != comp.end()) out.push_back(i);
  return out;
}

std::size_t RwaModel::pair_of(const NuclearConfig& config) const {
  for (std::size_t k = 0; k < configs.size(); ++k)
    if (configs[k] == config) return k;
  throw std::invalid_argument("RwaModel: no nuclear configuration " + to_string(config));
}

double RwaModel::min_off_resonant_detuning() const {
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k < drive_pairs.size(); ++k) {
    if (k == resonant_pair) continue;
    const double d = std::abs(detuning(k));
    if (d > 0.0) best = std::min(best, d);
  }
  return best;
}

RwaModel build_rwa_model(const SystemSpec& spec, const TransitionChoice& choice) {
  validate_choice(spec.reg, choice);
  const ComplexMatrix h0 = build_static_hamiltonian(spec);
  RwaModel model;
  model.reg = spec.reg;
  model.configs = nuclear_configs(spec.reg);
  model.dim = 2 * model.configs.size();
  model.omega0 = drive_frequency(spec, choice);
  for (std::size_t k = 0; k < model.configs.size(); ++k) {
    const NuclearConfig& c = model.configs[k];
    const double e0 = h0(full_index(spec.reg, 0, c), full_index(spec.reg, 0, c)).real();
    const double e1 = h0(full_index(spec.reg, -1, c), full_index(spec.reg, -1, c)).real();
    model.basis.push_back({c, 0});
    model.basis.push_back({c, 1});
    model.h_diag.push_back(0.0);
    model.h_diag.push_back((e1 - e0) - model.omega0);
    model.drive_pairs.emplace_back(2 * k, 2 * k + 1);
    if (c == choice.condition) model.resonant_pair = k;
  }
  switch (spec.reg) {
    case Register::N15:
      model.a_eff = std::abs(spec.constants.a_par_15n);
      break;
    case Register::N14:
      model.a_eff = std::abs(spec.constants.a_par_14n);
      break;
    case Register::N14_C13:
      model.a_eff = std::abs(spec.constants.a_par_14n + 0.5 * spec.a_zz_13c.value());
      break;
  }
  return model;
}

double detuning_margin(const SystemSpec& spec) {
  const double zeeman = spec.constants.gamma_e * spec.bz;
  const double d = spec.constants.zero_field_splitting;
  return zeeman < d ? 2.0 * zeeman : 2.0 * d;
}

std::pair<double, double> gslac_resonance(const SystemSpec& spec) {
  if (spec.reg != Register::N15) {
    throw std::invalid_argument("gslac_resonance: only defined for the N15 register");
  }
  const auto& k = spec.constants;
  const double upper = (k.zero_field_splitting + 0.5 * k.a_par_15n) / (k.gamma_e - k.gamma_n_15n);
  const double lower = (k.zero_field_splitting - 0.5 * k.a_par_15n) / (k.gamma_e + k.gamma_n_15n);
  return {upper, lower};
}

}  // namespace nvsync
