// Copyright 2026 The qdca Authors
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

/// Physical constants, material parameters and unit conversions.
///
/// Working units throughout the library: lengths in nm, energies in ueV,
/// times in ns, temperatures in mK, magnetic fields in mT.

#include <numbers>

namespace qdca {

namespace constants {
// CODATA 2018.
inline constexpr double kHbar = 0.6582119569;               // ueV * ns
inline constexpr double kBoltzmann = 0.08617333262;         // ueV / mK
inline constexpr double kCoulomb = 1.439964547e6;           // e^2/(4 pi eps0), ueV * nm
inline constexpr double kHbar2Over2Me = 38099.8212;         // hbar^2/(2 m_e), ueV * nm^2
inline constexpr double kBohrRadius = 0.0529177210903;      // nm
inline constexpr double kBohrMagneton = 0.057883818060;     // ueV / mT
inline constexpr double kElementaryCharge = 1.602176634e-19;  // C
inline constexpr double kPi = std::numbers::pi;
}  // namespace constants

/// Effective-mass material description of the host semiconductor.
struct MaterialParams {
  double m_star = 0.067;     // electron effective mass / m_e
  double eps_r = 10.8;       // relative permittivity
  double g_factor = -0.44;   // electron g-factor

  /// Throws std::invalid_argument unless m_star > 0 and eps_r >= 1.
  void validate() const;

  static MaterialParams gaas() { return {}; }
};

/// The unit system constants as a value, for code that wants to carry them.
struct UnitSystem {
  double hbar = constants::kHbar;
  double k_b = constants::kBoltzmann;
  double coulomb_k = constants::kCoulomb;
  static constexpr const char* kLengthUnit = "nm";
  static constexpr const char* kEnergyUnit = "ueV";
  static constexpr const char* kTimeUnit = "ns";
};

/// Hydrogenic Bohr radius rescaled by eps_r / m_star, in nm.
double effective_bohr_radius(const MaterialParams& mat);

/// Temperature equivalent E / k_B in mK. Negative energies are rejected.
double energy_to_temperature(double energy_ueV);

/// hbar^2 / (2 m*), in ueV nm^2.
double kinetic_prefactor(const MaterialParams& mat);

/// e^2 / (4 pi eps0 eps_r), in ueV nm.
double screened_coulomb(const MaterialParams& mat);

namespace units {
inline constexpr double kNmPerMetre = 1e9;
inline constexpr double kUevPerJoule = 1e6 / constants::kElementaryCharge;

constexpr double nm_to_m(double nm) { return nm / kNmPerMetre; }
constexpr double m_to_nm(double m) { return m * kNmPerMetre; }
constexpr double uev_to_joule(double uev) { return uev / kUevPerJoule; }
constexpr double joule_to_uev(double j) { return j * kUevPerJoule; }
}  // namespace units

}  // namespace qdca
