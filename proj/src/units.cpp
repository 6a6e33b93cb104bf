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

#include "qdca/units.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace qdca {

void MaterialParams::validate() const {
  if (!(m_star > 0.0) || !std::isfinite(m_star)) {
    throw std::invalid_argument("material: m_star must be positive, got " + std::to_string(m_star));
  }
  if (!(eps_r >= 1.0) || !std::isfinite(eps_r)) {
    throw std::invalid_argument("material: eps_r must be >= 1, got " + std::to_string(eps_r));
  }
  if (!std::isfinite(g_factor)) {
    throw std::invalid_argument("material: g_factor must be finite");
  }
}

double effective_bohr_radius(const MaterialParams& mat) {
  mat.validate();
  return constants::kBohrRadius * mat.eps_r / mat.m_star;
}

double energy_to_temperature(double energy_ueV) {
  if (energy_ueV < 0.0 || std::isnan(energy_ueV)) {
    throw std::invalid_argument("energy_to_temperature: energy must be non-negative");
  }
  return energy_ueV / constants::kBoltzmann;
}

double kinetic_prefactor(const MaterialParams& mat) {
  mat.validate();
  return constants::kHbar2Over2Me / mat.m_star;
}

double screened_coulomb(const MaterialParams& mat) {
  mat.validate();
  return constants::kCoulomb / mat.eps_r;
}

}  // namespace qdca
