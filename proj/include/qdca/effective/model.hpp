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

/// Reduced four-level model of one dot and the single-qubit toolbox built on it.
///
/// Configuration basis order: {S_vert, S_horz, T_vert, T_horz}. "Vertical"
/// electrons occupy quadrants a and c, "horizontal" ones b and d. The qubit is
/// |0> = S_vert, |1> = T_vert.
///
/// Sign convention: the singlet coupling is -delta0, so at V = 0 the ground
/// state is (S_vert + S_horz)/sqrt(2) and the mixing angle obeys
/// tan(theta) = (R - x)/delta0 with x = V (1 - 2 p_s), R = sqrt(x^2 + delta0^2).

#include <array>
#include <complex>
#include <cstdint>
#include <random>

#include <Eigen/Dense>

#include "qdca/effective_params.hpp"

namespace qdca::effective {

using cplx = std::complex<double>;

enum ConfigIndex : int { kSVert = 0, kSHorz = 1, kTVert = 2, kTHorz = 3 };

struct ConfigState {
  std::array<cplx, 4> amp{};

  static ConfigState basis(ConfigIndex k);
  double norm() const;
  double probability(ConfigIndex k) const { return std::norm(amp[static_cast<std::size_t>(k)]); }
};

struct QubitState {
  std::array<cplx, 2> amp{};

  static QubitState zero() { return {{cplx(1.0), cplx(0.0)}}; }
  static QubitState one() { return {{cplx(0.0), cplx(1.0)}}; }
  double norm() const;
};

struct SingleQubitKnobs {
  double j_ueV = 0.0;       // exchange splitting
  double dbz_mT = 0.0;      // field difference between corners a and c
  double g_factor = -0.44;
};

/// 2x2 singlet Hamiltonian over {S_vert, S_horz}.
Eigen::Matrix2d singlet_hamiltonian(const EffectiveParams& eff, double v);

/// Full 4x4 configuration Hamiltonian; the triplets are uncoupled.
Eigen::Matrix4d config_hamiltonian(const EffectiveParams& eff, double v);

struct SingletLevels {
  double e_s1 = 0.0;
  double e_s2 = 0.0;
};
SingletLevels singlet_spectrum(const EffectiveParams& eff, double v);

/// Angle with S1 = cos(theta) S_vert + sin(theta) S_horz.
double mixing_angle(const EffectiveParams& eff, double v);

struct TripletLevels {
  double e_vert = 0.0;
  double e_horz = 0.0;
};
TripletLevels triplet_energies(const EffectiveParams& eff, double v);

/// Singlet oscillation frequency sqrt(delta0^2 + x^2)/hbar in rad/ns.
double singlet_frequency(const EffectiveParams& eff, double v);

/// Closed-form propagation of an arbitrary configuration state for time t (ns).
ConfigState evolve_config(const EffectiveParams& eff, double v, double t, const ConfigState& in);

/// Evolution of S_vert. Carries the global phase exp(-i (E0S + V) t / hbar).
ConfigState singlet_evolution(const EffectiveParams& eff, double v, double t);

/// Probability of finding S_horz after time t; triplet components never contribute.
double filter_probability(const EffectiveParams& eff, double v, double t,
                          const ConfigState& in = ConfigState::basis(kSVert));

/// Rabi conversion time pi hbar / (2 delta0).
double conversion_time(const EffectiveParams& eff);

/// E_T_vert - E_S1.
double exchange_J(const EffectiveParams& eff, double v);

/// Leading large-V behaviour of exchange_J.
double exchange_J_asymptote(const EffectiveParams& eff, double v);

/// Phase exp(-i J t / hbar) on |1> relative to |0>.
QubitState rotate_z(const QubitState& s, double j_ueV, double t);

/// exp(-i Omega t sigma_x / 2) with Omega = g mu_B dBz / hbar.
QubitState rotate_x(const QubitState& s, const SingleQubitKnobs& knobs, double t);

/// Larmor-difference frequency g mu_B dBz / hbar in rad/ns.
double rotation_frequency(const SingleQubitKnobs& knobs);

QubitState initialize_plus();

enum class FilterOutcome { kSinglet, kTriplet };

struct FilterMeasurement {
  FilterOutcome outcome = FilterOutcome::kSinglet;
  QubitState post_state;
};

/// Seeded projective singlet/triplet readout. The detector reports the wrong
/// outcome with probability `flip_probability`; the state still collapses to
/// the true one.
class FilterReadout {
 public:
  explicit FilterReadout(std::uint64_t seed, double flip_probability = 0.0);
  FilterMeasurement measure(const QubitState& s);

 private:
  std::mt19937_64 rng_;
  double flip_;
};

FilterMeasurement measure_filter(const QubitState& s, std::uint64_t seed, double flip_probability = 0.0);

/// Error of a non-adiabatic gate switch of duration tau: sin^2(delta0 tau / (2 hbar)).
double switching_error(const EffectiveParams& eff, double tau);

}  // namespace qdca::effective
