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

#include "qdca/effective/model.hpp"

#include <cmath>
#include <stdexcept>

#include "qdca/units.hpp"

namespace qdca {

void EffectiveParams::validate() const {
  if (!(delta0 > 0.0) || !std::isfinite(delta0)) throw std::invalid_argument("Delta0 must be positive");
  if (!(p_s >= 0.0 && p_s <= 0.5)) throw std::invalid_argument("p_S must lie in [0, 1/2]");
  if (!(p_t >= 0.0 && p_t <= 0.5)) throw std::invalid_argument("p_T must lie in [0, 1/2]");
  if (!std::isfinite(e0s) || !std::isfinite(e0t) || !std::isfinite(a_s)) {
    throw std::invalid_argument("effective parameters must be finite");
  }
}

}  // namespace qdca

namespace qdca::effective {

using constants::kHbar;

namespace {

double detuning(const EffectiveParams& eff, double v) { return v * (1.0 - 2.0 * eff.p_s); }

double coupling(const EffectiveParams& eff, double v) { return eff.delta0 + 2.0 * v * eff.a_s; }

}  // namespace

ConfigState ConfigState::basis(ConfigIndex k) {
  ConfigState s;
  s.amp[static_cast<std::size_t>(k)] = 1.0;
  return s;
}

double ConfigState::norm() const {
  double n = 0.0;
  for (const cplx& a : amp) n += std::norm(a);
  return std::sqrt(n);
}

double QubitState::norm() const { return std::sqrt(std::norm(amp[0]) + std::norm(amp[1])); }

Eigen::Matrix2d singlet_hamiltonian(const EffectiveParams& eff, double v) {
  Eigen::Matrix2d h;
  const double d = coupling(eff, v);
  h << eff.e0s + 2.0 * v * eff.p_s, -d, -d, eff.e0s + 2.0 * v * (1.0 - eff.p_s);
  return h;
}

Eigen::Matrix4d config_hamiltonian(const EffectiveParams& eff, double v) {
  Eigen::Matrix4d h = Eigen::Matrix4d::Zero();
  h.topLeftCorner<2, 2>() = singlet_hamiltonian(eff, v);
  const TripletLevels t = triplet_energies(eff, v);
  h(2, 2) = t.e_vert;
  h(3, 3) = t.e_horz;
  return h;
}

SingletLevels singlet_spectrum(const EffectiveParams& eff, double v) {
  const double r = std::hypot(detuning(eff, v), coupling(eff, v));
  return {eff.e0s + v - r, eff.e0s + v + r};
}

double mixing_angle(const EffectiveParams& eff, double v) {
  const double x = detuning(eff, v);
  const double d = coupling(eff, v);
  return std::atan2(std::hypot(x, d) - x, d);
}

TripletLevels triplet_energies(const EffectiveParams& eff, double v) {
  return {eff.e0t + 2.0 * v * eff.p_t, eff.e0t + 2.0 * v * (1.0 - eff.p_t)};
}

double singlet_frequency(const EffectiveParams& eff, double v) {
  return std::hypot(detuning(eff, v), coupling(eff, v)) / kHbar;
}

ConfigState evolve_config(const EffectiveParams& eff, double v, double t, const ConfigState& in) {
  const double x = detuning(eff, v);
  const double d = coupling(eff, v);
  const double r = std::hypot(x, d);
  const double wt = r * t / kHbar;
  const cplx global = std::polar(1.0, -(eff.e0s + v) * t / kHbar);
  const double c = std::cos(wt);
  const double s = std::sin(wt);
  const double c2 = r > 0.0 ? x / r : 0.0;
  const double s2 = r > 0.0 ? d / r : 0.0;
  const cplx i(0.0, 1.0);
  // exp(-i H' t) with H' = -R (c2 sz + s2 sx)
  const cplx u00 = c + i * c2 * s;
  const cplx u11 = c - i * c2 * s;
  const cplx u01 = i * s2 * s;
  ConfigState out;
  out.amp[0] = global * (u00 * in.amp[0] + u01 * in.amp[1]);
  out.amp[1] = global * (u01 * in.amp[0] + u11 * in.amp[1]);
  const TripletLevels tl = triplet_energies(eff, v);
  out.amp[2] = std::polar(1.0, -tl.e_vert * t / kHbar) * in.amp[2];
  out.amp[3] = std::polar(1.0, -tl.e_horz * t / kHbar) * in.amp[3];
  return out;
}

ConfigState singlet_evolution(const EffectiveParams& eff, double v, double t) {
  if (t < 0.0) throw std::invalid_argument("singlet_evolution: t must be non-negative");
  return evolve_config(eff, v, t, ConfigState::basis(kSVert));
}

double filter_probability(const EffectiveParams& eff, double v, double t, const ConfigState& in) {
  if (t < 0.0) throw std::invalid_argument("filter_probability: t must be non-negative");
  return evolve_config(eff, v, t, in).probability(kSHorz);
}

double conversion_time(const EffectiveParams& eff) { return constants::kPi * kHbar / (2.0 * eff.delta0); }

double exchange_J(const EffectiveParams& eff, double v) {
  return triplet_energies(eff, v).e_vert - singlet_spectrum(eff, v).e_s1;
}

double exchange_J_asymptote(const EffectiveParams& eff, double v) {
  const double x = detuning(eff, v);
  return (eff.e0t - eff.e0s) + 2.0 * v * (eff.p_t - eff.p_s) + eff.delta0 * eff.delta0 / (2.0 * x);
}

QubitState rotate_z(const QubitState& s, double j_ueV, double t) {
  return {{s.amp[0], std::polar(1.0, -j_ueV * t / kHbar) * s.amp[1]}};
}

double rotation_frequency(const SingleQubitKnobs& knobs) {
  return knobs.g_factor * constants::kBohrMagneton * knobs.dbz_mT / kHbar;
}

QubitState rotate_x(const QubitState& s, const SingleQubitKnobs& knobs, double t) {
  const double half = 0.5 * rotation_frequency(knobs) * t;
  const cplx c(std::cos(half), 0.0);
  const cplx ms(0.0, -std::sin(half));
  return {{c * s.amp[0] + ms * s.amp[1], ms * s.amp[0] + c * s.amp[1]}};
}

QubitState initialize_plus() {
  const double r = 1.0 / std::sqrt(2.0);
  return {{cplx(r), cplx(r)}};
}

FilterReadout::FilterReadout(std::uint64_t seed, double flip_probability) : rng_(seed), flip_(flip_probability) {
  if (!(flip_probability >= 0.0 && flip_probability <= 1.0)) {
    throw std::invalid_argument("flip probability must lie in [0, 1]");
  }
}

FilterMeasurement FilterReadout::measure(const QubitState& s) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const double n2 = std::norm(s.amp[0]) + std::norm(s.amp[1]);
  if (!(n2 > 0.0)) throw std::invalid_argument("measure_filter: zero state");
  const bool singlet = u(rng_) < std::norm(s.amp[0]) / n2;
  FilterMeasurement m;
  if (singlet) {
    m.post_state = {{s.amp[0] / std::abs(s.amp[0]), cplx(0.0)}};
  } else {
    m.post_state = {{cplx(0.0), s.amp[1] / std::abs(s.amp[1])}};
  }
  bool report = singlet;
  if (flip_ > 0.0 && u(rng_) < flip_) report = !report;
  m.outcome = report ? FilterOutcome::kSinglet : FilterOutcome::kTriplet;
  return m;
}

FilterMeasurement measure_filter(const QubitState& s, std::uint64_t seed, double flip_probability) {
  return FilterReadout(seed, flip_probability).measure(s);
}

double switching_error(const EffectiveParams& eff, double tau) {
  if (tau < 0.0) throw std::invalid_argument("switching_error: tau must be non-negative");
  const double s = std::sin(eff.delta0 * tau / (2.0 * kHbar));
  return s * s;
}

}  // namespace qdca::effective
