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


#include <cmath>
#include <complex>
#include <limits>
#include <numbers>
#include <random>
#include <stdexcept>

#include "doctest.h"
#include "qdca/effective/model.hpp"
#include "qdca/units.hpp"

using namespace qdca;
using namespace qdca::effective;

namespace {
constexpr double kPi = std::numbers::pi;
const double kHbar = constants::kHbar;

EffectiveParams reference() {
  EffectiveParams e;
  e.e0s = 890.0;
  e.e0t = 885.0;
  e.delta0 = 20.0;
  e.p_s = 0.109;
  e.p_t = 0.142;
  return e;
}

// exp(-i H t / hbar) applied to `in`, by eigendecomposition of the 4x4 matrix.
ConfigState propagate_by_matrix(const EffectiveParams& e, double v, double t, const ConfigState& in) {
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix4d> es(config_hamiltonian(e, v));
  Eigen::Vector4cd psi;
  for (int i = 0; i < 4; ++i) psi(i) = in.amp[static_cast<std::size_t>(i)];
  Eigen::Vector4cd phase;
  for (int i = 0; i < 4; ++i) phase(i) = std::polar(1.0, -es.eigenvalues()(i) * t / kHbar);
  const Eigen::Matrix4cd u = es.eigenvectors().cast<cplx>();
  const Eigen::Vector4cd out = u * phase.asDiagonal() * (u.adjoint() * psi);
  ConfigState s;
  for (int i = 0; i < 4; ++i) s.amp[static_cast<std::size_t>(i)] = out(i);
  return s;
}

// Rounding floor for comparing two propagations: a phase E t / hbar can only be
// represented to about eps times its size.
double phase_tol(const EffectiveParams& e, double v, double t) {
  const double emax = config_hamiltonian(e, v).cwiseAbs().rowwise().sum().maxCoeff();
  return 1e-12 + 8.0 * std::numeric_limits<double>::epsilon() * emax * t / kHbar;
}

double distance(const ConfigState& a, const ConfigState& b) {
  double d = 0.0;
  for (int i = 0; i < 4; ++i) d += std::norm(a.amp[static_cast<std::size_t>(i)] - b.amp[static_cast<std::size_t>(i)]);
  return std::sqrt(d);
}

double distance(const QubitState& a, const QubitState& b) {
  return std::sqrt(std::norm(a.amp[0] - b.amp[0]) + std::norm(a.amp[1] - b.amp[1]));
}

// |<a|b>|, insensitive to global phase.
double fidelity(const QubitState& a, const QubitState& b) {
  return std::abs(std::conj(a.amp[0]) * b.amp[0] + std::conj(a.amp[1]) * b.amp[1]);
}

ConfigState random_config(std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  ConfigState s;
  for (auto& a : s.amp) a = cplx(g(rng), g(rng));
  const double n = s.norm();
  for (auto& a : s.amp) a /= n;
  return s;
}
}  // namespace

TEST_SUITE("effective") {
TEST_CASE("singlet Hamiltonian and closed-form spectrum") {
  const EffectiveParams e = reference();
  const Eigen::Matrix2d h0 = singlet_hamiltonian(e, 0.0);
  CHECK(h0(0, 0) == e.e0s);
  CHECK(std::abs(h0(0, 1)) == e.delta0);
  const SingletLevels l0 = singlet_spectrum(e, 0.0);
  CHECK(l0.e_s1 == doctest::Approx(e.e0s - e.delta0).epsilon(1e-15));
  CHECK(l0.e_s2 == doctest::Approx(e.e0s + e.delta0).epsilon(1e-15));
  for (double v : {-40.0, 7.0, 60.0}) {
    const Eigen::Matrix2d h = singlet_hamiltonian(e, v);
    CHECK(std::abs(h(0, 1)) == e.delta0);
    CHECK(h(0, 0) == doctest::Approx(e.e0s + 2.0 * v * e.p_s));
    CHECK(h(1, 1) == doctest::Approx(e.e0s + 2.0 * v * (1.0 - e.p_s)));
  }
  // Brute-force 2x2 diagonalisation at V = 3 Delta0.
  const double v = 3.0 * e.delta0;
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix2d> es(singlet_hamiltonian(e, v));
  const SingletLevels l = singlet_spectrum(e, v);
  CHECK(std::abs(l.e_s1 - es.eigenvalues()(0)) <= 1e-12 * std::abs(l.e_s1));
  CHECK(std::abs(l.e_s2 - es.eigenvalues()(1)) <= 1e-12 * std::abs(l.e_s2));
  // Gap at V (1 - 2 p_S) = Delta0.
  const SingletLevels g = singlet_spectrum(e, e.delta0 / (1.0 - 2.0 * e.p_s));
  CHECK(g.e_s2 - g.e_s1 == doctest::Approx(2.0 * std::sqrt(2.0) * e.delta0).epsilon(1e-13));
  // Large V: E_S1 approaches the vertical diagonal element.
  const double big = 1e4 * e.delta0;
  CHECK(singlet_spectrum(e, big).e_s1 - (e.e0s + 2.0 * big * e.p_s) ==
        doctest::Approx(-e.delta0 * e.delta0 / (2.0 * big * (1.0 - 2.0 * e.p_s))).epsilon(1e-4));
}

TEST_CASE("mixing angle") {
  const EffectiveParams e = reference();
  CHECK(std::abs(mixing_angle(e, 0.0)) == doctest::Approx(kPi / 4.0).epsilon(1e-15));
  CHECK(std::abs(mixing_angle(e, e.delta0 / (1.0 - 2.0 * e.p_s))) == doctest::Approx(kPi / 8.0).epsilon(1e-14));
  CHECK(std::abs(std::tan(mixing_angle(e, e.delta0 / (1.0 - 2.0 * e.p_s)))) ==
        doctest::Approx(std::sqrt(2.0) - 1.0).epsilon(1e-14));
  CHECK(std::abs(mixing_angle(e, 1e6)) < 1e-4);
  // Ground state at V = 0 is (S_vert + S_horz)/sqrt(2).
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix2d> es(singlet_hamiltonian(e, 0.0));
  CHECK(es.eigenvectors()(0, 0) * es.eigenvectors()(1, 0) > 0.0);
}

TEST_CASE("eigenvectors diagonalise the singlet Hamiltonian for random draws") {
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> uv(-200.0, 200.0), ud(0.5, 50.0), up(0.0, 0.5);
  for (int n = 0; n < 1000; ++n) {
    EffectiveParams e;
    e.delta0 = ud(rng);
    e.p_s = up(rng);
    e.e0s = uv(rng);
    const double v = uv(rng);
    const double th = mixing_angle(e, v);
    const Eigen::Vector2d s1(std::cos(th), std::sin(th));
    const Eigen::Vector2d s2(-std::sin(th), std::cos(th));
    const SingletLevels l = singlet_spectrum(e, v);
    const Eigen::Matrix2d h = singlet_hamiltonian(e, v);
    const double scale = h.cwiseAbs().maxCoeff();
    CHECK((h * s1 - l.e_s1 * s1).norm() <= 1e-12 * scale);
    CHECK((h * s2 - l.e_s2 * s2).norm() <= 1e-12 * scale);
  }
}

TEST_CASE("triplet energies") {
  const EffectiveParams e = reference();
  CHECK(triplet_energies(e, 0.0).e_vert == e.e0t);
  CHECK(triplet_energies(e, 0.0).e_horz == e.e0t);
  CHECK(triplet_energies(e, 4.0).e_vert < triplet_energies(e, 4.0).e_horz);
  const TripletLevels t = triplet_energies(e, 5.0);
  CHECK(t.e_horz - t.e_vert == doctest::Approx(7.16).epsilon(1e-12));
  const Eigen::Matrix4d h = config_hamiltonian(e, 5.0);
  CHECK(h(2, 2) == t.e_vert);
  CHECK(h(3, 3) == t.e_horz);
  for (int i = 0; i < 2; ++i)
    for (int j = 2; j < 4; ++j) CHECK(h(i, j) == 0.0);
  CHECK(h(2, 3) == 0.0);
}

TEST_CASE("singlet evolution") {
  const EffectiveParams e = reference();
  const double tr = conversion_time(e);
  CHECK(tr == doctest::Approx(kPi * kHbar / (2.0 * e.delta0)).epsilon(1e-15));
  const ConfigState s0 = singlet_evolution(e, 0.0, 0.0);
  CHECK(distance(s0, ConfigState::basis(kSVert)) <= 1e-15);
  const ConfigState st = singlet_evolution(e, 0.0, tr);
  CHECK(st.probability(kSHorz) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(filter_probability(e, 0.0, tr) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(filter_probability(e, 0.0, 0.5 * tr) == doctest::Approx(0.5).epsilon(1e-14));
  CHECK(filter_probability(e, 0.0, 0.37, ConfigState::basis(kTVert)) == 0.0);
  CHECK(filter_probability(e, 0.0, 0.37, ConfigState::basis(kTHorz)) == 0.0);
  CHECK_THROWS_AS(singlet_evolution(e, 0.0, -1.0), std::invalid_argument);

  // V = 3 Delta0: the best conversion is sin^2(2 theta), found by scanning t.
  const double v = 3.0 * e.delta0;
  const double bound = std::pow(std::sin(2.0 * mixing_angle(e, v)), 2);
  CHECK(bound < 1.0);
  double best = 0.0;
  const double period = kPi / singlet_frequency(e, v);
  for (int i = 0; i <= 20000; ++i) best = std::max(best, filter_probability(e, v, period * i / 20000.0));
  CHECK(best == doctest::Approx(bound).epsilon(1e-7));
  for (int i = 0; i <= 50; ++i) {
    const double t = 0.1 * i;
    CHECK(distance(singlet_evolution(e, v, t), propagate_by_matrix(e, v, t, ConfigState::basis(kSVert))) <=
          phase_tol(e, v, t));
  }
}

TEST_CASE("evolution is unitary, matches the matrix exponential and forms a group") {
  std::mt19937_64 rng(23);
  std::uniform_real_distribution<double> uv(-3.0, 3.0), ut(0.0, 5.0);
  const EffectiveParams e = reference();
  for (int n = 0; n < 200; ++n) {
    const ConfigState in = random_config(rng);
    const double v = uv(rng) * e.delta0, t1 = ut(rng), t2 = ut(rng);
    const ConfigState a = evolve_config(e, v, t1, in);
    CHECK(std::abs(a.norm() - 1.0) <= 1e-12);
    CHECK(distance(a, propagate_by_matrix(e, v, t1, in)) <= phase_tol(e, v, t1));
    CHECK(distance(evolve_config(e, v, t2, a), evolve_config(e, v, t1 + t2, in)) <= phase_tol(e, v, t1 + t2));
    // Triplet amplitudes only pick up phases.
    CHECK(std::abs(a.probability(kTVert) - in.probability(kTVert)) <= 1e-14);
    CHECK(std::abs(a.probability(kTHorz) - in.probability(kTHorz)) <= 1e-14);
  }
}

TEST_CASE("filter probability is periodic and bounded") {
  std::mt19937_64 rng(29);
  std::uniform_real_distribution<double> uv(-4.0, 4.0), ut(0.0, 10.0);
  const EffectiveParams e = reference();
  for (int n = 0; n < 500; ++n) {
    const double v = uv(rng) * e.delta0, t = ut(rng);
    const double period = kPi / singlet_frequency(e, v);
    const double p = filter_probability(e, v, t);
    CHECK(p <= std::pow(std::sin(2.0 * mixing_angle(e, v)), 2) + 1e-14);
    CHECK(filter_probability(e, v, t + period) == doctest::Approx(p).epsilon(1e-9).scale(1.0));
  }
}

TEST_CASE("exchange splitting") {
  const EffectiveParams e = reference();
  CHECK(exchange_J(e, 0.0) == doctest::Approx(e.e0t - e.e0s + e.delta0).epsilon(1e-15));
  // The asymptote captures the leading terms: the error falls faster than 1/V.
  double prev = 1e300;
  for (double x : {5.0, 10.0, 20.0, 40.0, 80.0}) {
    const double v = x * e.delta0;
    const double err = std::abs(exchange_J(e, v) - exchange_J_asymptote(e, v));
    CHECK(err < prev / 4.0 + 1e-12);
    prev = err;
  }
  CHECK(exchange_J_asymptote(e, 100.0) ==
        doctest::Approx(e.e0t - e.e0s + 2.0 * 100.0 * (e.p_t - e.p_s) +
                        e.delta0 * e.delta0 / (2.0 * 100.0 * (1.0 - 2.0 * e.p_s))));
}

TEST_CASE("z rotation") {
  const QubitState plus = initialize_plus();
  CHECK(plus.norm() == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(plus.amp[0].real() == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-15));
  CHECK(distance(rotate_z(plus, 2.0, 0.0), plus) == 0.0);
  const QubitState minus{{cplx(1.0 / std::sqrt(2.0)), cplx(-1.0 / std::sqrt(2.0))}};
  CHECK(fidelity(rotate_z(plus, 2.0, kPi * kHbar / 2.0), minus) == doctest::Approx(1.0).epsilon(1e-14));
  // J = 2 ueV, t = 0.517 ns is a quarter turn; the phase convention exp(-i J t / hbar) gives -i.
  const QubitState q = rotate_z(plus, 2.0, 0.517);
  CHECK(2.0 * 0.517 / kHbar == doctest::Approx(kPi / 2.0).epsilon(1e-3));
  const QubitState expect{{cplx(1.0 / std::sqrt(2.0)), cplx(0.0, -1.0 / std::sqrt(2.0))}};
  CHECK(distance(q, expect) < 1e-3);
  std::mt19937_64 rng(31);
  std::uniform_real_distribution<double> u(0.0, 3.0);
  for (int n = 0; n < 200; ++n) {
    const double j = u(rng), t1 = u(rng), t2 = u(rng);
    const QubitState a = rotate_z(rotate_z(plus, j, t1), j, t2);
    CHECK(distance(a, rotate_z(plus, j, t1 + t2)) <= 1e-12);
    CHECK(std::abs(a.norm() - 1.0) <= 1e-12);
  }
}

TEST_CASE("x rotation") {
  const SingleQubitKnobs k{0.0, 1.0, -0.44};
  const double omega = rotation_frequency(k);
  CHECK(std::abs(omega) == doctest::Approx(0.44 * 57.883818060e-3 / kHbar).epsilon(1e-12));
  const double period = 2.0 * kPi / std::abs(omega);
  CHECK(period == doctest::Approx(163.0).epsilon(0.01));
  CHECK(distance(rotate_x(QubitState::zero(), k, 0.0), QubitState::zero()) == 0.0);
  const QubitState flipped = rotate_x(QubitState::zero(), k, kPi / std::abs(omega));
  CHECK(fidelity(flipped, QubitState::one()) == doctest::Approx(1.0).epsilon(1e-14));
  std::mt19937_64 rng(37);
  std::uniform_real_distribution<double> u(0.0, 200.0);
  const QubitState plus = initialize_plus();
  for (int n = 0; n < 200; ++n) {
    const double t1 = u(rng), t2 = u(rng);
    const QubitState a = rotate_x(rotate_x(plus, k, t1), k, t2);
    CHECK(distance(a, rotate_x(plus, k, t1 + t2)) <= 1e-12);
    CHECK(std::abs(a.norm() - 1.0) <= 1e-12);
    const QubitState b = rotate_x(QubitState::zero(), k, t1);
    CHECK(std::abs(b.norm() - 1.0) <= 1e-12);
  }
}

TEST_CASE("singlet-triplet readout") {
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    const FilterMeasurement m0 = measure_filter(QubitState::zero(), seed);
    CHECK(m0.outcome == FilterOutcome::kSinglet);
    CHECK(distance(m0.post_state, QubitState::zero()) < 1e-15);
    CHECK(measure_filter(QubitState::one(), seed).outcome == FilterOutcome::kTriplet);
  }
  FilterReadout r(20140613);
  const int shots = 100000;
  int singlets = 0;
  for (int i = 0; i < shots; ++i) singlets += r.measure(initialize_plus()).outcome == FilterOutcome::kSinglet;
  const double frac = static_cast<double>(singlets) / shots;
  CHECK(std::abs(frac - 0.5) <= 0.005);
  // Reproducible from the seed.
  FilterReadout a(99), b(99);
  for (int i = 0; i < 1000; ++i) CHECK(a.measure(initialize_plus()).outcome == b.measure(initialize_plus()).outcome);
  // A detector that always lies reports the opposite outcome but collapses correctly.
  const FilterMeasurement liar = measure_filter(QubitState::zero(), 1, 1.0);
  CHECK(liar.outcome == FilterOutcome::kTriplet);
  CHECK(fidelity(liar.post_state, QubitState::zero()) == doctest::Approx(1.0));
  CHECK_THROWS_AS(FilterReadout(1, 1.5), std::invalid_argument);
}

TEST_CASE("switching error") {
  EffectiveParams e;
  e.delta0 = 20.0;
  CHECK(switching_error(e, 0.0) == 0.0);
  const double err = switching_error(e, 0.010);
  MESSAGE("switching error at tau = 10 ps: ", err);
  CHECK(std::abs(err - 0.023) <= 0.001);
  for (double tau : {1e-4, 1e-5}) {
    const double q = e.delta0 * e.delta0 * tau * tau / (4.0 * kHbar * kHbar);
    CHECK(switching_error(e, tau) == doctest::Approx(q).epsilon(1e-6));
  }
  CHECK_THROWS_AS(switching_error(e, -1.0), std::invalid_argument);
}

TEST_CASE("parameter validation") {
  EffectiveParams e = reference();
  CHECK_NOTHROW(e.validate());
  e.delta0 = 0.0;
  CHECK_THROWS_AS(e.validate(), std::invalid_argument);
  e = reference();
  e.p_s = 0.6;
  CHECK_THROWS_AS(e.validate(), std::invalid_argument);
  e = reference();
  e.e0t = std::nan("");
  CHECK_THROWS_AS(e.validate(), std::invalid_argument);
}
}
