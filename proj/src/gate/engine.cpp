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

#include "qdca/gate/engine.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace qdca::gate {

using constants::kHbar;
using constants::kPi;

namespace {

void check_geometry(double length_nm, double d_nm) {
  if (!(length_nm > 0.0)) throw std::invalid_argument("dot size L must be positive");
  if (!(d_nm > length_nm)) throw std::invalid_argument("dot spacing d must exceed the dot size L");
}

bool is_horizontal(int k) { return k == effective::kSHorz || k == effective::kTHorz; }

Matrix16d kron_sum(const Eigen::Matrix4d& h) {
  Matrix16d out = Matrix16d::Zero();
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < 4; ++j) {
      for (int k = 0; k < 4; ++k) {
        out(two_dot_index(i, k), two_dot_index(j, k)) += h(i, j);
        out(two_dot_index(k, i), two_dot_index(k, j)) += h(i, j);
      }
    }
  }
  return out;
}

Matrix16c propagator(const Eigen::SelfAdjointEigenSolver<Matrix16d>& es, double t) {
  Eigen::Matrix<cplx, 16, 1> phase;
  for (int i = 0; i < 16; ++i) phase(i) = std::polar(1.0, -es.eigenvalues()(i) * t / kHbar);
  const Matrix16c v = es.eigenvectors().cast<cplx>();
  return v * phase.asDiagonal() * v.adjoint();
}

double wrap(double phi) {
  double w = std::remainder(phi, 2.0 * kPi);
  if (w <= -kPi) w += 2.0 * kPi;
  return w;
}

}  // namespace

CouplingParams coupling_energies(double length_nm, double d_nm, const MaterialParams& mat) {
  check_geometry(length_nm, d_nm);
  const double k = screened_coulomb(mat);
  const double r2 = (length_nm / d_nm) * (length_nm / d_nm);
  return {3.0 * k * r2 / d_nm, k * r2 / d_nm, d_nm, length_nm};
}

PointChargeEnergies point_charge_oracle(double length_nm, double d_nm, const MaterialParams& mat) {
  check_geometry(length_nm, d_nm);
  const double k = screened_coulomb(mat);
  const double r = length_nm / std::numbers::sqrt2;
  using P = std::array<double, 2>;
  const std::array<P, 2> horiz = {P{r, 0.0}, P{-r, 0.0}};
  const std::array<P, 2> vert = {P{0.0, r}, P{0.0, -r}};
  auto energy = [&](const std::array<P, 2>& left, const std::array<P, 2>& right) {
    double e = 0.0;
    for (const P& a : left) {
      for (const P& b : right) e += k / std::hypot(d_nm + b[0] - a[0], b[1] - a[1]);
    }
    return e;
  };
  PointChargeEnergies out;
  out.e_hh = energy(horiz, horiz);
  out.e_vv = energy(vert, vert);
  out.e_hv = energy(horiz, vert);
  out.e_vh = energy(vert, horiz);
  out.coupling = {out.e_hh - out.e_hv, out.e_vv - out.e_hv, d_nm, length_nm};
  return out;
}

Eigen::Matrix<double, 16, 1> interaction_diagonal(const CouplingParams& c) {
  Eigen::Matrix<double, 16, 1> d;
  for (int l = 0; l < 4; ++l) {
    for (int r = 0; r < 4; ++r) {
      double e = 0.0;
      if (is_horizontal(l) && is_horizontal(r)) e = c.u0;
      if (!is_horizontal(l) && !is_horizontal(r)) e = c.u1;
      d(two_dot_index(l, r)) = e;
    }
  }
  return d;
}

Matrix16d interaction_hamiltonian(const CouplingParams& c) { return interaction_diagonal(c).asDiagonal(); }

Matrix16d total_hamiltonian(const EffectiveParams& eff, const CouplingParams& c, double v) {
  return kron_sum(effective::config_hamiltonian(eff, v)) + interaction_hamiltonian(c);
}

double entangling_time(const CouplingParams& c) {
  const double s = c.u0 + c.u1;
  if (!(s > 0.0)) throw std::invalid_argument("entangling_time: u0 + u1 must be positive");
  return kPi * kHbar / s;
}

Matrix16c gate_unitary(const EffectiveParams& eff, const CouplingParams& c, double t_i) {
  const double t_r = effective::conversion_time(eff);
  Eigen::Matrix4cd u1;
  for (int j = 0; j < 4; ++j) {
    const effective::ConfigState out =
        effective::evolve_config(eff, 0.0, t_r, effective::ConfigState::basis(static_cast<effective::ConfigIndex>(j)));
    for (int i = 0; i < 4; ++i) u1(i, j) = out.amp[static_cast<std::size_t>(i)];
  }
  Matrix16c rot;
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < 4; ++j) {
      for (int k = 0; k < 4; ++k) {
        for (int l = 0; l < 4; ++l) rot(two_dot_index(i, k), two_dot_index(j, l)) = u1(i, j) * u1(k, l);
      }
    }
  }
  const Eigen::Matrix<double, 16, 1> hi = interaction_diagonal(c);
  Eigen::Matrix<cplx, 16, 1> phase;
  for (int i = 0; i < 16; ++i) phase(i) = std::polar(1.0, -hi(i) * t_i / kHbar);
  return rot * phase.asDiagonal() * rot;
}

std::array<cplx, 4> phase_table(const Matrix16c& u) {
  std::array<cplx, 4> p{};
  for (std::size_t k = 0; k < 4; ++k) p[k] = u(kQubitIndex[k], kQubitIndex[k]);
  return p;
}

Matrix4c qubit_block(const Matrix16c& u) {
  Matrix4c q;
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < 4; ++j) q(i, j) = u(kQubitIndex[static_cast<std::size_t>(i)], kQubitIndex[static_cast<std::size_t>(j)]);
  }
  return q;
}

CzCorrection cz_correction(const Matrix16c& u, double tol) {
  const std::array<cplx, 4> p = phase_table(u);
  const double p00 = std::arg(p[0]);
  const double p01 = std::arg(p[1]);
  const double p10 = std::arg(p[2]);
  const double p11 = std::arg(p[3]);
  CzCorrection cz;
  cz.global = -p00;
  cz.z_right = p00 - p01;
  cz.z_left = p00 - p10;
  cz.invariant = wrap(p00 + p11 - p01 - p10);
  cz.cz_equivalent = std::abs(std::abs(cz.invariant) - kPi) <= tol;
  const Eigen::Vector4cd d(std::polar(1.0, cz.global), std::polar(1.0, cz.global + cz.z_right),
                           std::polar(1.0, cz.global + cz.z_left),
                           std::polar(1.0, cz.global + cz.z_left + cz.z_right));
  cz.corrected = d.asDiagonal() * qubit_block(u);
  return cz;
}

double concurrence(const std::array<cplx, 4>& q) {
  const double n2 = std::norm(q[0]) + std::norm(q[1]) + std::norm(q[2]) + std::norm(q[3]);
  if (!(n2 > 0.0)) return 0.0;
  return 2.0 * std::abs(q[0] * q[3] - q[1] * q[2]) / n2;
}

ConcurrenceResult concurrence(const Vector16c& state) {
  std::array<cplx, 4> q{};
  double inside = 0.0;
  for (std::size_t k = 0; k < 4; ++k) {
    q[k] = state(kQubitIndex[k]);
    inside += std::norm(q[k]);
  }
  ConcurrenceResult r;
  r.leakage = std::max(0.0, state.squaredNorm() - inside);
  r.leaked = r.leakage > 1e-6;
  r.value = concurrence(q);
  return r;
}

Vector16c plus_plus() {
  Vector16c s = Vector16c::Zero();
  for (int k : kQubitIndex) s(k) = 0.5;
  return s;
}

GateSchedule make_schedule(const EffectiveParams& eff, double t_i, double v_freeze) {
  if (!(t_i > 0.0)) throw std::invalid_argument("interaction time must be positive");
  GateSchedule s;
  s.t_r = effective::conversion_time(eff);
  s.t_i = t_i;
  s.v_freeze = v_freeze;
  s.segments = {{0.0, s.t_r, false}, {v_freeze, t_i, true}, {0.0, s.t_r, false}};
  return s;
}

GateSchedule make_schedule(const EffectiveParams& eff, const CouplingParams& c) {
  return make_schedule(eff, entangling_time(c), -3.0 * eff.delta0);
}

namespace {

Matrix16d segment_hamiltonian(const EffectiveParams& eff, const CouplingParams& c, const GateSegment& seg,
                              FreezeMode mode) {
  Eigen::Matrix4d h = effective::config_hamiltonian(eff, seg.gate_ueV);
  if (seg.interaction && mode == FreezeMode::kConfigurationFrozen) h = h.diagonal().asDiagonal();
  return kron_sum(h) + interaction_hamiltonian(c);
}

}  // namespace

GateTrajectory full_dynamics(const EffectiveParams& eff, const CouplingParams& c, const GateSchedule& schedule,
                             const Vector16c& initial, const DynamicsOptions& opts) {
  if (opts.samples_per_segment < 1) throw std::invalid_argument("full_dynamics: need at least one sample");
  GateTrajectory tr;
  tr.unitary = Matrix16c::Identity();
  Vector16c psi = initial;
  double t0 = 0.0;
  tr.t_ns.push_back(0.0);
  tr.states.push_back(psi);
  for (const GateSegment& seg : schedule.segments) {
    if (seg.duration_ns < 0.0) throw std::invalid_argument("full_dynamics: negative segment duration");
    const Eigen::SelfAdjointEigenSolver<Matrix16d> es(segment_hamiltonian(eff, c, seg, opts.mode));
    for (int k = 1; k <= opts.samples_per_segment; ++k) {
      const double dt = seg.duration_ns * k / opts.samples_per_segment;
      tr.t_ns.push_back(t0 + dt);
      tr.states.push_back(propagator(es, dt) * psi);
    }
    const Matrix16c u = propagator(es, seg.duration_ns);
    psi = u * psi;
    tr.unitary = u * tr.unitary;
    t0 += seg.duration_ns;
  }
  return tr;
}

Matrix16c full_unitary(const EffectiveParams& eff, const CouplingParams& c, const GateSchedule& schedule,
                       FreezeMode mode) {
  Matrix16c total = Matrix16c::Identity();
  for (const GateSegment& seg : schedule.segments) {
    const Eigen::SelfAdjointEigenSolver<Matrix16d> es(segment_hamiltonian(eff, c, seg, mode));
    total = propagator(es, seg.duration_ns) * total;
  }
  return total;
}

double gate_fidelity(const Matrix16c& ideal, const Matrix16c& actual) {
  const Matrix4c m = qubit_block(ideal).adjoint() * qubit_block(actual);
  const cplx m00 = m(0, 0), m01 = m(1, 1), m10 = m(2, 2), m11 = m(3, 3);
  double best = 0.0;
  for (int start = 0; start < 8; ++start) {
    double alpha = 2.0 * kPi * start / 8.0;
    double beta = 0.0;
    double prev = -1.0;
    for (int it = 0; it < 500; ++it) {
      const cplx ea = std::polar(1.0, alpha);
      beta = std::arg(m00 + ea * m10) - std::arg(m01 + ea * m11);
      const cplx eb = std::polar(1.0, beta);
      alpha = std::arg(m00 + eb * m01) - std::arg(m10 + eb * m11);
      const double val = std::abs(m00 + eb * m01 + std::polar(1.0, alpha) * (m10 + eb * m11));
      if (std::abs(val - prev) < 1e-15) break;
      prev = val;
    }
    const cplx ea = std::polar(1.0, alpha);
    const cplx eb = std::polar(1.0, beta);
    best = std::max(best, std::abs(m00 + eb * m01 + ea * (m10 + eb * m11)));
  }
  return best * best / 16.0;
}

PerturbedSpectrum perturbed_eigenvectors(const EffectiveParams& eff, const CouplingParams& c) {
  PerturbedSpectrum ps;
  ps.a = (c.u0 - c.u1) / (8.0 * eff.delta0);
  ps.b = (c.u0 + c.u1) / (16.0 * eff.delta0);
  ps.c = c.u1 / (4.0 * eff.delta0);
  ps.outside_validity = std::abs(c.u0) > 0.3 * eff.delta0 || std::abs(c.u1) > 0.3 * eff.delta0;

  const double r = 1.0 / std::numbers::sqrt2;
  Eigen::Vector4cd s1 = Eigen::Vector4cd::Zero();
  Eigen::Vector4cd s2 = Eigen::Vector4cd::Zero();
  Eigen::Vector4cd tv = Eigen::Vector4cd::Zero();
  s1(effective::kSVert) = r;
  s1(effective::kSHorz) = r;
  s2(effective::kSVert) = r;
  s2(effective::kSHorz) = -r;
  tv(effective::kTVert) = 1.0;
  auto kron = [](const Eigen::Vector4cd& x, const Eigen::Vector4cd& y) {
    Vector16c out;
    for (int i = 0; i < 4; ++i) {
      for (int j = 0; j < 4; ++j) out(two_dot_index(i, j)) = x(i) * y(j);
    }
    return out;
  };
  const Vector16c s11 = kron(s1, s1), s12 = kron(s1, s2), s21 = kron(s2, s1), s22 = kron(s2, s2);
  const double a = ps.a, b = ps.b, cc = ps.c;
  ps.vectors[0] = s11 + a * s12 + a * s21 - b * s22;
  ps.vectors[1] = r * (s12 + s21) - a * std::numbers::sqrt2 * (s11 - s22);
  ps.vectors[2] = r * (s12 - s21);
  ps.vectors[3] = s22 + b * s11 - a * s12 - a * s21;
  ps.vectors[4] = kron(s1, tv) - cc * kron(s2, tv);
  ps.vectors[5] = kron(tv, s1) - cc * kron(tv, s2);
  ps.vectors[6] = kron(s2, tv) + cc * kron(s1, tv);
  ps.vectors[7] = kron(tv, s2) + cc * kron(tv, s1);
  ps.names = {"S1S1", "(S1S2+S2S1)/sqrt2", "(S1S2-S2S1)/sqrt2", "S2S2", "S1T", "TS1", "S2T", "TS2"};
  for (Vector16c& v : ps.vectors) v.normalize();
  return ps;
}

PerturbationCheck check_perturbation(const EffectiveParams& eff, const CouplingParams& c) {
  const PerturbedSpectrum ps = perturbed_eigenvectors(eff, c);
  const Matrix16d h = total_hamiltonian(eff, c, 0.0);
  const Eigen::SelfAdjointEigenSolver<Matrix16d> es(h);
  const Matrix16c hc = h.cast<cplx>();
  const double cluster = 1e-9 * eff.delta0;
  PerturbationCheck out;
  for (std::size_t k = 0; k < 8; ++k) {
    const Vector16c& v = ps.vectors[k];
    const double e = (v.adjoint() * hc * v)(0).real();
    out.residual[k] = (hc * v - e * v).norm();
    // Weight in the exact eigenspace whose level lies closest to <H>.
    int nearest = 0;
    for (int i = 1; i < 16; ++i) {
      if (std::abs(es.eigenvalues()(i) - e) < std::abs(es.eigenvalues()(nearest) - e)) nearest = i;
    }
    double w = 0.0;
    for (int i = 0; i < 16; ++i) {
      if (std::abs(es.eigenvalues()(i) - es.eigenvalues()(nearest)) <= cluster) {
        w += std::norm(es.eigenvectors().col(i).cast<cplx>().dot(v));
      }
    }
    out.overlap[k] = w;
  }
  return out;
}

double residual_scaling_exponent(const EffectiveParams& eff, const std::vector<double>& u_values, double ratio) {
  if (u_values.size() < 2) throw std::invalid_argument("residual_scaling_exponent: need at least two points");
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  const double n = static_cast<double>(u_values.size());
  for (double u : u_values) {
    const PerturbationCheck chk = check_perturbation(eff, {u, ratio * u, 0.0, 0.0});
    const double res = *std::max_element(chk.residual.begin(), chk.residual.end());
    const double x = std::log(u);
    const double y = std::log(res);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

}  // namespace qdca::gate
