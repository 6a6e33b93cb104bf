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

/// Capacitive two-qubit gate between neighbouring dots.
///
/// Two-dot states live in the 16-dimensional product of the configuration
/// spaces {S_vert, S_horz, T_vert, T_horz}; index = 4 * left + right. The qubit
/// subspace is spanned by indices 0 (SS), 2 (ST), 8 (TS) and 10 (TT).

#include <array>
#include <complex>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "qdca/effective/model.hpp"
#include "qdca/effective_params.hpp"
#include "qdca/units.hpp"

namespace qdca::gate {

using cplx = std::complex<double>;
using Matrix16d = Eigen::Matrix<double, 16, 16>;
using Matrix16c = Eigen::Matrix<cplx, 16, 16>;
using Vector16c = Eigen::Matrix<cplx, 16, 1>;
using Matrix4c = Eigen::Matrix<cplx, 4, 4>;

inline constexpr std::array<int, 4> kQubitIndex = {0, 2, 8, 10};

constexpr int two_dot_index(int left, int right) { return 4 * left + right; }

struct CouplingParams {
  double u0 = 0.0;  // both dots horizontal, ueV
  double u1 = 0.0;  // both dots vertical, ueV
  double d_nm = 0.0;
  double length_nm = 0.0;
};

/// Leading-order multipole estimate: u0 = 3 k (L/d)^2 / d, u1 = k (L/d)^2 / d.
CouplingParams coupling_energies(double length_nm, double d_nm, const MaterialParams& mat);

/// Classical point charges at the corners of two dots whose a-c and b-d
/// diagonals are oriented along and across the line joining the centres.
/// Horizontal (b,d) charges lie on the axis. All four configuration energies
/// are summed exactly; the mixed configurations define the zero.
struct PointChargeEnergies {
  CouplingParams coupling;
  double e_hh = 0.0;
  double e_vv = 0.0;
  double e_hv = 0.0;
  double e_vh = 0.0;
};
PointChargeEnergies point_charge_oracle(double length_nm, double d_nm, const MaterialParams& mat);

/// Diagonal of H_I over the 16 two-dot states.
Eigen::Matrix<double, 16, 1> interaction_diagonal(const CouplingParams& c);
Matrix16d interaction_hamiltonian(const CouplingParams& c);

/// H_L(V) + H_R(V) + H_I.
Matrix16d total_hamiltonian(const EffectiveParams& eff, const CouplingParams& c, double v);

/// pi hbar / (u0 + u1), in ns.
double entangling_time(const CouplingParams& c);

/// Idealised composition exp(-i H0 t_R) exp(-i H_I t_I) exp(-i H0 t_R), t_R = pi hbar / (2 delta0).
Matrix16c gate_unitary(const EffectiveParams& eff, const CouplingParams& c, double t_i);

/// Diagonal of a unitary restricted to the qubit subspace: SS, ST, TS, TT.
std::array<cplx, 4> phase_table(const Matrix16c& u);

Matrix4c qubit_block(const Matrix16c& u);

struct CzCorrection {
  double global = 0.0;       // phase multiplying the whole gate
  double z_left = 0.0;       // phase added to |1> of the left qubit
  double z_right = 0.0;      // phase added to |1> of the right qubit
  double invariant = 0.0;    // phi_SS + phi_TT - phi_ST - phi_TS, wrapped to (-pi, pi]
  bool cz_equivalent = false;
  Matrix4c corrected;        // corrected qubit block
};

/// Local z phases and global phase turning the qubit block of u into diag(1,1,1,-1).
/// cz_equivalent is false when the phase invariant misses pi by more than `tol`.
CzCorrection cz_correction(const Matrix16c& u, double tol = 1e-9);

struct ConcurrenceResult {
  double value = 0.0;
  double leakage = 0.0;  // weight outside the qubit subspace
  bool leaked = false;   // leakage above 1e-6
};

/// Two-qubit concurrence 2|ad - bc| of the normalised qubit-subspace projection.
ConcurrenceResult concurrence(const Vector16c& state);
double concurrence(const std::array<cplx, 4>& qubits);

Vector16c plus_plus();

enum class FreezeMode {
  kFullHamiltonian,       // H0(V_freeze) including tunnelling during t_I
  kConfigurationFrozen,   // diagonal of H0(V_freeze) only during t_I
};

struct GateSegment {
  double gate_ueV = 0.0;
  double duration_ns = 0.0;
  bool interaction = false;  // the hold segment
};

struct GateSchedule {
  double t_r = 0.0;
  double t_i = 0.0;
  double v_freeze = 0.0;
  std::vector<GateSegment> segments;
};

/// [(0, t_R), (v_freeze, t_I), (0, t_R)]; v_freeze defaults to -3 delta0.
GateSchedule make_schedule(const EffectiveParams& eff, double t_i, double v_freeze);
GateSchedule make_schedule(const EffectiveParams& eff, const CouplingParams& c);

struct GateTrajectory {
  std::vector<double> t_ns;
  std::vector<Vector16c> states;
  Matrix16c unitary;
};

struct DynamicsOptions {
  FreezeMode mode = FreezeMode::kConfigurationFrozen;
  int samples_per_segment = 50;
};

/// Exact piecewise propagation under H_L + H_R + H_I (interaction kept in
/// every segment), by eigendecomposition of each segment's Hamiltonian.
GateTrajectory full_dynamics(const EffectiveParams& eff, const CouplingParams& c, const GateSchedule& schedule,
                             const Vector16c& initial, const DynamicsOptions& opts = {});

/// Propagator only.
Matrix16c full_unitary(const EffectiveParams& eff, const CouplingParams& c, const GateSchedule& schedule,
                       FreezeMode mode = FreezeMode::kConfigurationFrozen);

/// |Tr(D U_ideal^dag U)|^2 / 16 over the qubit subspace, maximised over local
/// z phases D (which the CZ correction absorbs anyway).
double gate_fidelity(const Matrix16c& ideal, const Matrix16c& actual);

struct PerturbedSpectrum {
  double a = 0.0;
  double b = 0.0;
  double c = 0.0;
  std::array<Vector16c, 8> vectors;    // normalised, order as in `names`
  std::array<std::string, 8> names;
  bool outside_validity = false;       // u0 or u1 above 0.3 delta0
};

/// First-order corrected eigenvectors of H_tot at V = 0. S1 = (S_vert + S_horz)/sqrt(2);
/// the expansion uses S2' = (S_vert - S_horz)/sqrt(2), in which the coefficients a, b, c
/// enter with the signs shown in the names.
PerturbedSpectrum perturbed_eigenvectors(const EffectiveParams& eff, const CouplingParams& c);

struct PerturbationCheck {
  std::array<double, 8> overlap{};   // weight inside the matching exact eigenspace
  std::array<double, 8> residual{};  // ||(H - <H>) v||
};
PerturbationCheck check_perturbation(const EffectiveParams& eff, const CouplingParams& c);

/// Least-squares slope of log(max residual) against log(u) for u0 = u, u1 = ratio * u.
/// At ratio = 1 the leading correction cancels and the slope is 3.
double residual_scaling_exponent(const EffectiveParams& eff, const std::vector<double>& u_values,
                                 double ratio = 1.0 / 3.0);

}  // namespace qdca::gate
