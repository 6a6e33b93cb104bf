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

/// Cluster states on small rectangular arrays of dot qubits.
///
/// Site (r, c) maps to qubit r * cols + c, stored as bit (r * cols + c) of the
/// basis index. Bonds along a row use the row coupling, bonds along a column
/// the column coupling.

#include <array>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "qdca/gate/engine.hpp"

namespace qdca::cluster {

inline constexpr int kMaxQubits = 12;

enum class GateOrder { kRowsFirst, kColumnsFirst };

/// The entangling phases of one bond orientation and the local fix-up.
struct BondGate {
  gate::CouplingParams coupling;
  double t_i = 0.0;
  std::array<double, 4> phases{};  // phi_00, phi_01, phi_10, phi_11
  gate::CzCorrection correction;
};

/// Gate for one orientation, read off the idealised two-dot unitary at t_I = pi hbar / (u0 + u1).
BondGate bond_gate(const gate::CouplingParams& c);

struct QubitArray {
  int rows = 0;
  int cols = 0;
  gate::CouplingParams row_coupling;
  gate::CouplingParams col_coupling;
  Eigen::VectorXcd state;

  int qubits() const { return rows * cols; }
  int site(int r, int c) const { return r * cols + c; }
};

/// All qubits in |+>, no gates applied.
QubitArray plus_array(int rows, int cols, const gate::CouplingParams& row_c, const gate::CouplingParams& col_c);

/// |+> everywhere, then every row bond and every column bond with its local corrections.
QubitArray build_cluster(int rows, int cols, const gate::CouplingParams& row_c, const gate::CouplingParams& col_c,
                         GateOrder order = GateOrder::kRowsFirst);

/// Textbook cluster state: CZ on every nearest-neighbour bond of |+...+>.
Eigen::VectorXcd ideal_cluster_state(int rows, int cols);

/// |<ideal|state>|^2.
double cluster_fidelity(const QubitArray& a);

/// K_a |psi> with K_a = X_a prod_{b ~ a} Z_b.
Eigen::VectorXcd apply_stabilizer(const QubitArray& a, int site, const Eigen::VectorXcd& psi);

struct StabilizerReport {
  std::vector<double> values;  // <K_a> per site

  double max_deviation_from_one() const;
};
StabilizerReport stabilizer_report(const QubitArray& a);

/// Largest ||K_a K_b v - K_b K_a v|| over site pairs for the given vector.
double stabilizer_commutator(const QubitArray& a, const Eigen::VectorXcd& v);

struct AsymmetryReport {
  BondGate row;
  BondGate col;
  bool both_cz_equivalent = false;
  bool identical_gates = false;        // phase signatures agree
  bool identical_corrections = false;
  double max_invariant_error = 0.0;    // | |invariant| - pi |
  std::vector<std::string> flagged;
};
AsymmetryReport asymmetric_gate_check(const gate::CouplingParams& row_c, const gate::CouplingParams& col_c);

}  // namespace qdca::cluster
