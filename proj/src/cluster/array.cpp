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

#include "qdca/cluster/array.hpp"

#include <bit>
#include <cmath>
#include <complex>
#include <stdexcept>
#include <string>

namespace qdca::cluster {

namespace {

using cplx = std::complex<double>;

void check_shape(int rows, int cols) {
  if (rows < 1 || cols < 1) throw std::invalid_argument("array dimensions must be positive");
  if (rows * cols > kMaxQubits) {
    throw std::invalid_argument("array of " + std::to_string(rows * cols) + " qubits exceeds the cap of " +
                                std::to_string(kMaxQubits));
  }
}

int bit(std::size_t x, int q) { return static_cast<int>((x >> q) & 1u); }

// Diagonal phase gate with local corrections on qubits (p, q).
void apply_bond(Eigen::VectorXcd& psi, int p, int q, const BondGate& g) {
  std::array<cplx, 4> factor{};
  for (int a = 0; a < 2; ++a) {
    for (int b = 0; b < 2; ++b) {
      const double phi = g.phases[static_cast<std::size_t>(2 * a + b)] + g.correction.global +
                         a * g.correction.z_left + b * g.correction.z_right;
      factor[static_cast<std::size_t>(2 * a + b)] = std::polar(1.0, phi);
    }
  }
  for (Eigen::Index x = 0; x < psi.size(); ++x) {
    const auto ux = static_cast<std::size_t>(x);
    psi(x) *= factor[static_cast<std::size_t>(2 * bit(ux, p) + bit(ux, q))];
  }
}

template <typename F>
void for_each_row_bond(int rows, int cols, F f) {
  for (int r = 0; r < rows; ++r) {
    for (int c = 0; c + 1 < cols; ++c) f(r * cols + c, r * cols + c + 1);
  }
}

template <typename F>
void for_each_col_bond(int rows, int cols, F f) {
  for (int r = 0; r + 1 < rows; ++r) {
    for (int c = 0; c < cols; ++c) f(r * cols + c, (r + 1) * cols + c);
  }
}

std::vector<int> neighbours(int rows, int cols, int s) {
  const int r = s / cols;
  const int c = s % cols;
  std::vector<int> out;
  if (r > 0) out.push_back(s - cols);
  if (r + 1 < rows) out.push_back(s + cols);
  if (c > 0) out.push_back(s - 1);
  if (c + 1 < cols) out.push_back(s + 1);
  return out;
}

}  // namespace

BondGate bond_gate(const gate::CouplingParams& c) {
  BondGate g;
  g.coupling = c;
  g.t_i = gate::entangling_time(c);
  const gate::Matrix16c u = gate::gate_unitary(EffectiveParams{}, c, g.t_i);
  const std::array<cplx, 4> p = gate::phase_table(u);
  for (std::size_t k = 0; k < 4; ++k) g.phases[k] = std::arg(p[k]);
  g.correction = gate::cz_correction(u);
  return g;
}

QubitArray plus_array(int rows, int cols, const gate::CouplingParams& row_c, const gate::CouplingParams& col_c) {
  check_shape(rows, cols);
  QubitArray a;
  a.rows = rows;
  a.cols = cols;
  a.row_coupling = row_c;
  a.col_coupling = col_c;
  const Eigen::Index dim = Eigen::Index{1} << a.qubits();
  a.state = Eigen::VectorXcd::Constant(dim, cplx(1.0 / std::sqrt(static_cast<double>(dim)), 0.0));
  return a;
}

QubitArray build_cluster(int rows, int cols, const gate::CouplingParams& row_c, const gate::CouplingParams& col_c,
                         GateOrder order) {
  QubitArray a = plus_array(rows, cols, row_c, col_c);
  const bool need_rows = cols > 1;
  const bool need_cols = rows > 1;
  auto rows_pass = [&] {
    if (!need_rows) return;
    const BondGate g = bond_gate(row_c);
    for_each_row_bond(rows, cols, [&](int p, int q) { apply_bond(a.state, p, q, g); });
  };
  auto cols_pass = [&] {
    if (!need_cols) return;
    const BondGate g = bond_gate(col_c);
    for_each_col_bond(rows, cols, [&](int p, int q) { apply_bond(a.state, p, q, g); });
  };
  if (order == GateOrder::kRowsFirst) {
    rows_pass();
    cols_pass();
  } else {
    cols_pass();
    rows_pass();
  }
  return a;
}

Eigen::VectorXcd ideal_cluster_state(int rows, int cols) {
  check_shape(rows, cols);
  const int n = rows * cols;
  const Eigen::Index dim = Eigen::Index{1} << n;
  const double amp = 1.0 / std::sqrt(static_cast<double>(dim));
  Eigen::VectorXcd psi(dim);
  for (Eigen::Index x = 0; x < dim; ++x) {
    const auto ux = static_cast<std::size_t>(x);
    int parity = 0;
    auto acc = [&](int p, int q) { parity ^= bit(ux, p) & bit(ux, q); };
    for_each_row_bond(rows, cols, acc);
    for_each_col_bond(rows, cols, acc);
    psi(x) = parity ? -amp : amp;
  }
  return psi;
}

double cluster_fidelity(const QubitArray& a) {
  return std::norm(ideal_cluster_state(a.rows, a.cols).dot(a.state));
}

Eigen::VectorXcd apply_stabilizer(const QubitArray& a, int site, const Eigen::VectorXcd& psi) {
  if (site < 0 || site >= a.qubits()) throw std::out_of_range("stabilizer site out of range");
  const std::vector<int> nb = neighbours(a.rows, a.cols, site);
  std::size_t zmask = 0;
  for (int b : nb) zmask |= std::size_t{1} << b;
  const std::size_t xmask = std::size_t{1} << site;
  Eigen::VectorXcd out(psi.size());
  for (Eigen::Index x = 0; x < psi.size(); ++x) {
    const auto ux = static_cast<std::size_t>(x);
    const double sign = (std::popcount(ux & zmask) & 1) ? -1.0 : 1.0;
    out(static_cast<Eigen::Index>(ux ^ xmask)) = sign * psi(x);
  }
  return out;
}

double StabilizerReport::max_deviation_from_one() const {
  double m = 0.0;
  for (double v : values) m = std::max(m, std::abs(v - 1.0));
  return m;
}

StabilizerReport stabilizer_report(const QubitArray& a) {
  StabilizerReport rep;
  for (int s = 0; s < a.qubits(); ++s) rep.values.push_back(a.state.dot(apply_stabilizer(a, s, a.state)).real());
  return rep;
}

double stabilizer_commutator(const QubitArray& a, const Eigen::VectorXcd& v) {
  double worst = 0.0;
  for (int s = 0; s < a.qubits(); ++s) {
    for (int t = s + 1; t < a.qubits(); ++t) {
      const Eigen::VectorXcd st = apply_stabilizer(a, s, apply_stabilizer(a, t, v));
      const Eigen::VectorXcd ts = apply_stabilizer(a, t, apply_stabilizer(a, s, v));
      worst = std::max(worst, (st - ts).norm());
    }
  }
  return worst;
}

AsymmetryReport asymmetric_gate_check(const gate::CouplingParams& row_c, const gate::CouplingParams& col_c) {
  AsymmetryReport rep;
  rep.row = bond_gate(row_c);
  rep.col = bond_gate(col_c);
  constexpr double kTol = 1e-9;
  auto phase_diff = [](double x, double y) { return std::abs(std::remainder(x - y, 2.0 * constants::kPi)); };
  rep.identical_gates = true;
  for (std::size_t k = 0; k < 4; ++k) {
    if (phase_diff(rep.row.phases[k], rep.col.phases[k]) > kTol) rep.identical_gates = false;
  }
  rep.identical_corrections = phase_diff(rep.row.correction.z_left, rep.col.correction.z_left) <= kTol &&
                              phase_diff(rep.row.correction.z_right, rep.col.correction.z_right) <= kTol;
  for (const BondGate* g : {&rep.row, &rep.col}) {
    const double err = std::abs(std::abs(g->correction.invariant) - constants::kPi);
    rep.max_invariant_error = std::max(rep.max_invariant_error, err);
    if (err > kTol) {
      rep.flagged.push_back(std::string(g == &rep.row ? "row" : "column") + " bond phase invariant misses pi by " +
                            std::to_string(err));
    }
  }
  rep.both_cz_equivalent = rep.flagged.empty();
  return rep;
}

}  // namespace qdca::cluster
