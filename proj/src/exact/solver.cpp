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

#include "qdca/exact/solver.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

namespace qdca::exact {

SpectrumResult lowest_spectrum(const Eigen::MatrixXd& h, int k, const EigenOptions& opts) {
  const EigenPairs ep = lowest_eigenpairs(h, k, opts);
  SpectrumResult r;
  r.energies = ep.values;
  r.vectors = ep.vectors;
  r.labels.assign(static_cast<std::size_t>(k), SymmetryLabel{});
  r.max_residual = ep.max_residual;
  return r;
}

double DensityGrid::integral() const {
  const double h = length_nm / (points - 1);
  double sum = 0.0;
  for (int i = 0; i < points; ++i) {
    const double wi = (i == 0 || i == points - 1) ? 0.5 : 1.0;
    for (int j = 0; j < points; ++j) {
      const double wj = (j == 0 || j == points - 1) ? 0.5 : 1.0;
      sum += wi * wj * rho(i, j);
    }
  }
  return sum * h * h;
}

TwoElectronSolver::Sector TwoElectronSolver::build_sector(SpinSector s, const SinglePartBasis& basis,
                                                          const Eigen::MatrixXd& gate, const CoulombTensor& tensor) {
  Sector sec{PairBasis(basis, s), {}, {}};
  sec.blocks = symmetry_blocks(basis, sec.pairs);
  sec.ops.reserve(sec.blocks.size());
  for (const SymmetryBlock& b : sec.blocks) sec.ops.push_back(assemble_block(b, sec.pairs, basis, gate, tensor));
  return sec;
}

TwoElectronSolver::TwoElectronSolver(const SolverConfig& config, const MaterialParams& mat)
    : config_(config),
      material_(mat),
      basis_(build_sp_basis(SquareDot{config.length_nm, 0.0}, config.n_max, mat)),
      tensor_(coulomb_tensor(basis_, mat, config.quadrature_order)),
      gate_1body_(gate_matrix_elements(basis_)),
      singlet_(build_sector(SpinSector::kSinglet, basis_, gate_1body_, tensor_)),
      triplet_(build_sector(SpinSector::kTriplet, basis_, gate_1body_, tensor_)) {}

EigenPairs TwoElectronSolver::block_spectrum(SpinSector s, int block, double v, int k) const {
  const BlockOperators& ops = block_operators(s, block);
  return lowest_eigenpairs(ops.hamiltonian(v), k, config_.eigen);
}

SpectrumResult TwoElectronSolver::spectrum(SpinSector s, double v, int k) const {
  const Sector& sec = sector(s);
  if (k < 1 || k > sec.pairs.size()) {
    throw std::invalid_argument("spectrum: requested " + std::to_string(k) + " levels of a " +
                                std::to_string(sec.pairs.size()) + "-dimensional sector");
  }
  struct Level {
    double e;
    int block;
    int col;
  };
  std::vector<Level> levels;
  std::vector<EigenPairs> per_block;
  double worst = 0.0;
  for (int b = 0; b < static_cast<int>(sec.blocks.size()); ++b) {
    const int kb = std::min(k, sec.blocks[static_cast<std::size_t>(b)].size());
    per_block.push_back(block_spectrum(s, b, v, kb));
    worst = std::max(worst, per_block.back().max_residual);
    for (int c = 0; c < kb; ++c) levels.push_back({per_block.back().values(c), b, c});
  }
  std::stable_sort(levels.begin(), levels.end(), [](const Level& a, const Level& b) { return a.e < b.e; });
  SpectrumResult r;
  r.sector = s;
  r.gate_ueV = v;
  r.energies.resize(k);
  r.vectors.resize(sec.pairs.size(), k);
  r.max_residual = worst;
  for (int i = 0; i < k; ++i) {
    const Level& l = levels[static_cast<std::size_t>(i)];
    const SymmetryBlock& blk = sec.blocks[static_cast<std::size_t>(l.block)];
    r.energies(i) = l.e;
    r.vectors.col(i) =
        blk.to_pair_basis(Eigen::VectorXd(per_block[static_cast<std::size_t>(l.block)].vectors.col(l.col)),
                          sec.pairs.size());
    r.labels.push_back(blk.label);
  }
  return r;
}

double TwoElectronSolver::quadrant_probability(SpinSector s, const Eigen::VectorXcd& state, QuadrantSet q) const {
  const Eigen::MatrixXcd a = pairs(s).amplitude_matrix(state);
  const Eigen::MatrixXcd g = gate_1body_.cast<std::complex<double>>();
  const double bd = (a.adjoint() * g * a).trace().real();
  const double total = a.squaredNorm();
  return q == QuadrantSet::kBD ? bd : total - bd;
}

double TwoElectronSolver::quadrant_probability(SpinSector s, const Eigen::VectorXd& state, QuadrantSet q) const {
  const Eigen::MatrixXd a = pairs(s).amplitude_matrix(state);
  const double bd = (a.transpose() * gate_1body_ * a).trace();
  const double total = a.squaredNorm();
  return q == QuadrantSet::kBD ? bd : total - bd;
}

DensityGrid TwoElectronSolver::charge_density(SpinSector s, const Eigen::VectorXd& state, int points) const {
  if (points < 2) throw std::invalid_argument("charge_density: need at least 2 grid points per axis");
  const Eigen::MatrixXd a = pairs(s).amplitude_matrix(state);
  const Eigen::MatrixXd gamma = 2.0 * a * a.transpose();
  DensityGrid grid;
  grid.points = points;
  grid.length_nm = basis_.length_nm();
  grid.rho.resize(points, points);
  const int m = basis_.size();
  Eigen::VectorXd phi(m);
  for (int ix = 0; ix < points; ++ix) {
    for (int iy = 0; iy < points; ++iy) {
      for (int i = 0; i < m; ++i) phi(i) = basis_.value(i, grid.x(ix), grid.x(iy));
      grid.rho(ix, iy) = phi.dot(gamma * phi);
    }
  }
  return grid;
}

DensityGrid TwoElectronSolver::charge_density(const SpectrumResult& result, int which, int points) const {
  if (which < 0 || which >= result.size()) {
    throw std::invalid_argument("charge_density: level index " + std::to_string(which) + " out of range");
  }
  return charge_density(result.sector, Eigen::VectorXd(result.vectors.col(which)), points);
}

EffectiveExtraction extract_effective(const TwoElectronSolver& solver) {
  EffectiveExtraction ex;
  ex.singlets = solver.spectrum(SpinSector::kSinglet, 0.0, 2);
  ex.triplets = solver.spectrum(SpinSector::kTriplet, 0.0, 2);
  const auto& es = ex.singlets.energies;
  const auto& et = ex.triplets.energies;

  EffectiveParams& p = ex.params;
  p.delta0 = 0.5 * (es(1) - es(0));
  p.e0s = 0.5 * (es(0) + es(1));
  p.e0t = 0.5 * (et(0) + et(1));
  p.a_s = 0.0;
  ex.triplet_split = std::abs(et(1) - et(0));
  if (ex.triplet_split > 1e-3 * p.delta0) {
    ex.warnings.push_back("triplet degeneracy split " + std::to_string(ex.triplet_split) +
                          " ueV exceeds 1e-3 Delta0 (numerical symmetry breaking)");
  }

  // Singlets: S_vert = (S1 - S2)/sqrt(2) is the combination avoiding b,d.
  const Eigen::VectorXd s1 = ex.singlets.vectors.col(0);
  Eigen::VectorXd s2 = ex.singlets.vectors.col(1);
  const double r2 = 1.0 / std::sqrt(2.0);
  const double p_minus = solver.quadrant_probability(SpinSector::kSinglet, Eigen::VectorXd(r2 * (s1 - s2)),
                                                     QuadrantSet::kBD);
  const double p_plus = solver.quadrant_probability(SpinSector::kSinglet, Eigen::VectorXd(r2 * (s1 + s2)),
                                                    QuadrantSet::kBD);
  if (p_plus < p_minus) {
    s2 = -s2;
    ex.singlets.vectors.col(1) = s2;
  }
  ex.states.s_vertical = r2 * (s1 - s2);
  ex.states.s_horizontal = r2 * (s1 + s2);

  // Triplets: diagonalise the b,d occupancy inside the (near-)degenerate pair.
  const Eigen::MatrixXd tv = ex.triplets.vectors;
  Eigen::Matrix2d occ;
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) {
      const Eigen::MatrixXd ai = solver.pairs(SpinSector::kTriplet).amplitude_matrix(Eigen::VectorXd(tv.col(i)));
      const Eigen::MatrixXd aj = solver.pairs(SpinSector::kTriplet).amplitude_matrix(Eigen::VectorXd(tv.col(j)));
      occ(i, j) = (ai.transpose() * solver.gate_1body() * aj).trace();
    }
  }
  occ = 0.5 * (occ + occ.transpose()).eval();
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix2d> rot(occ);
  ex.states.t_vertical = tv * rot.eigenvectors().col(0);
  ex.states.t_horizontal = tv * rot.eigenvectors().col(1);

  p.p_s = solver.quadrant_probability(SpinSector::kSinglet, ex.states.s_vertical, QuadrantSet::kBD);
  p.p_t = solver.quadrant_probability(SpinSector::kTriplet, ex.states.t_vertical, QuadrantSet::kBD);
  return ex;
}

}  // namespace qdca::exact
