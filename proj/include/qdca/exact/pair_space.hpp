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

/// Two-electron spatial basis and Hamiltonian assembly.
///
/// Singlets use the symmetric products |ij>_+ (i <= j), triplets the
/// antisymmetric |ij>_- (i < j). The Hamiltonian commutes with the 180 degree
/// rotation and with the reflection through the diagonal x = y for every gate
/// potential V, so each spin sector splits into four symmetry blocks with no
/// forced degeneracies; the solver diagonalises blocks independently.

#include <array>
#include <vector>

#include <Eigen/Dense>

#include "qdca/exact/basis.hpp"
#include "qdca/exact/coulomb.hpp"

namespace qdca::exact {

enum class SpinSector { kSinglet, kTriplet };

const char* to_string(SpinSector s);

struct OrbitalPair {
  int i = 0;
  int j = 0;
};

class PairBasis {
 public:
  PairBasis(const SinglePartBasis& basis, SpinSector sector);

  SpinSector sector() const { return sector_; }
  int size() const { return static_cast<int>(pairs_.size()); }
  int n_orbitals() const { return n_orb_; }
  const OrbitalPair& pair(int p) const { return pairs_[static_cast<std::size_t>(p)]; }
  /// Index of the pair state holding orbitals (i, j) in either order, or -1.
  /// `sign` receives the exchange sign needed to reorder (i, j) canonically.
  int index_of(int i, int j, double* sign = nullptr) const;

  /// 1 / sqrt(2) for distinct orbitals, 1/2 for a doubly occupied one.
  double norm_factor(int p) const { return pair(p).i == pair(p).j ? 0.5 : 1.0 / std::sqrt(2.0); }
  double exchange_sign() const { return sector_ == SpinSector::kSinglet ? 1.0 : -1.0; }

  /// Spatial amplitude matrix A with Psi(r1, r2) = sum_ab A_ab phi_a(r1) phi_b(r2).
  template <typename Vec>
  Eigen::Matrix<typename Vec::Scalar, Eigen::Dynamic, Eigen::Dynamic> amplitude_matrix(const Vec& coeffs) const;

 private:
  SpinSector sector_;
  int n_orb_;
  std::vector<OrbitalPair> pairs_;
  std::vector<int> lookup_;  // i * n + j (i <= j)
};

/// Symmetry labels: parity under the 180 degree rotation and under x <-> y.
struct SymmetryLabel {
  int rotation = 1;
  int mirror = 1;
  bool operator==(const SymmetryLabel&) const = default;
};

/// A symmetry-adapted combination of at most two pair states.
struct AdaptedState {
  std::array<int, 2> pair{};
  std::array<double, 2> coeff{};
  int terms = 1;
};

struct SymmetryBlock {
  SymmetryLabel label;
  std::vector<AdaptedState> states;

  int size() const { return static_cast<int>(states.size()); }
  /// Embeds a block-space vector into the full pair basis.
  Eigen::VectorXd to_pair_basis(const Eigen::VectorXd& v, int pair_dim) const;
  Eigen::MatrixXd to_pair_basis(const Eigen::MatrixXd& v, int pair_dim) const;
  /// Projects a pair-basis vector onto this block.
  Eigen::VectorXcd from_pair_basis(const Eigen::VectorXcd& v) const;
};

/// Splits the pair basis into its (rotation, mirror) blocks; empty blocks are dropped.
std::vector<SymmetryBlock> symmetry_blocks(const SinglePartBasis& basis, const PairBasis& pairs);

/// Operators needed to form H(V) = kinetic_coulomb + V * gate inside one block.
struct BlockOperators {
  Eigen::MatrixXd kinetic_coulomb;
  Eigen::MatrixXd gate;  // chi_bd(1) + chi_bd(2)

  Eigen::MatrixXd hamiltonian(double v) const { return kinetic_coulomb + v * gate; }
};

BlockOperators assemble_block(const SymmetryBlock& block, const PairBasis& pairs,
                              const SinglePartBasis& basis, const Eigen::MatrixXd& gate_1body,
                              const CoulombTensor& tensor);

/// Full pair-basis Hamiltonian of the dot. Throws if the tensor was built for a
/// different basis size.
Eigen::MatrixXd assemble_hamiltonian(const SquareDot& dot, SpinSector sector, const SinglePartBasis& basis,
                                     const CoulombTensor& tensor);

/// Pair-basis matrix of a symmetric one-body operator h(1) + h(2).
Eigen::MatrixXd one_body_pair_matrix(const PairBasis& pairs, const Eigen::MatrixXd& h);

// ---------------------------------------------------------------------------

template <typename Vec>
Eigen::Matrix<typename Vec::Scalar, Eigen::Dynamic, Eigen::Dynamic> PairBasis::amplitude_matrix(
    const Vec& coeffs) const {
  using Scalar = typename Vec::Scalar;
  Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> a =
      Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>::Zero(n_orb_, n_orb_);
  const double sgn = exchange_sign();
  for (int p = 0; p < size(); ++p) {
    const OrbitalPair& op = pair(p);
    if (op.i == op.j) {
      a(op.i, op.i) += coeffs(p);
    } else {
      const double n = 1.0 / std::sqrt(2.0);
      a(op.i, op.j) += n * coeffs(p);
      a(op.j, op.i) += sgn * n * coeffs(p);
    }
  }
  return a;
}

}  // namespace qdca::exact
