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

/// Two-body Coulomb matrix elements in the sine-mode basis.
///
/// Every product of two 1D box modes is a difference of two cosines, so the
/// 4D integral over (r1, r2) collapses to a 2D integral over the separation
/// (u, v) = r1 - r2 of analytic overlap kernels against 1/|r|. The 2D integral
/// is folded onto [0,1]^2, split along the diagonal, and each triangle is
/// mapped with a Duffy transform (u = s, v = s t) that cancels the 1/r
/// singularity. Only the distinct cosine-frequency kernels are integrated;
/// all elements are assembled from that table, so the particle-exchange and
/// bra/ket symmetries hold bit-for-bit.

#include <Eigen/Dense>
#include <vector>

#include "qdca/exact/basis.hpp"

namespace qdca::exact {

class CoulombTensor {
 public:
  /// V_{ijkl} = <phi_i(1) phi_j(2)| e^2/(4 pi eps |r1-r2|) |phi_k(1) phi_l(2)> in ueV.
  double element(int i, int j, int k, int l) const;

  int size() const { return static_cast<int>(freq_x_.size()); }
  int quadrature_order() const { return quadrature_order_; }
  /// Relative change of the largest kernel entry when the quadrature order is doubled.
  double convergence_change() const { return convergence_change_; }
  /// e^2 / (4 pi eps L), the overall energy scale.
  double prefactor() const { return prefactor_; }

  /// Same tensor with every element multiplied by `factor`.
  CoulombTensor scaled(double factor) const;

  /// Folded frequency kernel K[(m1,m2),(n1,n2)] in units of the prefactor.
  const Eigen::MatrixXd& kernel() const { return kernel_; }

 private:
  friend CoulombTensor coulomb_tensor(const SinglePartBasis&, const MaterialParams&, int);

  // Per mode pair (i, k): the 1D product s_a s_b = cos(lo) - cos(hi), lo=|a-b|, hi=a+b.
  struct FreqPair {
    int lo;
    int hi;
  };
  FreqPair fx(int i, int k) const { return freq_x_[static_cast<std::size_t>(i)][static_cast<std::size_t>(k)]; }
  FreqPair fy(int i, int k) const { return freq_y_[static_cast<std::size_t>(i)][static_cast<std::size_t>(k)]; }
  int slot(int m1, int m2) const { return slot_[static_cast<std::size_t>(m1 * n_freq_ + m2)]; }

  int quadrature_order_ = 0;
  double convergence_change_ = 0.0;
  double prefactor_ = 0.0;
  int n_freq_ = 0;
  std::vector<int> slot_;
  std::vector<std::vector<FreqPair>> freq_x_;
  std::vector<std::vector<FreqPair>> freq_y_;
  Eigen::MatrixXd kernel_;
};

/// Builds the tensor for `basis`. quadrature_order (>= 16) is the number of
/// Gauss-Legendre points per panel; panels are added with n_max to resolve
/// the highest cosine frequencies. Throws ConvergenceError if doubling the
/// order moves the largest kernel entry by more than 1e-4 relative.
CoulombTensor coulomb_tensor(const SinglePartBasis& basis, const MaterialParams& mat,
                             int quadrature_order = 32);

/// Folded separation kernel Q(m1,m2,u) + Q(m1,m2,-u) on the unit interval, where
/// Q(m1,m2,u) = int cos(m1 pi (x+u)) cos(m2 pi x) dx over x, x+u in [0,1].
double folded_overlap_kernel(int m1, int m2, double u);

}  // namespace qdca::exact
