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

/// Hard-wall square dot and its single-particle sine-mode basis.
///
/// Coordinates run over [0, L] x [0, L]. Quadrants are labelled
///   a = (x < L/2, y > L/2)   b = (x > L/2, y > L/2)
///   d = (x < L/2, y < L/2)   c = (x > L/2, y < L/2)
/// so a/c and b/d are the two diagonally opposite corner pairs. The gate
/// potential V acts on b and d.

#include <span>
#include <vector>

#include <Eigen/Dense>

#include "qdca/units.hpp"

namespace qdca::exact {

struct SquareDot {
  double length_nm = 400.0;
  double gate_ueV = 0.0;  // potential energy in quadrants b and d

  void validate() const;
};

struct BoxMode {
  int nx = 1;
  int ny = 1;
  double energy_ueV = 0.0;
};

/// The n_max^2 lowest-index modes phi_{nx,ny} = (2/L) sin(nx pi x/L) sin(ny pi y/L),
/// ordered by energy (ties broken by nx, then ny).
class SinglePartBasis {
 public:
  SinglePartBasis(double length_nm, int n_max, const MaterialParams& mat);

  int n_max() const { return n_max_; }
  double length_nm() const { return length_; }
  int size() const { return static_cast<int>(modes_.size()); }
  const BoxMode& mode(int i) const { return modes_[static_cast<std::size_t>(i)]; }
  std::span<const BoxMode> modes() const { return modes_; }

  /// Index of mode (nx, ny), or -1.
  int index_of(int nx, int ny) const;
  /// Index of the mode reflected through the diagonal x = y, i.e. (ny, nx).
  int mirror(int i) const { return mirror_[static_cast<std::size_t>(i)]; }
  /// Parity of mode i under the 180 degree rotation about the dot centre.
  int c2_parity(int i) const { return ((mode(i).nx + mode(i).ny) % 2 == 0) ? 1 : -1; }

  /// phi_i(x, y) in 1/nm.
  double value(int i, double x_nm, double y_nm) const;

 private:
  int n_max_;
  double length_;
  std::vector<BoxMode> modes_;
  std::vector<int> lookup_;  // (nx-1)*n_max + (ny-1) -> index
  std::vector<int> mirror_;
};

/// Rejects n_max < 2 (the lowest multiplet needs the first excited modes).
SinglePartBasis build_sp_basis(const SquareDot& dot, int n_max, const MaterialParams& mat);

/// int_{1/2}^{1} 2 sin(a pi s) sin(b pi s) ds, the overlap of two normalised
/// 1D box modes over the right half of the interval.
double half_interval_overlap(int a, int b);

/// <phi_i | chi_bd | phi_j>, where chi_bd is the indicator of quadrants b and d.
Eigen::MatrixXd gate_matrix_elements(const SinglePartBasis& basis);

}  // namespace qdca::exact
