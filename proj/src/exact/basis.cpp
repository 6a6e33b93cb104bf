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

#include "qdca/exact/basis.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace qdca::exact {

using constants::kPi;

void SquareDot::validate() const {
  if (!(length_nm > 0.0) || !std::isfinite(length_nm)) {
    throw std::invalid_argument("square dot: side length must be positive");
  }
  if (!std::isfinite(gate_ueV)) throw std::invalid_argument("square dot: gate potential must be finite");
}

SinglePartBasis::SinglePartBasis(double length_nm, int n_max, const MaterialParams& mat)
    : n_max_(n_max), length_(length_nm) {
  if (n_max < 1) throw std::invalid_argument("sp basis: n_max must be >= 1");
  if (!(length_nm > 0.0)) throw std::invalid_argument("sp basis: side length must be positive");
  const double unit = kinetic_prefactor(mat) * kPi * kPi / (length_nm * length_nm);
  modes_.reserve(static_cast<std::size_t>(n_max) * n_max);
  for (int nx = 1; nx <= n_max; ++nx) {
    for (int ny = 1; ny <= n_max; ++ny) {
      modes_.push_back({nx, ny, unit * (nx * nx + ny * ny)});
    }
  }
  std::stable_sort(modes_.begin(), modes_.end(), [](const BoxMode& a, const BoxMode& b) {
    const int ka = a.nx * a.nx + a.ny * a.ny;
    const int kb = b.nx * b.nx + b.ny * b.ny;
    if (ka != kb) return ka < kb;
    return a.nx < b.nx;
  });
  lookup_.assign(modes_.size(), -1);
  for (int i = 0; i < size(); ++i) {
    lookup_[static_cast<std::size_t>((modes_[i].nx - 1) * n_max + (modes_[i].ny - 1))] = i;
  }
  mirror_.resize(modes_.size());
  for (int i = 0; i < size(); ++i) mirror_[i] = index_of(modes_[i].ny, modes_[i].nx);
}

int SinglePartBasis::index_of(int nx, int ny) const {
  if (nx < 1 || ny < 1 || nx > n_max_ || ny > n_max_) return -1;
  return lookup_[static_cast<std::size_t>((nx - 1) * n_max_ + (ny - 1))];
}

double SinglePartBasis::value(int i, double x_nm, double y_nm) const {
  const BoxMode& m = mode(i);
  return (2.0 / length_) * std::sin(m.nx * kPi * x_nm / length_) *
         std::sin(m.ny * kPi * y_nm / length_);
}

SinglePartBasis build_sp_basis(const SquareDot& dot, int n_max, const MaterialParams& mat) {
  dot.validate();
  if (n_max < 2) {
    throw std::invalid_argument("build_sp_basis: n_max must be >= 2, got " + std::to_string(n_max));
  }
  return SinglePartBasis(dot.length_nm, n_max, mat);
}

namespace {

// int_{1/2}^{1} cos(k pi s) ds
double half_cos_integral(int k) {
  if (k == 0) return 0.5;
  return -std::sin(k * kPi / 2.0) / (k * kPi);
}

}  // namespace

double half_interval_overlap(int a, int b) {
  return half_cos_integral(std::abs(a - b)) - half_cos_integral(a + b);
}

Eigen::MatrixXd gate_matrix_elements(const SinglePartBasis& basis) {
  const int m = basis.size();
  Eigen::MatrixXd g(m, m);
  for (int i = 0; i < m; ++i) {
    for (int j = i; j < m; ++j) {
      const BoxMode& p = basis.mode(i);
      const BoxMode& q = basis.mode(j);
      const double rx = half_interval_overlap(p.nx, q.nx);
      const double ry = half_interval_overlap(p.ny, q.ny);
      const double lx = (p.nx == q.nx ? 1.0 : 0.0) - rx;
      const double ly = (p.ny == q.ny ? 1.0 : 0.0) - ry;
      // chi_bd = [x>L/2][y>L/2] + [x<L/2][y<L/2]
      g(i, j) = rx * ry + lx * ly;
      g(j, i) = g(i, j);
    }
  }
  return g;
}

}  // namespace qdca::exact
