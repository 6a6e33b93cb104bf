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

#include "qdca/exact/coulomb.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>
#include <utility>

#include "qdca/errors.hpp"
#include "qdca/quadrature.hpp"

namespace qdca::exact {

using constants::kPi;

namespace {

// int_a^b cos(k pi x + phase) dx
double cos_segment(int k, double phase, double a, double b) {
  if (k == 0) return (b - a) * std::cos(phase);
  const double w = k * kPi;
  return (std::sin(w * b + phase) - std::sin(w * a + phase)) / w;
}

}  // namespace

double folded_overlap_kernel(int m1, int m2, double u) {
  // cos(m1 pi (x+u)) cos(m2 pi x) = 1/2 [cos((m1-m2) pi x + m1 pi u) + cos((m1+m2) pi x + m1 pi u)]
  auto q = [&](double s) {
    const double a = std::max(0.0, -s);
    const double b = std::min(1.0, 1.0 - s);
    if (b <= a) return 0.0;
    const double phase = m1 * kPi * s;
    return 0.5 * (cos_segment(m1 - m2, phase, a, b) + cos_segment(m1 + m2, phase, a, b));
  };
  return q(u) + q(-u);
}

double CoulombTensor::element(int i, int j, int k, int l) const {
  // Canonical member of the 8-element symmetry orbit, so all members share one
  // summation order and agree bit-for-bit.
  if (i > k) std::swap(i, k);
  if (j > l) std::swap(j, l);
  if (i > j || (i == j && k > l)) {
    std::swap(i, j);
    std::swap(k, l);
  }
  const FreqPair x1 = fx(i, k);
  const FreqPair x2 = fx(j, l);
  const FreqPair y1 = fy(i, k);
  const FreqPair y2 = fy(j, l);
  const int ax[4] = {slot(x1.lo, x2.lo), slot(x1.lo, x2.hi), slot(x1.hi, x2.lo), slot(x1.hi, x2.hi)};
  const int ay[4] = {slot(y1.lo, y2.lo), slot(y1.lo, y2.hi), slot(y1.hi, y2.lo), slot(y1.hi, y2.hi)};
  static constexpr double kSign[4] = {1.0, -1.0, -1.0, 1.0};
  double sum = 0.0;
  for (int p = 0; p < 4; ++p) {
    double row = 0.0;
    for (int q = 0; q < 4; ++q) row += kSign[q] * kernel_(ax[p], ay[q]);
    sum += kSign[p] * row;
  }
  return prefactor_ * sum;
}

CoulombTensor CoulombTensor::scaled(double factor) const {
  CoulombTensor out = *this;
  out.prefactor_ *= factor;
  return out;
}

namespace {

// Kernel table K[alpha, beta] = int_0^1 int_0^1 Qe_alpha(u) Qe_beta(v) / sqrt(u^2+v^2) du dv
// for canonical frequency pairs alpha = (m1 <= m2).
Eigen::MatrixXd integrate_kernel(const std::vector<std::pair<int, int>>& pairs, int order, int panels) {
  const QuadratureRule rs = composite_gauss_legendre(order, panels, 0.0, 1.0);
  const QuadratureRule rt = composite_gauss_legendre(order, panels, 0.0, 1.0);
  const Eigen::Index n_nodes = static_cast<Eigen::Index>(rs.size() * rt.size());
  const Eigen::Index n_pairs = static_cast<Eigen::Index>(pairs.size());

  // Triangle v <= u with u = s, v = s t: dudv / r = ds dt / sqrt(1+t^2).
  Eigen::MatrixXd along(n_nodes, n_pairs);  // Qe(s)
  Eigen::MatrixXd across(n_nodes, n_pairs); // Qe(s t), weighted
  Eigen::VectorXd w(n_nodes);
  Eigen::Index node = 0;
  for (std::size_t a = 0; a < rs.size(); ++a) {
    for (std::size_t b = 0; b < rt.size(); ++b, ++node) {
      const double s = rs.nodes[a];
      const double t = rt.nodes[b];
      w(node) = rs.weights[a] * rt.weights[b] / std::sqrt(1.0 + t * t);
      for (Eigen::Index p = 0; p < n_pairs; ++p) {
        const auto [m1, m2] = pairs[static_cast<std::size_t>(p)];
        along(node, p) = folded_overlap_kernel(m1, m2, s);
        across(node, p) = folded_overlap_kernel(m1, m2, s * t);
      }
    }
  }
  // The triangle u <= v contributes the transpose.
  const Eigen::MatrixXd half = along.transpose() * (w.asDiagonal() * across);
  return half + half.transpose();
}

}  // namespace

CoulombTensor coulomb_tensor(const SinglePartBasis& basis, const MaterialParams& mat, int quadrature_order) {
  if (quadrature_order < 16) {
    throw std::invalid_argument("coulomb_tensor: quadrature_order must be >= 16, got " +
                                std::to_string(quadrature_order));
  }
  CoulombTensor t;
  t.quadrature_order_ = quadrature_order;
  t.prefactor_ = screened_coulomb(mat) / basis.length_nm();
  const int n_max = basis.n_max();
  t.n_freq_ = 2 * n_max + 1;
  t.slot_.assign(static_cast<std::size_t>(t.n_freq_ * t.n_freq_), -1);
  std::vector<std::pair<int, int>> pairs;
  for (int m1 = 0; m1 < t.n_freq_; ++m1) {
    for (int m2 = m1; m2 < t.n_freq_; ++m2) {
      const int id = static_cast<int>(pairs.size());
      pairs.emplace_back(m1, m2);
      t.slot_[static_cast<std::size_t>(m1 * t.n_freq_ + m2)] = id;
      t.slot_[static_cast<std::size_t>(m2 * t.n_freq_ + m1)] = id;
    }
  }

  const int m = basis.size();
  t.freq_x_.assign(static_cast<std::size_t>(m), std::vector<CoulombTensor::FreqPair>(static_cast<std::size_t>(m)));
  t.freq_y_ = t.freq_x_;
  for (int i = 0; i < m; ++i) {
    for (int k = 0; k < m; ++k) {
      const BoxMode& a = basis.mode(i);
      const BoxMode& b = basis.mode(k);
      t.freq_x_[i][k] = {std::abs(a.nx - b.nx), a.nx + b.nx};
      t.freq_y_[i][k] = {std::abs(a.ny - b.ny), a.ny + b.ny};
    }
  }

  // The highest kernel frequency is 2 n_max pi on [0,1]; one panel per ~4 half-periods.
  const int panels = std::max(1, (n_max + 3) / 4);
  t.kernel_ = integrate_kernel(pairs, quadrature_order, panels);
  const Eigen::MatrixXd refined = integrate_kernel(pairs, 2 * quadrature_order, panels);
  const double scale = t.kernel_.cwiseAbs().maxCoeff();
  t.convergence_change_ = (refined - t.kernel_).cwiseAbs().maxCoeff() / scale;
  if (t.convergence_change_ > 1e-4) {
    throw ConvergenceError("coulomb_tensor: quadrature not converged (relative change " +
                               std::to_string(t.convergence_change_) + ")",
                           t.convergence_change_);
  }
  return t;
}

}  // namespace qdca::exact
