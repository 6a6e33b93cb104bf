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

#include "qdca/exact/eigensolver.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "qdca/errors.hpp"

namespace qdca::exact {

namespace {

double residual_of(const Eigen::MatrixXd& h, const Eigen::VectorXd& values, const Eigen::MatrixXd& vectors) {
  double worst = 0.0;
  for (Eigen::Index c = 0; c < vectors.cols(); ++c) {
    const Eigen::VectorXd r = h * vectors.col(c) - values(c) * vectors.col(c);
    worst = std::max(worst, r.norm());
  }
  return worst;
}

EigenPairs dense_pairs(const Eigen::MatrixXd& h, int k) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(h);
  if (es.info() != Eigen::Success) throw ConvergenceError("dense eigensolver failed", 0.0);
  EigenPairs out;
  out.values = es.eigenvalues().head(k);
  out.vectors = es.eigenvectors().leftCols(k);
  out.norm_estimate = es.eigenvalues().cwiseAbs().maxCoeff();
  return out;
}

// Removes the components along `locked` and the first m columns of q.
void orthogonalise(Eigen::VectorXd& v, const Eigen::MatrixXd& q, Eigen::Index m, const Eigen::MatrixXd& locked) {
  for (int pass = 0; pass < 2; ++pass) {
    if (locked.cols() > 0) v -= locked * (locked.transpose() * v);
    v -= q.leftCols(m) * (q.leftCols(m).transpose() * v);
  }
}

// Appends a unit vector orthogonal to the first m columns of q, or returns false.
bool fresh_direction(Eigen::MatrixXd& q, Eigen::Index m, const Eigen::MatrixXd& locked, std::mt19937_64& rng) {
  std::normal_distribution<double> gauss;
  for (int attempt = 0; attempt < 5; ++attempt) {
    Eigen::VectorXd v(q.rows());
    for (Eigen::Index i = 0; i < v.size(); ++i) v(i) = gauss(rng);
    orthogonalise(v, q, m, locked);
    const double n = v.norm();
    if (n > 1e-8) {
      q.col(m) = v / n;
      return true;
    }
  }
  return false;
}

// Lanczos with full reorthogonalisation inside the complement of `locked`.
EigenPairs lanczos_pairs(const Eigen::MatrixXd& h, int k, const EigenOptions& opts, const Eigen::MatrixXd& locked,
                         std::mt19937_64& rng) {
  const Eigen::Index n = h.rows() - locked.cols();
  const Eigen::Index cap = std::min<Eigen::Index>(n, std::max<Eigen::Index>(opts.max_krylov, 2 * k + 20));
  Eigen::MatrixXd q(h.rows(), cap);
  Eigen::VectorXd alpha = Eigen::VectorXd::Zero(cap);
  Eigen::VectorXd beta = Eigen::VectorXd::Zero(cap);  // beta(j) couples j and j+1
  if (!fresh_direction(q, 0, locked, rng)) throw ConvergenceError("lanczos: cannot build start vector", 0.0);

  const Eigen::Index first_check = std::min<Eigen::Index>(cap, 2 * k + 20);
  double last_residual = 0.0;
  Eigen::Index m = 0;
  for (Eigen::Index j = 0; j < cap; ++j) {
    Eigen::VectorXd w = h * q.col(j);
    alpha(j) = q.col(j).dot(w);
    orthogonalise(w, q, j + 1, locked);
    m = j + 1;
    const double b = w.norm();
    const bool full = (m == cap);
    const bool check = full || (m >= first_check && (m - first_check) % 20 == 0);
    if (check) {
      const Eigen::MatrixXd t = [&] {
        Eigen::MatrixXd tm = Eigen::MatrixXd::Zero(m, m);
        for (Eigen::Index i = 0; i < m; ++i) {
          tm(i, i) = alpha(i);
          if (i + 1 < m) tm(i, i + 1) = tm(i + 1, i) = beta(i);
        }
        return tm;
      }();
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(t);
      const double norm_est = std::max(es.eigenvalues().cwiseAbs().maxCoeff(), 1e-300);
      const int have = static_cast<int>(std::min<Eigen::Index>(k, m));
      double worst = 0.0;
      for (int c = 0; c < have; ++c) worst = std::max(worst, std::abs(b * es.eigenvectors()(m - 1, c)));
      last_residual = worst / norm_est;
      if ((have == k && worst <= 0.1 * opts.rel_tol * norm_est) || m == n) {
        EigenPairs out;
        out.values = es.eigenvalues().head(k);
        out.vectors = q.leftCols(m) * es.eigenvectors().leftCols(k);
        out.norm_estimate = norm_est;
        return out;
      }
    }
    if (j + 1 == cap) break;
    if (b > 1e-12 * std::max(1.0, std::abs(alpha(j)))) {
      beta(j) = b;
      q.col(j + 1) = w / b;
    } else {
      // Invariant subspace: continue from a new orthogonal direction.
      beta(j) = 0.0;
      if (!fresh_direction(q, j + 1, locked, rng)) break;
    }
  }
  throw ConvergenceError("lanczos: " + std::to_string(k) + " eigenpairs not converged in Krylov dimension " +
                             std::to_string(m) + " (relative residual " + std::to_string(last_residual) + ")",
                         last_residual);
}

// A single Krylov space holds one vector per eigenspace (up to rounding), so
// degenerate copies can be missed. Search the complement of what was found
// until it holds nothing below the current k-th level.
EigenPairs lanczos_deflated(const Eigen::MatrixXd& h, int k, const EigenOptions& opts) {
  std::mt19937_64 rng(opts.seed);
  EigenPairs best = lanczos_pairs(h, k, opts, Eigen::MatrixXd(h.rows(), 0), rng);
  for (int round = 0; round <= k && best.vectors.cols() < h.rows(); ++round) {
    const int want = static_cast<int>(std::min<Eigen::Index>(k, h.rows() - best.vectors.cols()));
    const EigenPairs extra = lanczos_pairs(h, want, opts, best.vectors, rng);
    const double tol = opts.rel_tol * std::max(best.norm_estimate, extra.norm_estimate);
    if (extra.values(0) >= best.values(k - 1) - tol) break;
    // Merge the two orthogonal sets and keep the lowest k.
    std::vector<std::pair<double, Eigen::VectorXd>> all;
    for (int c = 0; c < k; ++c) all.emplace_back(best.values(c), best.vectors.col(c));
    for (int c = 0; c < want; ++c) all.emplace_back(extra.values(c), extra.vectors.col(c));
    std::stable_sort(all.begin(), all.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    for (int c = 0; c < k; ++c) {
      best.values(c) = all[static_cast<std::size_t>(c)].first;
      best.vectors.col(c) = all[static_cast<std::size_t>(c)].second;
    }
    best.norm_estimate = std::max(best.norm_estimate, extra.norm_estimate);
  }
  return best;
}

}  // namespace

EigenPairs lowest_eigenpairs(const Eigen::MatrixXd& h, int k, const EigenOptions& opts) {
  if (h.rows() != h.cols()) throw std::invalid_argument("lowest_eigenpairs: matrix must be square");
  if (k < 1 || k > h.rows()) {
    throw std::invalid_argument("lowest_eigenpairs: requested " + std::to_string(k) + " pairs of a " +
                                std::to_string(h.rows()) + "-dimensional matrix");
  }
  EigenPairs out = h.rows() <= opts.dense_threshold ? dense_pairs(h, k) : lanczos_deflated(h, k, opts);
  out.max_residual = residual_of(h, out.values, out.vectors);
  if (out.max_residual > opts.rel_tol * out.norm_estimate) {
    throw ConvergenceError("eigensolver residual " + std::to_string(out.max_residual) + " exceeds tolerance",
                           out.max_residual);
  }
  return out;
}

}  // namespace qdca::exact
