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


#include <random>
#include <stdexcept>

#include "doctest.h"
#include "qdca/errors.hpp"
#include "qdca/exact/eigensolver.hpp"

using namespace qdca::exact;

namespace {
Eigen::MatrixXd random_symmetric(int n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> g;
  Eigen::MatrixXd a(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) a(i, j) = g(rng);
  Eigen::MatrixXd h = 0.5 * (a + a.transpose());
  // A diagonal ramp separates the low end like a kinetic term does.
  for (int i = 0; i < n; ++i) h(i, i) += 0.5 * i;
  return h;
}
}  // namespace

TEST_SUITE("eigensolver") {
TEST_CASE("Lanczos agrees with the dense solver") {
  const Eigen::MatrixXd h = random_symmetric(900, 3);
  EigenOptions lanczos;
  lanczos.dense_threshold = 10;
  EigenOptions dense;
  dense.dense_threshold = 100000;
  const EigenPairs a = lowest_eigenpairs(h, 8, lanczos);
  const EigenPairs b = lowest_eigenpairs(h, 8, dense);
  const double scale = b.norm_estimate;
  CHECK((a.values - b.values).cwiseAbs().maxCoeff() < 1e-8 * scale);
  CHECK(a.max_residual <= 1e-8 * a.norm_estimate);
  CHECK((a.vectors.transpose() * a.vectors - Eigen::MatrixXd::Identity(8, 8)).norm() < 1e-10);
  for (int i = 1; i < 8; ++i) CHECK(a.values(i) >= a.values(i - 1));
}

TEST_CASE("degenerate low end is resolved") {
  Eigen::VectorXd d = Eigen::VectorXd::LinSpaced(700, 1.0, 50.0);
  d(0) = d(1) = d(2) = 0.0;
  const Eigen::MatrixXd q = Eigen::HouseholderQR<Eigen::MatrixXd>(random_symmetric(700, 9)).householderQ();
  const Eigen::MatrixXd h = q * d.asDiagonal() * q.transpose();
  EigenOptions lanczos;
  lanczos.dense_threshold = 10;
  const EigenPairs a = lowest_eigenpairs(h, 4, lanczos);
  CHECK(std::abs(a.values(0)) < 1e-8 * 50.0);
  CHECK(std::abs(a.values(2)) < 1e-8 * 50.0);
  CHECK(a.values(3) == doctest::Approx(d(3)).epsilon(1e-8));
}

TEST_CASE("invalid requests and unreachable tolerance") {
  const Eigen::MatrixXd h = random_symmetric(20, 1);
  CHECK_THROWS_AS(lowest_eigenpairs(h, 0), std::invalid_argument);
  CHECK_THROWS_AS(lowest_eigenpairs(h, 21), std::invalid_argument);
  CHECK_THROWS_AS(lowest_eigenpairs(Eigen::MatrixXd::Zero(3, 4), 1), std::invalid_argument);
  EigenOptions strict;
  strict.rel_tol = 1e-30;
  CHECK_THROWS_AS(lowest_eigenpairs(h, 2, strict), qdca::ConvergenceError);
}
}
