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


#include <cmath>
#include <numbers>
#include <stdexcept>

#include "doctest.h"
#include "qdca/exact/basis.hpp"
#include "qdca/quadrature.hpp"

using namespace qdca;
using namespace qdca::exact;

namespace {
const MaterialParams kGaAs = MaterialParams::gaas();

// <phi_i | chi_bd | phi_j> by tensor-product Gauss-Legendre over quadrants b and d.
double gate_element_by_quadrature(const SinglePartBasis& b, int i, int j) {
  const double l = b.length_nm();
  double total = 0.0;
  for (auto [x0, y0] : {std::pair{0.5 * l, 0.5 * l}, std::pair{0.0, 0.0}}) {
    const auto qx = gauss_legendre(40, x0, x0 + 0.5 * l);
    const auto qy = gauss_legendre(40, y0, y0 + 0.5 * l);
    for (std::size_t a = 0; a < qx.size(); ++a) {
      for (std::size_t c = 0; c < qy.size(); ++c) {
        total += qx.weights[a] * qy.weights[c] * b.value(i, qx.nodes[a], qy.nodes[c]) *
                 b.value(j, qx.nodes[a], qy.nodes[c]);
      }
    }
  }
  return total;
}
}  // namespace

TEST_SUITE("basis") {
TEST_CASE("ground mode energy of the 400 nm dot") {
  const SinglePartBasis b(400.0, 1, kGaAs);
  REQUIRE(b.size() == 1);
  // 2 pi^2 hbar^2 / (2 m* L^2), evaluated in SI.
  const double hbar = 1.054571817e-34, me = 9.1093837015e-31, e = 1.602176634e-19;
  const double l = 400e-9;
  const double joule = 2.0 * std::numbers::pi * std::numbers::pi * hbar * hbar / (2.0 * 0.067 * me * l * l);
  const double expected = joule / e * 1e6;
  CHECK(b.mode(0).energy_ueV == doctest::Approx(expected).epsilon(1e-8));
  CHECK(b.mode(0).energy_ueV == doctest::Approx(70.16).epsilon(1e-3));
}

TEST_CASE("ordering, degeneracy and scaling") {
  const SinglePartBasis b(400.0, 4, kGaAs);
  CHECK(b.size() == 16);
  for (int i = 1; i < b.size(); ++i) CHECK(b.mode(i).energy_ueV >= b.mode(i - 1).energy_ueV);
  const int i12 = b.index_of(1, 2), i21 = b.index_of(2, 1);
  CHECK(b.mode(i12).energy_ueV == b.mode(i21).energy_ueV);
  CHECK(b.mode(i12).energy_ueV == doctest::Approx(2.5 * b.mode(0).energy_ueV).epsilon(1e-14));
  CHECK(b.mirror(i12) == i21);
  CHECK(b.index_of(5, 1) == -1);
  CHECK(b.c2_parity(b.index_of(1, 1)) == 1);
  CHECK(b.c2_parity(i12) == -1);

  const SinglePartBasis big(800.0, 4, kGaAs);
  for (int i = 0; i < b.size(); ++i) {
    CHECK(big.mode(i).energy_ueV == doctest::Approx(b.mode(i).energy_ueV / 4.0).epsilon(1e-14));
  }
}

TEST_CASE("modes are orthonormal") {
  const SinglePartBasis b(400.0, 3, kGaAs);
  const auto q = gauss_legendre(40, 0.0, 400.0);
  for (int i = 0; i < b.size(); ++i) {
    for (int j = 0; j < b.size(); ++j) {
      double s = 0.0;
      for (std::size_t a = 0; a < q.size(); ++a)
        for (std::size_t c = 0; c < q.size(); ++c)
          s += q.weights[a] * q.weights[c] * b.value(i, q.nodes[a], q.nodes[c]) * b.value(j, q.nodes[a], q.nodes[c]);
      CHECK(s == doctest::Approx(i == j ? 1.0 : 0.0).epsilon(1e-12).scale(1.0));
    }
  }
}

TEST_CASE("gate matrix elements match quadrature") {
  const SinglePartBasis b(400.0, 4, kGaAs);
  const Eigen::MatrixXd g = gate_matrix_elements(b);
  const int i11 = b.index_of(1, 1);
  CHECK(g(i11, i11) == doctest::Approx(0.5).epsilon(1e-15));
  // Ground to the (2,2) mode is the leading coupling the gate introduces.
  const int i22 = b.index_of(2, 2);
  CHECK(std::abs(g(i11, i22)) > 0.1);
  CHECK(std::abs(g(i11, i22) - gate_element_by_quadrature(b, i11, i22)) < 1e-10);
  // (1,1) couples to neither (1,2) nor (1,3): the x and y half-overlaps cancel.
  CHECK(std::abs(g(i11, b.index_of(1, 2))) < 1e-15);
  CHECK(std::abs(g(i11, b.index_of(1, 3))) < 1e-15);
  for (int i = 0; i < b.size(); ++i) {
    CHECK(g(i, i) == doctest::Approx(0.5).epsilon(1e-14));
    for (int j = 0; j < b.size(); ++j) {
      CHECK(g(i, j) == g(j, i));
      CHECK(std::abs(g(i, j) - gate_element_by_quadrature(b, i, j)) < 1e-10);
    }
  }
  // A compressed projector: spectrum inside [0, 1].
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(g);
  CHECK(es.eigenvalues().minCoeff() > -1e-12);
  CHECK(es.eigenvalues().maxCoeff() < 1.0 + 1e-12);
}

TEST_CASE("gate matrix is independent of L") {
  const auto g1 = gate_matrix_elements(SinglePartBasis(400.0, 3, kGaAs));
  const auto g2 = gate_matrix_elements(SinglePartBasis(800.0, 3, kGaAs));
  CHECK((g1 - g2).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("half-interval overlap") {
  CHECK(half_interval_overlap(1, 1) == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(half_interval_overlap(1, 2) == doctest::Approx(-4.0 / (3.0 * std::numbers::pi)).epsilon(1e-14));
  CHECK(half_interval_overlap(2, 4) == doctest::Approx(0.0).scale(1.0));
}

TEST_CASE("invalid input") {
  CHECK_THROWS_AS(build_sp_basis({400.0, 0.0}, 1, kGaAs), std::invalid_argument);
  CHECK_THROWS_AS(build_sp_basis({-1.0, 0.0}, 4, kGaAs), std::invalid_argument);
  CHECK_THROWS_AS(SinglePartBasis(400.0, 0, kGaAs), std::invalid_argument);
  CHECK_NOTHROW(build_sp_basis({400.0, 5.0}, 2, kGaAs));
}
}
