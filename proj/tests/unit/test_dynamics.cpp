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
#include <complex>
#include <stdexcept>
#include <vector>

#include "doctest.h"
#include "qdca/effective/model.hpp"
#include "qdca/exact/solver.hpp"

using namespace qdca;
using namespace qdca::exact;
using cplx = std::complex<double>;

namespace {
struct Fixture {
  TwoElectronSolver solver;
  EffectiveExtraction ex;
  explicit Fixture(int n_max)
      : solver([&] {
          SolverConfig c;
          c.n_max = n_max;
          return c;
        }(), MaterialParams::gaas()),
        ex(extract_effective(solver)) {}
};

const Fixture& fixture(int n_max) {
  static const Fixture f6(6);
  static const Fixture f3(3);
  return n_max == 6 ? f6 : f3;
}

double overlap(const Eigen::VectorXcd& a, const Eigen::VectorXd& b) {
  return std::norm(b.cast<cplx>().dot(a));
}
}  // namespace

TEST_SUITE("dynamics") {
TEST_CASE("vertical singlet converts to horizontal at t_R") {
  const Fixture& f = fixture(6);
  const double tr = effective::conversion_time(f.ex.params);
  const Segment seg[] = {{0.0, tr}};
  const Trajectory tj = evolve_piecewise(f.solver, SpinSector::kSinglet, f.ex.states.s_vertical.cast<cplx>(), seg);
  CHECK(overlap(tj.final_state, f.ex.states.s_horizontal) >= 0.99);
  CHECK(tj.points.back().p_bd == doctest::Approx(1.0 - f.ex.params.p_s).epsilon(1e-4));
  CHECK(tj.points.front().p_ac == doctest::Approx(1.0 - f.ex.params.p_s).epsilon(1e-10));
  for (const TrajectoryPoint& p : tj.points) CHECK(std::abs(p.norm - 1.0) <= 1e-10);

  // A second t_R returns to the start.
  const Segment two[] = {{0.0, 2.0 * tr}};
  const Trajectory back = evolve_piecewise(f.solver, SpinSector::kSinglet, f.ex.states.s_vertical.cast<cplx>(), two);
  CHECK(overlap(back.final_state, f.ex.states.s_vertical) >= 0.99);
}

TEST_CASE("triplet occupancy is stationary at V = 0") {
  const Fixture& f = fixture(6);
  const double tr = effective::conversion_time(f.ex.params);
  const Segment seg[] = {{0.0, 4.0 * tr}};
  const Trajectory tj = evolve_piecewise(f.solver, SpinSector::kTriplet, f.ex.states.t_vertical.cast<cplx>(), seg);
  double lo = 1.0, hi = 0.0;
  for (const TrajectoryPoint& p : tj.points) {
    lo = std::min(lo, p.p_ac);
    hi = std::max(hi, p.p_ac);
  }
  CHECK(hi - lo <= 1e-3);
}

TEST_CASE("norm is conserved across gate switches") {
  const Fixture& f = fixture(6);
  const double d0 = f.ex.params.delta0, tr = effective::conversion_time(f.ex.params);
  const std::vector<Segment> segs = {{3.0 * d0, 0.5 * tr}, {0.0, tr}, {-2.0 * d0, 0.7 * tr}, {5.0 * d0, tr}};
  const Trajectory tj = evolve_piecewise(f.solver, SpinSector::kSinglet, f.ex.states.s_vertical.cast<cplx>(), segs);
  for (const TrajectoryPoint& p : tj.points) {
    CHECK(std::abs(p.norm - 1.0) <= 1e-10);
    CHECK(std::abs(p.p_ac + p.p_bd - 1.0) <= 1e-10);
  }
  CHECK(std::abs(tj.final_state.norm() - 1.0) <= 1e-10);
  CHECK(tj.discarded_weight <= 4e-12);
  CHECK(tj.points.size() == 4u * 100u + 1u);
  CHECK(tj.points.back().t_ns == doctest::Approx(3.2 * tr));
}

TEST_CASE("matches a dense matrix exponential of the full Hamiltonian") {
  const Fixture& f = fixture(3);
  const double d0 = f.ex.params.delta0;
  const std::vector<Segment> segs = {{2.0 * d0, 0.3}, {-d0, 0.8}, {0.0, 0.45}};
  for (SpinSector s : {SpinSector::kSinglet, SpinSector::kTriplet}) {
    const Eigen::VectorXd start = s == SpinSector::kSinglet ? f.ex.states.s_vertical : f.ex.states.t_vertical;
    Eigen::VectorXcd psi = start.cast<cplx>();
    for (const Segment& seg : segs) {
      const Eigen::MatrixXd h =
          assemble_hamiltonian({f.solver.config().length_nm, seg.gate_ueV}, s, f.solver.basis(), f.solver.tensor());
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(h);
      Eigen::VectorXcd phase(h.rows());
      for (Eigen::Index i = 0; i < h.rows(); ++i) {
        phase(i) = std::polar(1.0, -es.eigenvalues()(i) * seg.duration_ns / constants::kHbar);
      }
      const Eigen::MatrixXcd v = es.eigenvectors().cast<cplx>();
      psi = v * phase.asDiagonal() * (v.adjoint() * psi);
    }
    EvolutionOptions opts;
    opts.spectrum_cutoff = 2;
    const Trajectory tj = evolve_piecewise(f.solver, s, start.cast<cplx>(), segs, opts);
    CHECK((tj.final_state - psi).norm() <= 1e-9);
  }
}

TEST_CASE("invalid evolution requests") {
  const Fixture& f = fixture(3);
  const Eigen::VectorXcd psi = f.ex.states.s_vertical.cast<cplx>();
  const Segment ok[] = {{0.0, 1.0}};
  const Segment bad[] = {{0.0, -1.0}};
  CHECK_THROWS_AS(evolve_piecewise(f.solver, SpinSector::kSinglet, psi, bad), std::invalid_argument);
  CHECK_THROWS_AS(evolve_piecewise(f.solver, SpinSector::kTriplet, psi, ok), std::invalid_argument);
  CHECK_THROWS_AS(evolve_piecewise(f.solver, SpinSector::kSinglet, Eigen::VectorXcd(2.0 * psi), ok),
                  std::invalid_argument);
  EvolutionOptions opts;
  opts.spectrum_cutoff = 0;
  CHECK_THROWS_AS(evolve_piecewise(f.solver, SpinSector::kSinglet, psi, ok, opts), std::invalid_argument);
}

TEST_CASE("spectrum comparison is exact at the calibration point") {
  const Fixture& f = fixture(6);
  const double v0[] = {0.0};
  const auto cmp = compare_spectra(f.solver, f.ex.params, v0);
  REQUIRE(cmp.size() == 1u);
  CHECK(cmp[0].max_abs_deviation() <= f.ex.triplet_split + 1e-9);
  CHECK(cmp[0].exact_singlet[0] == doctest::Approx(cmp[0].model_singlet[0]).epsilon(1e-12));
}
}
